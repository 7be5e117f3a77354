use serde::{Deserialize, Serialize};

use super::canon::canonical_key;
use super::multigraph::{MultiGraph, UnionFind};
use crate::error::{Error, Result};

/// A 2-labelled multigraph: a [`MultiGraph`] with a label map {1,2} -> V.
/// Both labels may land on the same vertex (Schrijver's convention).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelled2Graph {
    graph: MultiGraph,
    labels: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct LabelledJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    labels: LabelMapJson,
}

#[derive(Serialize, Deserialize)]
struct LabelMapJson {
    #[serde(rename = "1")]
    one: usize,
    #[serde(rename = "2")]
    two: usize,
}

impl Labelled2Graph {
    pub fn new(graph: MultiGraph, label1: usize, label2: usize) -> Result<Self> {
        let n = graph.vertex_count();
        if label1 >= n || label2 >= n {
            return Err(Error::InvalidArgument(format!(
                "labels ({label1},{label2}) out of range for {n} vertices"
            )));
        }
        Ok(Labelled2Graph {
            graph,
            labels: [label1, label2],
        })
    }

    /// K̄₂: two isolated vertices, the identity for the product.
    pub fn k2_bar() -> Self {
        Labelled2Graph {
            graph: MultiGraph::empty(2),
            labels: [0, 1],
        }
    }

    /// K₁ with both labels on its single vertex, the identity for
    /// concatenation; taking a product with it merges the labels.
    pub fn k1() -> Self {
        Labelled2Graph {
            graph: MultiGraph::empty(1),
            labels: [0, 0],
        }
    }

    /// P_ℓ: the path with `len >= 1` edges, endpoints labelled 1 and 2.
    pub fn path(len: usize) -> Self {
        assert!(len >= 1);
        Labelled2Graph {
            graph: MultiGraph::path(len),
            labels: [0, len],
        }
    }

    /// P_1^k: two vertices joined by `k` parallel edges (K̄₂ for k = 0).
    pub fn parallel(k: usize) -> Self {
        Labelled2Graph {
            graph: MultiGraph::new(2, vec![(0, 1); k]).unwrap(),
            labels: [0, 1],
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn label(&self, which: usize) -> usize {
        self.labels[which - 1]
    }

    /// Discard the labels.
    pub fn unlabel(&self) -> MultiGraph {
        self.graph.clone()
    }

    /// True iff the label vertices are distinct and non-adjacent
    /// (membership in 𝒢₂⁰).
    pub fn labels_independent(&self) -> bool {
        let [a, b] = self.labels;
        a != b && !self.graph.has_edge(a, b)
    }

    /// True iff the graph has no parallel edges or loops, the labels are
    /// injective, and the labelled vertices are independent.
    pub fn is_simple(&self) -> bool {
        if !self.labels_independent() {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in self.graph.edges() {
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                return false;
            }
        }
        true
    }

    /// Product XY: disjoint union, then identify vertices sharing a label.
    pub fn product(&self, other: &Labelled2Graph) -> Labelled2Graph {
        let off = self.graph.vertex_count();
        let total = off + other.graph.vertex_count();
        let mut uf = UnionFind::new(total);
        uf.union(self.labels[0], other.labels[0] + off);
        uf.union(self.labels[1], other.labels[1] + off);
        self.glue(other, uf, |map| [map[self.labels[0]], map[self.labels[1]]])
    }

    /// Concatenation X ∘ Y: identify X's label-2 vertex with Y's label-1
    /// vertex; the merged vertex is unlabelled.
    pub fn concatenate(&self, other: &Labelled2Graph) -> Labelled2Graph {
        let off = self.graph.vertex_count();
        let total = off + other.graph.vertex_count();
        let mut uf = UnionFind::new(total);
        uf.union(self.labels[1], other.labels[0] + off);
        self.glue(other, uf, |map| {
            [map[self.labels[0]], map[other.labels[1] + off]]
        })
    }

    fn glue(
        &self,
        other: &Labelled2Graph,
        mut uf: UnionFind,
        relabel: impl Fn(&[usize]) -> [usize; 2],
    ) -> Labelled2Graph {
        let off = self.graph.vertex_count();
        let (map, classes) = uf.quotient_map();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in self.graph.edges() {
            let (a, b) = (map[u], map[v]);
            edges.push((a.min(b), a.max(b)));
        }
        for &(u, v) in other.graph.edges() {
            let (a, b) = (map[u + off], map[v + off]);
            edges.push((a.min(b), a.max(b)));
        }
        let labels = relabel(&map);
        Labelled2Graph {
            graph: MultiGraph::new(classes, edges).unwrap(),
            labels,
        }
    }

    /// X·K₁: identify the two labelled vertices. Edges between them become
    /// loops.
    pub fn merge_labels(&self) -> Labelled2Graph {
        self.product(&Labelled2Graph::k1())
    }

    /// Canonical key for labelled-isomorphism testing.
    pub fn canonical_form(&self) -> Vec<u64> {
        canonical_key(&self.graph, self.labels)
    }

    pub fn is_isomorphic(&self, other: &Labelled2Graph) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Short human-readable name: recognizes K1, K2bar, P1^k, Pk.
    pub fn describe(&self) -> String {
        let n = self.graph.vertex_count();
        let m = self.graph.edge_count();
        if n == 1 && m == 0 && self.labels == [0, 0] {
            return "K1".into();
        }
        if self.is_isomorphic(&Labelled2Graph::k2_bar()) {
            return "K2bar".into();
        }
        if n == 2 && m >= 1 && self.is_isomorphic(&Labelled2Graph::parallel(m)) {
            return if m == 1 {
                "P1".into()
            } else {
                format!("P1^{m}")
            };
        }
        if m >= 2 && n == m + 1 && self.is_isomorphic(&Labelled2Graph::path(m)) {
            return format!("P{m}");
        }
        format!("G(n={n},m={m})")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LabelledJson {
            vertices: self.graph.vertex_count(),
            edges: self.graph.edges().to_vec(),
            labels: LabelMapJson {
                one: self.labels[0],
                two: self.labels[1],
            },
        })
        .expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dto: LabelledJson = serde_json::from_value(v.clone())?;
        Labelled2Graph::new(
            MultiGraph::new(dto.vertices, dto.edges)?,
            dto.labels.one,
            dto.labels.two,
        )
    }
}
