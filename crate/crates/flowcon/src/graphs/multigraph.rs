use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite multigraph with a fixed edge orientation. Loops and parallel edges
/// are allowed. Unless constructed with [`MultiGraph::new_oriented`], edges
/// are stored as (min, max); B = -B makes all flow counts independent of the
/// choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Self::new_oriented(vertices, edges)
    }

    /// Keeps the given orientation, for inputs that specify direction.
    pub fn new_oriented(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for {vertices} vertices"
                )));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn empty(vertices: usize) -> Self {
        MultiGraph {
            vertices,
            edges: Vec::new(),
        }
    }

    /// Path with `len` edges on `len + 1` vertices, 0 -- 1 -- ... -- len.
    pub fn path(len: usize) -> Self {
        MultiGraph {
            vertices: len + 1,
            edges: (0..len).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn cycle(len: usize) -> Self {
        assert!(len >= 1);
        let mut edges: Vec<(usize, usize)> = (0..len - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, len - 1));
        MultiGraph {
            vertices: len,
            edges,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        MultiGraph { vertices: n, edges }
    }

    /// The 3-prism (triangular prism, K_3 x K_2).
    pub fn prism() -> Self {
        MultiGraph {
            vertices: 6,
            edges: vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        }
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        MultiGraph::new(10, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.class_count()
    }

    /// r(G) = |V| - c(G).
    pub fn rank(&self) -> usize {
        self.vertices - self.component_count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a, b) == (u.min(v), u.max(v)) || (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut data = vec![0i8; self.vertices * self.edges.len()];
        for (e, &(tail, head)) in self.edges.iter().enumerate() {
            if tail != head {
                data[head * self.edges.len() + e] = 1;
                data[tail * self.edges.len() + e] = -1;
            }
        }
        IncidenceMatrix {
            vertices: self.vertices,
            edges: self.edges.len(),
            data,
        }
    }

    pub fn delete_edge(&self, e: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        MultiGraph {
            vertices: self.vertices,
            edges,
        }
    }

    /// Contract edge `e`: identify its endpoints and drop the edge itself;
    /// other edges between the endpoints become loops.
    pub fn contract_edge(&self, e: usize) -> MultiGraph {
        let (u, v) = self.edges[e];
        if u == v {
            return self.delete_edge(e);
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let map = |w: usize| {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| {
                let (a, b) = (map(a), map(b));
                (a.min(b), a.max(b))
            })
            .collect();
        MultiGraph {
            vertices: self.vertices - 1,
            edges,
        }
    }

    /// Add an extra edge parallel to edge `e`.
    pub fn add_parallel(&self, e: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.push(self.edges[e]);
        MultiGraph {
            vertices: self.vertices,
            edges,
        }
    }

    /// Parse the text format: first line "n m", then m lines "u v" (0-based).
    pub fn parse_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad vertex count in graph header".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad edge count in graph header".into()))?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge on line {}", i + 2)))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge on line {}", i + 2)))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges but {} were given",
                edges.len()
            )));
        }
        MultiGraph::new(n, edges)
    }
}

/// V x E incidence matrix with entries in {-1, 0, +1}; +1 at the head of an
/// edge, -1 at the tail, zero column for a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    vertices: usize,
    edges: usize,
    data: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn get(&self, v: usize, e: usize) -> i8 {
        self.data[v * self.edges + e]
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }

    /// Dense renumbering of classes in order of smallest member.
    pub fn quotient_map(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut map = vec![0; n];
        for i in 0..n {
            let r = self.find(i);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            map[i] = ids[r];
        }
        (map, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_signs() {
        // single oriented edge 0 -> 1: +1 at head, -1 at tail
        let g = MultiGraph::new_oriented(2, vec![(0, 1)]).unwrap();
        let d = g.incidence_matrix();
        assert_eq!(d.get(1, 0), 1);
        assert_eq!(d.get(0, 0), -1);
    }

    #[test]
    fn loop_gives_zero_column() {
        let g = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        let d = g.incidence_matrix();
        assert_eq!(d.get(0, 0), 0);
    }

    #[test]
    fn cyclic_triangle_rows_sum_to_zero() {
        let g = MultiGraph::new_oriented(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let d = g.incidence_matrix();
        for v in 0..3 {
            let s: i32 = (0..3).map(|e| d.get(v, e) as i32).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn rank_and_components() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.rank(), 2);
        assert_eq!(MultiGraph::petersen().component_count(), 1);
        assert_eq!(MultiGraph::petersen().edge_count(), 15);
        assert!(MultiGraph::petersen().edges().iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn contract_makes_parallels_loops() {
        let g = MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let c = g.contract_edge(0);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges(), &[(0, 0)]);
    }

    #[test]
    fn parse_text_roundtrip() {
        let g = MultiGraph::parse_text("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(MultiGraph::parse_text("3 2\n0 1\n").is_err());
        assert!(MultiGraph::parse_text("2 1\n0 5\n").is_err());
    }
}
