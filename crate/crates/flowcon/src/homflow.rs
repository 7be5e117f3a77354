//! Weighted homomorphism counting, the M(X) matrix map, and brute-force
//! enumeration of B-flows, B-tensions, and Eulerian orientations — the
//! independent oracle for every contractor claim.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{fourier_indicator, CyclotomicValue, GroupSpec, SymmetricSubset};
use crate::error::{Error, Result};
use crate::graphs::{Labelled2Graph, MultiGraph, QuantumGraph2};

/// Default cap on the number of candidate assignments in brute-force
/// enumeration. Overridable per call; the CLI wires it to `FLOWCON_BUDGET`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Edge-weighted Cayley-type target: vertex set Γ, edge weight of ij given by
/// a symmetric class function β via A[i][j] = β(i-j).
#[derive(Debug, Clone)]
pub struct WeightedTarget {
    group: GroupSpec,
    beta: Vec<CyclotomicValue>,
}

impl WeightedTarget {
    pub fn new(group: GroupSpec, beta: Vec<CyclotomicValue>) -> Result<Self> {
        let n = group.order() as usize;
        if beta.len() != n {
            return Err(Error::InvalidArgument(format!(
                "class function has {} values for a group of order {n}",
                beta.len()
            )));
        }
        for i in 0..n {
            if beta[i] != beta[group.neg_idx(i)] {
                return Err(Error::InvalidArgument(
                    "class function is not symmetric under negation".into(),
                ));
            }
        }
        Ok(WeightedTarget { group, beta })
    }

    /// The unweighted Cayley graph H = Cayley(Γ, B): β = δ_B.
    pub fn cayley(b: &SymmetricSubset) -> Self {
        let member = b.membership();
        let beta = member
            .iter()
            .map(|&m| CyclotomicValue::from_integer(BigInt::from(m as i64)))
            .collect();
        WeightedTarget {
            group: b.group().clone(),
            beta,
        }
    }

    /// The Fourier dual Ĥ: β = δ̂_B, with exact cyclotomic weights.
    pub fn fourier_dual(b: &SymmetricSubset) -> Result<Self> {
        let group = b.group().clone();
        let beta = group
            .elements()
            .map(|x| fourier_indicator(b, &x))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedTarget { group, beta })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order() as usize
    }

    /// β at the element with the given index.
    pub fn beta(&self, idx: usize) -> &CyclotomicValue {
        &self.beta[idx]
    }

    /// Adjacency weight of the pair (i, j).
    pub fn weight(&self, i: usize, j: usize) -> &CyclotomicValue {
        &self.beta[self.group.sub_idx(i, j)]
    }
}

/// hom_φ(X, H) with φ(1) = i, φ(2) = j (all vertex weights 1).
pub fn hom_phi(x: &Labelled2Graph, h: &WeightedTarget, i: usize, j: usize) -> CyclotomicValue {
    let g = x.graph();
    let nv = g.vertex_count();
    let n = h.order();
    let (l1, l2) = (x.label(1), x.label(2));
    let zero = CyclotomicValue::zero(h.group.exponent());
    if l1 == l2 && i != j {
        return zero;
    }
    let mut assign = vec![0usize; nv];
    assign[l1] = i;
    assign[l2] = j;
    let free: Vec<usize> = (0..nv).filter(|&v| v != l1 && v != l2).collect();
    let mut acc = zero;
    let total = (n as u128).pow(free.len() as u32);
    let mut counter = vec![0usize; free.len()];
    for _ in 0..total {
        for (slot, &v) in counter.iter().zip(&free) {
            assign[v] = *slot;
        }
        let mut w = CyclotomicValue::from_integer(BigInt::from(1));
        let mut vanished = false;
        for &(u, v) in g.edges() {
            let bw = h.weight(assign[u], assign[v]);
            if bw.raw_zero() {
                vanished = true;
                break;
            }
            w = w.mul(bw);
        }
        if !vanished {
            acc = acc.add(&w);
        }
        // odometer
        for slot in counter.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    acc
}

/// hom(G, H) = Σ over all vertex maps of the edge-weight product.
pub fn hom_total(g: &MultiGraph, h: &WeightedTarget) -> CyclotomicValue {
    let nv = g.vertex_count();
    let n = h.order();
    let mut acc = CyclotomicValue::zero(h.group.exponent());
    let mut assign = vec![0usize; nv];
    let total = (n as u128).pow(nv as u32);
    for _ in 0..total {
        let mut w = CyclotomicValue::from_integer(BigInt::from(1));
        let mut vanished = false;
        for &(u, v) in g.edges() {
            let bw = h.weight(assign[u], assign[v]);
            if bw.raw_zero() {
                vanished = true;
                break;
            }
            w = w.mul(bw);
        }
        if !vanished {
            acc = acc.add(&w);
        }
        for slot in assign.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    acc
}

/// The |Γ|×|Γ| matrix M(X) with (i,j) entry hom_φ(X, H), φ(1)=i, φ(2)=j.
pub fn hom_matrix(x: &Labelled2Graph, h: &WeightedTarget) -> Vec<Vec<CyclotomicValue>> {
    let n = h.order();
    (0..n)
        .map(|i| (0..n).map(|j| hom_phi(x, h, i, j)).collect())
        .collect()
}

struct FlowScaffold {
    parent_edge: Vec<Option<usize>>, // per vertex
    bfs_order: Vec<usize>,
    cotree: Vec<usize>, // non-tree non-loop edge indices
    loops: usize,
}

fn flow_scaffold(g: &MultiGraph) -> FlowScaffold {
    let nv = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // (other, edge)
    let mut loops = 0usize;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            loops += 1;
        } else {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut parent_edge = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut bfs_order = Vec::with_capacity(nv);
    let mut tree = vec![false; g.edge_count()];
    for root in 0..nv {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            bfs_order.push(v);
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = Some(e);
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let cotree = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(u, v))| u != v && !tree[e])
        .map(|(e, _)| e)
        .collect();
    FlowScaffold {
        parent_edge,
        bfs_order,
        cotree,
        loops,
    }
}

/// Number of B-flows of G: edge functions g: E -> B with D·g = 0 over Γ.
/// Exhaustive over the cotree edges; tree-edge values are forced by
/// Kirchhoff's law and checked for membership in B.
pub fn count_b_flows(g: &MultiGraph, b: &SymmetricSubset, budget: u128) -> Result<u64> {
    let group = b.group();
    let scaffold = flow_scaffold(g);
    let bs = b.len() as u128;
    let needed = bs
        .checked_pow(scaffold.cotree.len() as u32)
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let member = b.membership();
    let b_idx = b.indices();
    let nv = g.vertex_count();
    let edges = g.edges();

    let mut count: u64 = 0;
    let mut counter = vec![0usize; scaffold.cotree.len()];
    'outer: for _ in 0..needed {
        // residual[v] = signed sum (head +, tail -) of the known edge values
        let mut residual = vec![0usize; nv]; // group element index, 0 = identity
        for (slot, &e) in counter.iter().zip(&scaffold.cotree) {
            let val = b_idx[*slot];
            let (tail, head) = edges[e];
            residual[head] = group.add_idx(residual[head], val);
            residual[tail] = group.add_idx(residual[tail], group.neg_idx(val));
        }
        let mut ok = true;
        for &v in scaffold.bfs_order.iter().rev() {
            let Some(e) = scaffold.parent_edge[v] else {
                continue;
            };
            let (tail, head) = edges[e];
            // Kirchhoff at v: residual[v] ± g(e) = 0
            let val = if v == head {
                group.neg_idx(residual[v])
            } else {
                residual[v]
            };
            if !member[val] {
                ok = false;
                break;
            }
            let other = if v == head { tail } else { head };
            if other == head {
                residual[other] = group.add_idx(residual[other], val);
            } else {
                residual[other] = group.add_idx(residual[other], group.neg_idx(val));
            }
        }
        if ok {
            count += 1;
        }
        for slot in counter.iter_mut() {
            *slot += 1;
            if *slot < b_idx.len() {
                continue 'outer;
            }
            *slot = 0;
        }
    }
    // a loop imposes no constraint: any value of B is a flow on it
    Ok(count * (b.len() as u64).pow(scaffold.loops as u32))
}

/// Number of B-tensions of G: edge functions in im D^⊤ with all values in B.
/// Enumerates colourings with one vertex per component pinned to 0.
pub fn count_b_tensions(g: &MultiGraph, b: &SymmetricSubset, budget: u128) -> Result<u64> {
    if g.edges().iter().any(|&(u, v)| u == v) {
        // a loop forces tension value 0, and 0 is never in B
        return Ok(0);
    }
    let group = b.group();
    let n = group.order() as usize;
    let nv = g.vertex_count();
    let free = nv - g.component_count();
    let needed = (n as u128)
        .checked_pow(free as u32)
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    // pin the smallest vertex of each component
    let mut pinned = vec![false; nv];
    {
        let mut comp = vec![usize::MAX; nv];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &(u, v) in g.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut c = 0;
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            pinned[s] = true;
            let mut stack = vec![s];
            comp[s] = c;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            c += 1;
        }
    }
    let free_vertices: Vec<usize> = (0..nv).filter(|&v| !pinned[v]).collect();
    let member = b.membership();
    let mut colour = vec![0usize; nv];
    let mut counter = vec![0usize; free_vertices.len()];
    let mut count = 0u64;
    for _ in 0..needed {
        for (slot, &v) in counter.iter().zip(&free_vertices) {
            colour[v] = *slot;
        }
        if g
            .edges()
            .iter()
            .all(|&(tail, head)| member[group.sub_idx(colour[head], colour[tail])])
        {
            count += 1;
        }
        for slot in counter.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(count)
}

/// Number of orientations with indegree equal to outdegree at every vertex.
pub fn count_eulerian_orientations(g: &MultiGraph, budget: u128) -> Result<u64> {
    let nv = g.vertex_count();
    if (0..nv).any(|v| g.degree(v) % 2 != 0) {
        return Ok(0);
    }
    let plain: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| u != v).collect();
    let loops = g.edge_count() - plain.len();
    let needed = 1u128
        .checked_shl(plain.len() as u32)
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        })?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut count = 0u64;
    for mask in 0..needed {
        let mut balance = vec![0i64; nv];
        for (e, &(u, v)) in plain.iter().enumerate() {
            if mask >> e & 1 == 0 {
                balance[u] += 1;
                balance[v] -= 1;
            } else {
                balance[u] -= 1;
                balance[v] += 1;
            }
        }
        if balance.iter().all(|&x| x == 0) {
            count += 1;
        }
    }
    // both orientations of a loop are balanced
    Ok(count * 2u64.pow(loops as u32))
}

/// Evaluate a graph parameter h on the quantum graph Z glued to X:
/// Σ over terms (c, Z_i) of c · h(X·Z_i with labels discarded).
pub fn evaluate_parameter(
    z: &QuantumGraph2,
    x: &Labelled2Graph,
    h: &mut dyn FnMut(&MultiGraph) -> Result<BigRational>,
) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (c, zi) in z.terms() {
        let glued = x.product(zi).unlabel();
        acc += c * h(&glued)?;
    }
    Ok(acc)
}
