//! Cayley graph spectra and the synthesis of contractors and connectors.
//!
//! For a symmetric subset B of a finite Abelian group Γ, the Cayley graph
//! Cayley(Γ, B) has eigenvalues δ̂_B(x) for x ∈ Γ, with largest eigenvalue
//! |B| = δ̂_B(0). Writing p_A for the minimum polynomial of the adjacency
//! matrix and q(t) = p_A(t)/(t−|B|), a contractor for the number of B-flows
//! is (n/(a·q(|B|)))·Σ_k q_k·P_1^k, where a is the number of connected
//! components (the index of ⟨B⟩ in Γ) and P_1^k is the two-vertex graph with
//! k parallel edges.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{
    fourier_indicator, subgroup_generated, CyclotomicValue, GroupElement, GroupSpec,
    SymmetricSubset,
};
use crate::error::{Error, Result};
use crate::exactpoly::{newton_girard, power_sums_pm1, IntMatrix, IntPoly};
use crate::graphs::{Labelled2Graph, MultiGraph, QuantumGraph2};

/// Exact spectral data of Cayley(Γ, B), cross-checked between the
/// characteristic-polynomial route and the Fourier route.
#[derive(Debug, Clone)]
pub struct CayleySpectrum {
    b: SymmetricSubset,
    eigenvalues: Vec<CyclotomicValue>, // distinct, |B| first
    min_poly: IntPoly,
    q_poly: IntPoly,
    component_count: u64,
}

/// A synthesized contractor (or tension contractor) with its prefactor kept
/// separately for reporting.
#[derive(Debug, Clone)]
pub struct ContractorResult {
    pub quantum_graph: QuantumGraph2,
    pub scale: BigRational,
    pub provenance: &'static str,
}

impl CayleySpectrum {
    pub fn group(&self) -> &GroupSpec {
        self.b.group()
    }

    pub fn subset(&self) -> &SymmetricSubset {
        &self.b
    }

    /// Distinct eigenvalues; the first entry is the largest, |B|.
    pub fn eigenvalues(&self) -> &[CyclotomicValue] {
        &self.eigenvalues
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    /// q(t) = p_A(t)/(t − |B|).
    pub fn q_poly(&self) -> &IntPoly {
        &self.q_poly
    }

    /// Number of connected components a = [Γ : ⟨B⟩].
    pub fn component_count(&self) -> u64 {
        self.component_count
    }

    /// ℓ = deg p_A = number of distinct eigenvalues.
    pub fn ell(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    /// q(|B|), nonzero because |B| is a simple root of p_A.
    pub fn q_at_degree(&self) -> BigInt {
        self.q_poly.eval(&BigInt::from(self.b.len() as i64))
    }
}

/// Compute the exact spectrum of Cayley(Γ, B) by two independent routes and
/// require them to agree: the integer characteristic polynomial of the 0/1
/// circulant, and the cyclotomic Fourier transform of the indicator of B.
pub fn cayley_spectrum(b: &SymmetricSubset) -> Result<CayleySpectrum> {
    let group = b.group();
    let n = group.order() as usize;
    let member = b.membership();

    // route 1: exact characteristic and minimum polynomial of the circulant
    let a_mat = IntMatrix::from_fn(n, |i, j| BigInt::from(member[group.sub_idx(i, j)] as i64));
    let char_poly = a_mat.char_poly();
    let min_poly = a_mat.min_poly_symmetric()?;

    // route 2: eigenvalues are the Fourier coefficients δ̂_B(x)
    let hats: Vec<CyclotomicValue> = group
        .elements()
        .map(|x| fourier_indicator(b, &x))
        .collect::<Result<Vec<_>>>()?;

    // the product Π_x (t − δ̂_B(x)) must reproduce the characteristic
    // polynomial exactly, after cyclotomic reduction of each coefficient
    let l = group.exponent();
    let mut prod: Vec<CyclotomicValue> = vec![CyclotomicValue::from_integer(BigInt::one())];
    for hat in &hats {
        let mut next = vec![CyclotomicValue::zero(l); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(hat));
        }
        prod = next;
    }
    for (k, c) in prod.iter().enumerate() {
        let as_int = c.to_integer().ok_or_else(|| {
            Error::Inconsistency(format!(
                "Fourier-route characteristic coefficient of t^{k} is not an integer"
            ))
        })?;
        if as_int != char_poly.coeff(k) {
            return Err(Error::Inconsistency(format!(
                "characteristic polynomial mismatch at t^{k}: matrix route {} vs Fourier route {}",
                char_poly.coeff(k),
                as_int
            )));
        }
    }

    // distinct eigenvalues, |B| = δ̂_B(0) first
    let size = BigInt::from(b.len() as i64);
    if hats[0].to_integer() != Some(size.clone()) {
        return Err(Error::Inconsistency(format!(
            "largest eigenvalue δ̂_B(0) = {} differs from |B| = {}",
            hats[0], size
        )));
    }
    let mut eigenvalues: Vec<CyclotomicValue> = Vec::new();
    for hat in &hats {
        if !eigenvalues.iter().any(|e| e == hat) {
            eigenvalues.push(hat.clone());
        }
    }
    if eigenvalues.len() != min_poly.degree().unwrap() {
        return Err(Error::Inconsistency(format!(
            "{} distinct Fourier eigenvalues but minimum polynomial has degree {}",
            eigenvalues.len(),
            min_poly.degree().unwrap()
        )));
    }

    let q_poly = min_poly.divide_linear(&size)?;
    if q_poly.eval(&size).is_zero() {
        return Err(Error::Inconsistency(
            "|B| is a repeated root of the minimum polynomial".into(),
        ));
    }

    // a = index of <B>; verify it agrees with the component structure of the
    // Cayley graph, whose components are the cosets of <B>
    let (members, a) = subgroup_generated(b);
    let mut uf = crate::graphs::multigraph::UnionFind::new(n);
    for i in 0..n {
        for g in b.indices() {
            uf.union(i, group.add_idx(i, g));
        }
    }
    if uf.class_count() as u64 != a {
        return Err(Error::Inconsistency(format!(
            "Cayley graph has {} components but [Γ:⟨B⟩] = {a}",
            uf.class_count()
        )));
    }
    debug_assert_eq!(members.len() as u64 * a, group.order());

    Ok(CayleySpectrum {
        b: b.clone(),
        eigenvalues,
        min_poly,
        q_poly,
        component_count: a,
    })
}

/// Contractor for the number of B-flows:
/// Z = (n/(a·q(|B|)))·Σ_{k=0}^{ℓ−1} q_k·P_1^k, with P_1^0 = K̄₂.
pub fn flow_contractor(spec: &CayleySpectrum) -> ContractorResult {
    let n = BigInt::from(spec.group().order());
    let a = BigInt::from(spec.component_count);
    let scale = BigRational::new(n, a * spec.q_at_degree());
    let terms = spec
        .q_poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, qk)| {
            (
                &scale * BigRational::from_integer(qk.clone()),
                Labelled2Graph::parallel(k),
            )
        })
        .collect();
    ContractorResult {
        quantum_graph: QuantumGraph2::new(terms),
        scale,
        provenance: "flow-contractor",
    }
}

/// Contractor for n^{c(G)} times the number of B-tensions (connected Cayley
/// graph, q_0 ≠ 0): Z = (1/q_0)[(q(|B|)/n)·K̄₂ − Σ_{k≥1} q_k·P_k].
pub fn tension_contractor(spec: &CayleySpectrum) -> Result<ContractorResult> {
    if spec.component_count != 1 {
        return Err(Error::Unsupported(
            "tension contractor requires a connected Cayley graph (B must generate Γ)".into(),
        ));
    }
    let q0 = spec.q_poly.coeff(0);
    if q0.is_zero() {
        return Err(Error::NotConstructible(
            "0 is an eigenvalue of the Cayley graph (q_0 = 0); no tension contractor from this \
             construction"
                .into(),
        ));
    }
    let scale = BigRational::new(BigInt::one(), q0);
    let mut terms = vec![(
        &scale
            * BigRational::new(spec.q_at_degree(), BigInt::from(spec.group().order())),
        Labelled2Graph::k2_bar(),
    )];
    for (k, qk) in spec.q_poly.coeffs().iter().enumerate().skip(1) {
        if !qk.is_zero() {
            terms.push((
                -(&scale * BigRational::from_integer(qk.clone())),
                Labelled2Graph::path(k),
            ));
        }
    }
    Ok(ContractorResult {
        quantum_graph: QuantumGraph2::new(terms),
        scale,
        provenance: "tension-contractor",
    })
}

/// Connector for hom(·, H) from the minimum polynomial p of the adjacency
/// matrix of H: −(1/p_0)[p_1·P_2 + ... + p_ℓ·P_{ℓ+1}] when p_0 ≠ 0, and
/// −(1/p_1)[p_2·P_2 + ... + p_ℓ·P_ℓ] when p_0 = 0 ≠ p_1.
pub fn hom_connector(min_poly: &IntPoly) -> Result<QuantumGraph2> {
    let p0 = min_poly.coeff(0);
    let p1 = min_poly.coeff(1);
    let ell = min_poly
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if !p0.is_zero() {
        let scale = BigRational::new(-BigInt::one(), p0);
        let terms = (1..=ell)
            .map(|k| {
                (
                    &scale * BigRational::from_integer(min_poly.coeff(k)),
                    Labelled2Graph::path(k + 1),
                )
            })
            .collect();
        Ok(QuantumGraph2::new(terms))
    } else if !p1.is_zero() {
        let scale = BigRational::new(-BigInt::one(), p1);
        let terms = (2..=ell)
            .map(|k| {
                (
                    &scale * BigRational::from_integer(min_poly.coeff(k)),
                    Labelled2Graph::path(k),
                )
            })
            .collect();
        Ok(QuantumGraph2::new(terms))
    } else {
        Err(Error::NotConstructible(
            "minimum polynomial has 0 as a repeated root (p_0 = p_1 = 0)".into(),
        ))
    }
}

/// Contractor for hom(·, H): −(1/p_0)[p_1·P_1 + ... + p_ℓ·P_ℓ], requiring
/// that 0 is not an eigenvalue (p_0 ≠ 0).
pub fn hom_contractor(min_poly: &IntPoly) -> Result<QuantumGraph2> {
    let p0 = min_poly.coeff(0);
    let ell = min_poly
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if p0.is_zero() {
        return Err(Error::NotConstructible(
            "0 is an eigenvalue of the adjacency matrix (p_0 = 0)".into(),
        ));
    }
    let scale = BigRational::new(-BigInt::one(), p0);
    let terms = (1..=ell)
        .map(|k| {
            (
                &scale * BigRational::from_integer(min_poly.coeff(k)),
                Labelled2Graph::path(k),
            )
        })
        .collect();
    Ok(QuantumGraph2::new(terms))
}

/// The Hamming shell S_r^d ⊆ Z_m^d of all vectors with exactly r nonzero
/// coordinates. Symmetric because negation preserves the weight.
pub fn shell(d: u64, r: u64, m: u64) -> Result<SymmetricSubset> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("shell modulus m = {m} < 2")));
    }
    if r == 0 || r > d {
        return Err(Error::InvalidArgument(format!(
            "shell radius r = {r} outside 1..={d}"
        )));
    }
    let group = GroupSpec::new(&vec![m; d as usize])?;
    let elements: Vec<GroupElement> = group
        .elements()
        .filter(|x| x.coords.iter().filter(|&&c| c != 0).count() as u64 == r)
        .collect();
    SymmetricSubset::new(group, elements)
}

/// Spanning-tree choice for [`cycle_space_set`]; the resulting q(t) is
/// basis-independent, but runs must be deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeChoice {
    Bfs,
    Dfs,
}

/// The subset B ⊆ Z_2^d built from a graph Q with cycle-space dimension
/// d = |E| − r(Q): pick a spanning forest, let C^(1)..C^(d) be the
/// fundamental cycles, and map each edge e to its membership vector
/// (e ∈ C^(1), ..., e ∈ C^(d)). The eigenvalues of Cayley(Z_2^d, B) are
/// |E| − 2|C| over the 2^d cycle-space elements C.
pub fn cycle_space_set(q: &MultiGraph, tree: TreeChoice) -> Result<SymmetricSubset> {
    let nv = q.vertex_count();
    let ne = q.edge_count();
    let d = ne - q.rank();
    if d == 0 {
        return Err(Error::InvalidArgument(
            "graph is a forest: empty cycle space, no subset B".into(),
        ));
    }
    // spanning forest in input edge order
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (e, &(u, v)) in q.edges().iter().enumerate() {
        if u != v {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv]; // (vertex, edge)
    let mut seen = vec![false; nv];
    let mut tree_edge = vec![false; ne];
    for root in 0..nv {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut frontier = std::collections::VecDeque::from([root]);
        while let Some(v) = match tree {
            TreeChoice::Bfs => frontier.pop_front(),
            TreeChoice::Dfs => frontier.pop_back(),
        } {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    tree_edge[e] = true;
                    frontier.push_back(w);
                }
            }
        }
    }
    // fundamental cycle of each cotree edge: the edge plus the symmetric
    // difference of the two root paths
    let root_path = |mut v: usize| -> Vec<usize> {
        let mut path = Vec::new();
        while let Some((p, e)) = parent[v] {
            path.push(e);
            v = p;
        }
        path
    };
    let mut cycles: Vec<Vec<bool>> = Vec::with_capacity(d);
    for (e, &(u, v)) in q.edges().iter().enumerate() {
        if tree_edge[e] || u == v {
            continue;
        }
        let mut in_cycle = vec![false; ne];
        in_cycle[e] = true;
        for p in root_path(u).into_iter().chain(root_path(v)) {
            in_cycle[p] = !in_cycle[p]; // shared prefix cancels
        }
        cycles.push(in_cycle);
    }
    for (e, &(u, v)) in q.edges().iter().enumerate() {
        if u == v {
            // a loop is a cycle by itself
            let mut in_cycle = vec![false; ne];
            in_cycle[e] = true;
            cycles.push(in_cycle);
        }
    }
    debug_assert_eq!(cycles.len(), d);

    let group = GroupSpec::new(&vec![2; d])?;
    let mut elements = Vec::with_capacity(ne);
    for e in 0..ne {
        let coords: Vec<u64> = cycles.iter().map(|c| c[e] as u64).collect();
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::InvalidSubset(format!(
                "edge {e} is a bridge (lies on no cycle), giving the zero vector"
            )));
        }
        elements.push(GroupElement { coords });
    }
    SymmetricSubset::new(group, elements)
}

/// Spectrum and flow contractor for B = {±1} ⊆ Z_n, cross-checked for odd n
/// against the symmetric-function route and the evaluation q(2) = n (odd n)
/// or 2n (even n).
pub fn pm1_flow_family(n: u64) -> Result<(CayleySpectrum, ContractorResult)> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "{{±1}}-flows need n >= 3 (got {n}): for n <= 2 the set {{-1,+1}} degenerates"
        )));
    }
    let group = GroupSpec::new(&[n])?;
    let b = SymmetricSubset::new(
        group.clone(),
        vec![
            GroupElement { coords: vec![1] },
            GroupElement {
                coords: vec![n - 1],
            },
        ],
    )?;
    let spec = cayley_spectrum(&b)?;

    // q(2) closed form
    let q_at_2 = spec.q_poly().eval(&BigInt::from(2));
    let expected = if n % 2 == 1 { n } else { 2 * n };
    if q_at_2 != BigInt::from(expected) {
        return Err(Error::Inconsistency(format!(
            "q(2) = {q_at_2}, expected {expected} for n = {n}"
        )));
    }

    // for odd n, the coefficients of q(t) are signed elementary symmetric
    // functions of the non-principal eigenvalues, with closed-form power sums
    if n % 2 == 1 {
        let m = ((n - 1) / 2) as usize;
        let s = power_sums_pm1(n, m)?;
        let e = newton_girard(&s, m)?;
        for (j, ej) in std::iter::once(BigRational::one())
            .chain(e.iter().cloned())
            .enumerate()
        {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let coeff = BigRational::from_integer(spec.q_poly().coeff(m - j));
            if coeff != ej * BigRational::from_integer(BigInt::from(sign)) {
                return Err(Error::Inconsistency(format!(
                    "coefficient of t^{} in q(t) disagrees with the symmetric-function route",
                    m - j
                )));
            }
        }
    }

    let z = flow_contractor(&spec);
    Ok((spec, z))
}

/// A named (group, subset) pair from the example registry.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: String,
    pub b: SymmetricSubset,
    pub description: String,
}

/// Names accepted by [`named_example`].
pub const EXAMPLE_NAMES: &[&str] = &[
    "chromatic",
    "flow-poly:n",
    "shell:d:r",
    "fulkerson",
    "petersen",
    "pm1:n",
    "paley:q",
];

/// Resolve a registry name such as `fulkerson`, `shell:5:2`, or `pm1:7` to
/// its group and symmetric subset.
pub fn named_example(name: &str) -> Result<NamedExample> {
    let parts: Vec<&str> = name.split(':').collect();
    let parse_u64 = |t: &str| {
        t.parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad integer '{t}' in example name '{name}'")))
    };
    let (b, description) = match parts.as_slice() {
        ["chromatic"] | ["chromatic", _] => {
            let q = if parts.len() == 2 { parse_u64(parts[1])? } else { 3 };
            if q < 2 {
                return Err(Error::InvalidArgument("chromatic needs q >= 2".into()));
            }
            let group = GroupSpec::new(&[q])?;
            (
                SymmetricSubset::all_nonzero(&group),
                format!("proper {q}-colourings via Z{q}-tensions avoiding 0"),
            )
        }
        ["flow-poly", t] => {
            let q = parse_u64(t)?;
            if q < 2 {
                return Err(Error::InvalidArgument("flow-poly needs n >= 2".into()));
            }
            let group = GroupSpec::new(&[q])?;
            (
                SymmetricSubset::all_nonzero(&group),
                format!("nowhere-zero Z{q}-flows, F(G;{q})"),
            )
        }
        ["shell", dt, rt] => {
            let (d, r) = (parse_u64(dt)?, parse_u64(rt)?);
            (
                shell(d, r, 2)?,
                format!("Hamming shell of radius {r} in Z2^{d}"),
            )
        }
        ["fulkerson"] => (
            shell(6, 4, 2)?,
            "Fulkerson flows: weight-4 vectors in Z2^6".into(),
        ),
        ["petersen"] => (
            cycle_space_set(&MultiGraph::petersen(), TreeChoice::Bfs)?,
            "Petersen flows: cycle-space encoding of the Petersen graph in Z2^6".into(),
        ),
        ["pm1", t] => {
            let n = parse_u64(t)?;
            if n < 3 {
                return Err(Error::InvalidArgument("pm1 needs n >= 3".into()));
            }
            let group = GroupSpec::new(&[n])?;
            (
                SymmetricSubset::new(
                    group.clone(),
                    vec![
                        GroupElement { coords: vec![1] },
                        GroupElement {
                            coords: vec![n - 1],
                        },
                    ],
                )?,
                format!("{{±1}}-flows modulo {n}"),
            )
        }
        ["paley", t] => {
            let q = parse_u64(t)?;
            if q < 5 || q % 4 != 1 || !is_prime(q) {
                return Err(Error::InvalidArgument(format!(
                    "paley needs a prime q ≡ 1 (mod 4), got {q}"
                )));
            }
            let group = GroupSpec::new(&[q])?;
            let squares: Vec<GroupElement> = (1..q)
                .map(|x| GroupElement {
                    coords: vec![x * x % q],
                })
                .collect();
            (
                SymmetricSubset::new(group, squares)?,
                format!("Paley graph on Z{q}: B = nonzero squares"),
            )
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown example '{name}'; known: {}",
                EXAMPLE_NAMES.join(", ")
            )))
        }
    };
    Ok(NamedExample {
        name: name.to_string(),
        b,
        description,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
