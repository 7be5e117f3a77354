//! Finite Abelian groups in invariant-factor form, their characters, and the
//! Fourier transform of class functions, all with exact equality testing.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicValue};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite Abelian group as its invariant-factor decomposition
/// Z_{n_1} ⊕ ... ⊕ Z_{n_r} with 2 <= n_1 | n_2 | ... | n_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    invariant_factors: Vec<u64>,
}

/// Element of a [`GroupSpec`], as a vector of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// A subset B ⊆ Γ with B = -B and 0 ∉ B, the generator of a Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSubset {
    group: GroupSpec,
    elements: Vec<GroupElement>,
}

/// Canonical invariant-factor form of Z_{f_1} ⊕ ... ⊕ Z_{f_k}, via merging of
/// prime-power components.
pub fn canonicalize_group(factors: &[u64]) -> Result<GroupSpec> {
    if factors.is_empty() {
        return Err(Error::InvalidGroup("no factors given".into()));
    }
    // prime -> prime-power parts, one entry per cyclic factor containing it
    let mut parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &f in factors {
        if f <= 1 {
            return Err(Error::InvalidGroup(format!("factor {f} is not >= 2")));
        }
        let mut rest = f;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                let mut q = 1;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                }
                parts.entry(p).or_default().push(q);
            }
            p += 1;
        }
        if rest > 1 {
            parts.entry(rest).or_default().push(rest);
        }
    }
    let slots = parts.values().map(|v| v.len()).max().unwrap();
    for v in parts.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    // slot 0 collects the largest prime power of each prime
    let mut inv: Vec<u64> = (0..slots)
        .map(|i| parts.values().filter_map(|v| v.get(i)).product())
        .collect();
    inv.reverse();
    Ok(GroupSpec {
        invariant_factors: inv,
    })
}

impl GroupSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        canonicalize_group(factors)
    }

    /// Parse a spec like `Z2^3`, `Z5`, or `Z2xZ4` (case-insensitive).
    pub fn parse(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let mut factors = Vec::new();
        for token in upper.split('X') {
            let token = token.trim();
            let rest = token
                .strip_prefix('Z')
                .ok_or_else(|| Error::Parse(format!("expected Z<n> in group spec, got '{token}'")))?;
            let (base, rep) = match rest.split_once('^') {
                Some((b, r)) => (b, r),
                None => (rest, "1"),
            };
            let n: u64 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in group spec '{token}'")))?;
            let k: u32 = rep
                .parse()
                .map_err(|_| Error::Parse(format!("bad repetition in group spec '{token}'")))?;
            if k == 0 {
                return Err(Error::Parse(format!("zero repetition in group spec '{token}'")));
            }
            factors.extend(std::iter::repeat(n).take(k as usize));
        }
        canonicalize_group(&factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// lcm of element orders = the last invariant factor.
    pub fn exponent(&self) -> u64 {
        *self.invariant_factors.last().unwrap()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.rank()
            && x.coords
                .iter()
                .zip(&self.invariant_factors)
                .all(|(&c, &n)| c < n)
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "element {x} does not belong to {self}"
            )))
        }
    }

    /// Mixed-radix index of an element, last coordinate fastest.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&c, &n) in x.coords.iter().zip(&self.invariant_factors) {
            idx = idx * n as usize + c as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.invariant_factors[i] as usize;
            coords[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.invariant_factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn add_idx(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.add(&self.element(i), &self.element(j)))
    }

    pub fn neg_idx(&self, i: usize) -> usize {
        self.index_of(&self.neg(&self.element(i)))
    }

    pub fn sub_idx(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.sub(&self.element(i), &self.element(j)))
    }

    /// Exponent e with χ_x(y) = ζ_L^e for L the group exponent:
    /// e = Σ_i (L/n_i) x_i y_i mod L.
    pub fn pairing_exponent(&self, x: &GroupElement, y: &GroupElement) -> u64 {
        let l = self.exponent();
        let mut e = 0u64;
        for ((&a, &b), &n) in x.coords.iter().zip(&y.coords).zip(&self.invariant_factors) {
            e = (e + (l / n) * ((a * b) % n)) % l;
        }
        e
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(u64, usize)> = Vec::new();
        for &n in &self.invariant_factors {
            match runs.last_mut() {
                Some((m, k)) if *m == n => *k += 1,
                _ => runs.push((n, 1)),
            }
        }
        let mut first = true;
        for (n, k) in runs {
            if !first {
                write!(f, "x")?;
            }
            first = false;
            if k == 1 {
                write!(f, "Z{n}")?;
            } else {
                write!(f, "Z{n}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// χ_x(y) for the standard generating-character pairing.
pub fn character(group: &GroupSpec, x: &GroupElement, y: &GroupElement) -> Result<CyclotomicValue> {
    group.check(x)?;
    group.check(y)?;
    let l = group.exponent();
    Ok(CyclotomicValue::root_of_unity(
        l,
        group.pairing_exponent(x, y),
    ))
}

impl SymmetricSubset {
    pub fn new(group: GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidSubset(
                "empty subset: no Cayley graph, no largest eigenvalue".into(),
            ));
        }
        let mut sorted = elements;
        for x in &sorted {
            if !group.contains(x) {
                return Err(Error::InvalidSubset(format!(
                    "element {x} does not belong to {group}"
                )));
            }
        }
        sorted.sort();
        sorted.dedup();
        let zero = group.zero();
        if sorted.contains(&zero) {
            return Err(Error::InvalidSubset("subset contains the identity 0".into()));
        }
        for x in &sorted {
            let neg = group.neg(x);
            if sorted.binary_search(&neg).is_err() {
                return Err(Error::InvalidSubset(format!(
                    "subset is not symmetric: contains {x} but not its negation"
                )));
            }
        }
        Ok(SymmetricSubset {
            group,
            elements: sorted,
        })
    }

    /// Parse `(1,1,0),(1,0,1)` or, for cyclic groups, `1,4`.
    pub fn parse(group: &GroupSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut elements = Vec::new();
        if s.starts_with('(') {
            for chunk in s.split(')') {
                let chunk = chunk.trim().trim_start_matches(',').trim();
                if chunk.is_empty() {
                    continue;
                }
                let inner = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("expected '(' in subset near '{chunk}'")))?;
                let coords = inner
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad coordinate '{t}' in subset")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                elements.push(GroupElement { coords });
            }
        } else {
            if group.rank() != 1 {
                return Err(Error::Parse(
                    "bare residues are only valid for cyclic groups; use coordinate tuples".into(),
                ));
            }
            for t in s.split(',') {
                let c = t
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad residue '{t}' in subset")))?;
                elements.push(GroupElement { coords: vec![c] });
            }
        }
        SymmetricSubset::new(group.clone(), elements)
    }

    /// B = Γ \ {0}.
    pub fn all_nonzero(group: &GroupSpec) -> Self {
        let elements = group.elements().skip(1).collect();
        SymmetricSubset::new(group.clone(), elements).expect("nonzero elements are symmetric")
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> Vec<usize> {
        self.elements.iter().map(|x| self.group.index_of(x)).collect()
    }

    /// Membership table indexed by element index.
    pub fn membership(&self) -> Vec<bool> {
        let mut m = vec![false; self.group.order() as usize];
        for i in self.indices() {
            m[i] = true;
        }
        m
    }
}

impl fmt::Display for SymmetricSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.group.rank() == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Fourier transform of the indicator of B at x: δ̂_B(x) = Σ_{b∈B} χ_x(-b).
pub fn fourier_indicator(b: &SymmetricSubset, x: &GroupElement) -> Result<CyclotomicValue> {
    let group = b.group();
    group.check(x)?;
    let l = group.exponent();
    let mut acc = CyclotomicValue::zero(l);
    for elem in b.elements() {
        let e = group.pairing_exponent(x, &group.neg(elem));
        acc = acc.add(&CyclotomicValue::root_of_unity(l, e));
    }
    Ok(acc)
}

/// Fourier transform of a class function given by element index:
/// α̂(y) = Σ_x α(x) χ_y(-x).
pub fn fourier_transform(group: &GroupSpec, alpha: &[CyclotomicValue]) -> Vec<CyclotomicValue> {
    let n = group.order() as usize;
    assert_eq!(alpha.len(), n);
    let l = group.exponent();
    (0..n)
        .map(|yi| {
            let y = group.element(yi);
            let mut acc = CyclotomicValue::zero(l);
            for (xi, a) in alpha.iter().enumerate() {
                let x = group.element(xi);
                let e = group.pairing_exponent(&y, &group.neg(&x));
                acc = acc.add(&a.mul(&CyclotomicValue::root_of_unity(l, e)));
            }
            acc
        })
        .collect()
}

/// Convolution (α ∗ β)(x) = Σ_y α(y) β(x-y) on element indices.
pub fn convolution(
    group: &GroupSpec,
    alpha: &[CyclotomicValue],
    beta: &[CyclotomicValue],
) -> Vec<CyclotomicValue> {
    let n = group.order() as usize;
    (0..n)
        .map(|xi| {
            let mut acc = CyclotomicValue::zero(group.exponent());
            for yi in 0..n {
                acc = acc.add(&alpha[yi].mul(&beta[group.sub_idx(xi, yi)]));
            }
            acc
        })
        .collect()
}

/// All elements of the subgroup ⟨B⟩ together with its index a = |Γ|/|⟨B⟩|,
/// the number of connected components of Cayley(Γ, B).
pub fn subgroup_generated(b: &SymmetricSubset) -> (Vec<GroupElement>, u64) {
    let group = b.group();
    let n = group.order() as usize;
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = vec![0usize];
    let gens = b.indices();
    while let Some(i) = queue.pop() {
        for &g in &gens {
            let j = group.add_idx(i, g);
            if !seen[j] {
                seen[j] = true;
                queue.push(j);
            }
        }
    }
    let members: Vec<GroupElement> = (0..n).filter(|&i| seen[i]).map(|i| group.element(i)).collect();
    let a = group.order() / members.len() as u64;
    (members, a)
}

/// Annihilator C^♯ = {x : χ_x(y) = 1 for all y ∈ C} of a subgroup C.
pub fn annihilator(group: &GroupSpec, subgroup: &[GroupElement]) -> Result<Vec<GroupElement>> {
    // verify the input is a subgroup
    let idx: Vec<usize> = subgroup.iter().map(|x| group.index_of(x)).collect();
    let mut member = vec![false; group.order() as usize];
    for &i in &idx {
        member[i] = true;
    }
    if !member[0] {
        return Err(Error::NotASubgroup("missing the identity".into()));
    }
    for &i in &idx {
        for &j in &idx {
            if !member[group.add_idx(i, j)] {
                return Err(Error::NotASubgroup(format!(
                    "not closed under addition: {} + {}",
                    group.element(i),
                    group.element(j)
                )));
            }
        }
    }
    let ann: Vec<GroupElement> = group
        .elements()
        .filter(|x| subgroup.iter().all(|y| group.pairing_exponent(x, y) == 0))
        .collect();
    Ok(ann)
}

/// Convenience: integer-valued class function lifted to cyclotomic values.
pub fn class_function_from_ints(group: &GroupSpec, values: &[i64]) -> Vec<CyclotomicValue> {
    assert_eq!(values.len(), group.order() as usize);
    values
        .iter()
        .map(|&v| CyclotomicValue::from_integer(BigInt::from(v)))
        .collect()
}
