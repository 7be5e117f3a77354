use std::collections::BTreeMap;

use super::multigraph::MultiGraph;

/// Canonical key of a 2-labelled multigraph: invariant under labelled
/// isomorphism, equal keys iff isomorphic (respecting labels). Computed by
/// degree-style colour refinement followed by backtracking over the
/// refinement classes; the graphs in this crate are tiny.
pub(crate) fn canonical_key(g: &MultiGraph, labels: [usize; 2]) -> Vec<u64> {
    let n = g.vertex_count();
    if n == 0 {
        return vec![0];
    }
    // multiplicity matrix and loop counts
    let mut mult = vec![0u64; n * n];
    let mut loops = vec![0u64; n];
    for &(u, v) in g.edges() {
        if u == v {
            loops[u] += 1;
        } else {
            mult[u * n + v] += 1;
            mult[v * n + u] += 1;
        }
    }
    // initial colours: label flags, loop count, degree
    let init: Vec<(u64, u64, u64)> = (0..n)
        .map(|v| {
            let flag = (labels[0] == v) as u64 + 2 * (labels[1] == v) as u64;
            let deg: u64 = (0..n).map(|w| mult[v * n + w]).sum::<u64>() + 2 * loops[v];
            (flag, loops[v], deg)
        })
        .collect();
    let mut colour = rank_dense(&init);
    // refinement rounds: split classes by the multiset of neighbour colours
    loop {
        let sigs: Vec<(u64, Vec<(u64, u64)>)> = (0..n)
            .map(|v| {
                let mut nbrs: Vec<(u64, u64)> = (0..n)
                    .filter(|&w| mult[v * n + w] > 0)
                    .map(|w| (colour[w], mult[v * n + w]))
                    .collect();
                nbrs.sort_unstable();
                (colour[v], nbrs)
            })
            .collect();
        let new = rank_dense(&sigs);
        let old_classes = colour.iter().collect::<std::collections::BTreeSet<_>>().len();
        let new_classes = new.iter().collect::<std::collections::BTreeSet<_>>().len();
        colour = new;
        if new_classes == old_classes {
            break;
        }
    }
    // group vertices by colour
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<Vec<u64>> = None;
    let mut perm = vec![usize::MAX; n]; // old vertex -> new position
    assign_class(
        g,
        labels,
        &mult,
        &loops,
        &classes,
        0,
        &mut perm,
        0,
        &mut best,
    );
    best.unwrap()
}

/// Rank each entry by its sorted position among the distinct values.
fn rank_dense<T: Ord + Clone>(values: &[T]) -> Vec<u64> {
    let mut uniq: Vec<&T> = values.iter().collect();
    uniq.sort_unstable();
    uniq.dedup();
    values
        .iter()
        .map(|v| uniq.binary_search(&v).unwrap() as u64)
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn assign_class(
    g: &MultiGraph,
    labels: [usize; 2],
    mult: &[u64],
    loops: &[u64],
    classes: &[Vec<usize>],
    class_idx: usize,
    perm: &mut Vec<usize>,
    next_pos: usize,
    best: &mut Option<Vec<u64>>,
) {
    if class_idx == classes.len() {
        let sig = signature(g, labels, mult, loops, perm);
        if best.as_ref().map_or(true, |b| sig < *b) {
            *best = Some(sig);
        }
        return;
    }
    let class = &classes[class_idx];
    permute_into(class, perm, next_pos, &mut |perm| {
        assign_class(
            g,
            labels,
            mult,
            loops,
            classes,
            class_idx + 1,
            perm,
            next_pos + class.len(),
            best,
        );
    });
}

/// Enumerate all assignments of the vertices in `class` to consecutive
/// positions starting at `base`.
fn permute_into(
    class: &[usize],
    perm: &mut Vec<usize>,
    base: usize,
    f: &mut dyn FnMut(&mut Vec<usize>),
) {
    fn rec(
        class: &[usize],
        used: &mut Vec<bool>,
        slot: usize,
        perm: &mut Vec<usize>,
        base: usize,
        f: &mut dyn FnMut(&mut Vec<usize>),
    ) {
        if slot == class.len() {
            f(perm);
            return;
        }
        for i in 0..class.len() {
            if !used[i] {
                used[i] = true;
                perm[class[i]] = base + slot;
                rec(class, used, slot + 1, perm, base, f);
                perm[class[i]] = usize::MAX;
                used[i] = false;
            }
        }
    }
    let mut used = vec![false; class.len()];
    rec(class, &mut used, 0, perm, base, f);
}

fn signature(
    g: &MultiGraph,
    labels: [usize; 2],
    mult: &[u64],
    loops: &[u64],
    perm: &[usize],
) -> Vec<u64> {
    let n = g.vertex_count();
    let mut inv = vec![0usize; n]; // new position -> old vertex
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut sig = Vec::with_capacity(2 + n + n * (n - 1) / 2 + 2);
    sig.push(n as u64);
    sig.push(perm[labels[0]] as u64);
    sig.push(perm[labels[1]] as u64);
    for &v in &inv {
        sig.push(loops[v]);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            sig.push(mult[inv[i] * n + inv[j]]);
        }
    }
    sig
}
