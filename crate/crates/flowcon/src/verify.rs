//! Soundness harness: check the defining contractor identity
//! h(XZ) = h(X·K₁) (and the connector identity h(XZ) = h(X·P₁)) against
//! brute-force evaluation over corpora of small test graphs.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::graphs::{Labelled2Graph, MultiGraph, QuantumGraph2};
use crate::homflow::evaluate_parameter;

/// One failing instance of the identity under test.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub x: Labelled2Graph,
    pub glued_value: BigRational,
    pub expected_value: BigRational,
}

/// Outcome of a soundness run; `failures` is capped at a handful of
/// counterexamples, `tested` counts every instance.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub corpus_description: String,
    pub seed: Option<u64>,
    pub tested: usize,
    pub failures: Vec<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_STORED_FAILURES: usize = 5;

/// Every 2-labelled multigraph with at most `max_vertices` vertices and
/// `max_edges` edges (loops and parallel edges allowed) whose two labels are
/// on distinct non-adjacent vertices, up to labelled isomorphism.
pub fn exhaustive_corpus(max_vertices: usize, max_edges: usize) -> Vec<Labelled2Graph> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for nv in 2..=max_vertices {
        // unordered vertex pairs, loops included
        let mut pairs = Vec::new();
        for u in 0..nv {
            for v in u..nv {
                pairs.push((u, v));
            }
        }
        // multiplicity vector over pairs with total <= max_edges
        let mut mult = vec![0usize; pairs.len()];
        loop {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mult)
                .flat_map(|(&p, &m)| std::iter::repeat(p).take(m))
                .collect();
            let g = MultiGraph::new(nv, edges).unwrap();
            for l1 in 0..nv {
                for l2 in 0..nv {
                    if l1 == l2 {
                        continue;
                    }
                    let x = Labelled2Graph::new(g.clone(), l1, l2).unwrap();
                    if x.labels_independent() && seen.insert(x.canonical_form()) {
                        out.push(x);
                    }
                }
            }
            // odometer over multiplicities with bounded sum
            let mut i = 0;
            loop {
                if i == mult.len() {
                    break;
                }
                mult[i] += 1;
                if mult.iter().sum::<usize>() <= max_edges {
                    break;
                }
                mult[i] = 0;
                i += 1;
            }
            if i == mult.len() {
                break;
            }
        }
    }
    out
}

/// `count` seeded random 2-labelled multigraphs with independent labels,
/// at most `max_vertices` vertices and `max_edges` edges.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_edges: usize,
) -> Vec<Labelled2Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let nv = rng.gen_range(2..=max_vertices);
        let ne = rng.gen_range(0..=max_edges);
        let edges: Vec<(usize, usize)> = (0..ne)
            .map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv)))
            .collect();
        let g = MultiGraph::new(nv, edges).unwrap();
        let l1 = rng.gen_range(0..nv);
        let l2 = rng.gen_range(0..nv);
        if l1 == l2 {
            continue;
        }
        let x = Labelled2Graph::new(g, l1, l2).unwrap();
        if x.labels_independent() {
            out.push(x);
        }
    }
    out
}

fn run_identity<F>(
    z: &QuantumGraph2,
    corpus: &[Labelled2Graph],
    description: &str,
    seed: Option<u64>,
    h: F,
    expected: impl Fn(&Labelled2Graph) -> MultiGraph + Sync,
) -> Result<SoundnessReport>
where
    F: Fn(&MultiGraph) -> Result<BigRational> + Sync,
{
    let outcomes: Vec<Option<Counterexample>> = corpus
        .par_iter()
        .map(|x| -> Result<Option<Counterexample>> {
            let glued = evaluate_parameter(z, x, &mut |g| h(g))?;
            let want = h(&expected(x))?;
            Ok(if glued == want {
                None
            } else {
                Some(Counterexample {
                    x: x.clone(),
                    glued_value: glued,
                    expected_value: want,
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<Counterexample> = outcomes
        .into_iter()
        .flatten()
        .take(MAX_STORED_FAILURES)
        .collect();
    Ok(SoundnessReport {
        corpus_description: description.to_string(),
        seed,
        tested: corpus.len(),
        failures,
    })
}

/// Check h(XZ) = h(X·K₁) for every X in the corpus.
pub fn verify_contractor<F>(
    z: &QuantumGraph2,
    corpus: &[Labelled2Graph],
    description: &str,
    seed: Option<u64>,
    h: F,
) -> Result<SoundnessReport>
where
    F: Fn(&MultiGraph) -> Result<BigRational> + Sync,
{
    run_identity(z, corpus, description, seed, h, |x| {
        x.merge_labels().unlabel()
    })
}

/// Check h(XZ) = h(X·P₁) for every X in the corpus.
pub fn verify_connector<F>(
    z: &QuantumGraph2,
    corpus: &[Labelled2Graph],
    description: &str,
    seed: Option<u64>,
    h: F,
) -> Result<SoundnessReport>
where
    F: Fn(&MultiGraph) -> Result<BigRational> + Sync,
{
    run_identity(z, corpus, description, seed, h, |x| {
        x.product(&Labelled2Graph::parallel(1)).unlabel()
    })
}
