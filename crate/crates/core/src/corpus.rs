//! Deterministic random slope loops for exercising the reducer.
//!
//! Loops are built as an outbound random walk in the slope adjacency graph
//! followed by a small detour at the tip and the reverse walk home, so they
//! are genuinely contractible-looking inputs of controllable size rather
//! than arbitrary vertex soup. A fixed seed always yields the same corpus.

use num_bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::farey::Slope;

/// Shape parameters for a generated corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopSpec {
    /// How many loops to produce.
    pub count: usize,
    /// Upper bound on loop length, counting entries including both
    /// basepoint copies. At least 4.
    pub max_len: usize,
    /// Upper bound on |numerator| and denominator of every slope visited.
    pub max_coeff: u64,
    /// RNG seed; equal seeds give byte-identical corpora.
    pub seed: u64,
}

impl Default for LoopSpec {
    fn default() -> LoopSpec {
        LoopSpec {
            count: 100,
            max_len: 30,
            max_coeff: 1_000_000,
            seed: 0,
        }
    }
}

fn within(slope: &Slope, max_coeff: u64) -> bool {
    slope.max_coeff() <= BigInt::from(max_coeff)
}

/// Neighbors of `v` reachable by sliding a known neighbor a few steps along
/// the line of slopes adjacent to `v`, capped by the coefficient bound.
fn neighbor_candidates(v: &Slope, max_coeff: u64) -> Vec<Slope> {
    let x = v.some_neighbor();
    let mut out = Vec::new();
    for t in -3i64..=3 {
        let num = x.numer() + BigInt::from(t) * v.numer();
        let den = x.denom() + BigInt::from(t) * v.denom();
        if let Ok(z) = Slope::new(num, den) {
            if within(&z, max_coeff) {
                out.push(z);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Generates `spec.count` based loops at basepoint 0, each a valid loop of
/// adjacent slopes with length and coefficients within the spec bounds.
pub fn random_loops(spec: &LoopSpec) -> Vec<Vec<Slope>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let max_len = spec.max_len.max(4);
    let max_out = ((max_len - 2) / 2).clamp(1, 13);
    (0..spec.count)
        .map(|_| one_loop(&mut rng, max_out, spec.max_coeff))
        .collect()
}

fn one_loop(rng: &mut ChaCha8Rng, max_out: usize, max_coeff: u64) -> Vec<Slope> {
    let steps = rng.gen_range(1..=max_out);
    let mut walk = vec![Slope::zero()];
    for _ in 0..steps {
        let current = walk.last().expect("walk starts nonempty").clone();
        let previous = walk.len().checked_sub(2).map(|i| walk[i].clone());
        let candidates: Vec<Slope> = neighbor_candidates(&current, max_coeff)
            .into_iter()
            .filter(|z| previous.as_ref() != Some(z))
            .collect();
        match candidates.len() {
            0 => break, // boxed in by the coefficient bound; stop early
            n => walk.push(candidates[rng.gen_range(0..n)].clone()),
        }
    }
    if walk.len() == 1 {
        // Couldn't move at all; emit a minimal backtracking loop instead.
        let n = Slope::zero().some_neighbor();
        return vec![Slope::zero(), n, Slope::zero()];
    }

    // Detour at the tip: route the final approach through a common
    // neighbor of the last edge when one fits the bounds, otherwise
    // turn straight around.
    let tip = walk.len() - 1;
    let detours: Vec<Slope> = walk[tip - 1]
        .triangle_completions(&walk[tip])
        .expect("consecutive walk entries are adjacent")
        .into_iter()
        .filter(|z| within(z, max_coeff) && *z != walk[tip - 1])
        .collect();
    let detour = (!detours.is_empty()).then(|| detours[rng.gen_range(0..detours.len())].clone());

    let mut loop_path = walk.clone();
    if let Some(d) = detour {
        loop_path.push(d);
        loop_path.extend(walk[..tip].iter().rev().cloned());
    } else {
        loop_path.extend(walk[..tip].iter().rev().cloned());
    }
    loop_path
}
