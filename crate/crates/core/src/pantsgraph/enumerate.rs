//! Exhaustive enumeration of pants graph types for a surface.
//!
//! Generation fills the three strand-end slots of one pants at a time, in
//! pants order, choosing for each slot a leg, a self-loop, or an edge to an
//! already-started or brand-new pants. Per pants the chosen tokens are kept
//! non-decreasing and new pants are numbered in first-use order, which kills
//! most relabeling duplicates at the source; the survivors collapse under
//! the canonical code.

use std::collections::BTreeSet;

use thiserror::Error;

use super::canonical::CanonicalCode;
use super::PantsGraph;
use crate::surface::SurfaceType;

/// Largest supported pants count (`2g − 2 + n`). Enumeration is factorial
/// in this; the cap keeps requests honest.
pub const MAX_PANTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("surface {surface} has {pants} pants; enumeration is capped at {max}")]
    TooLarge {
        surface: SurfaceType,
        pants: usize,
        max: usize,
    },
}

/// The slot-filling tokens, ordered: legs by label, then a self-loop, then
/// edges by target pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Leg(usize),
    Loop,
    Edge(usize),
}

struct Search {
    m: usize,
    n: usize,
    /// Free slots per started pants.
    free: Vec<u8>,
    /// Number of pants started so far; fresh pants take the next index.
    started: usize,
    leg_used: Vec<bool>,
    /// Last token placed at each pants, for the non-decreasing constraint.
    last: Vec<Option<Token>>,
    /// `legs[label - 1]` = pants carrying that leg; `usize::MAX` when unset.
    legs: Vec<usize>,
    edges: Vec<(usize, usize)>,
    surface: SurfaceType,
    found: BTreeSet<CanonicalCode>,
}

impl Search {
    fn active(&self) -> Option<usize> {
        (0..self.started).find(|&v| self.free[v] > 0)
    }

    fn run(&mut self) {
        let Some(a) = self.active() else {
            // Every started pants is complete; a full, legal assignment
            // must have started all pants and used every leg.
            if self.started == self.m && self.leg_used.iter().all(|&u| u) {
                let graph = PantsGraph::new(self.surface, self.legs.clone(), self.edges.clone())
                    .expect("slot filling preserves the pants graph invariants");
                self.found.insert(graph.canonical_code());
            }
            return;
        };

        let floor = self.last[a];
        let admissible = |t: Token| floor.map_or(true, |f| t >= f);

        for label in 1..=self.n {
            if !self.leg_used[label - 1] && admissible(Token::Leg(label)) {
                self.leg_used[label - 1] = true;
                self.free[a] -= 1;
                let prev = self.last[a].replace(Token::Leg(label));
                self.legs[label - 1] = a;
                self.run();
                self.legs[label - 1] = usize::MAX;
                self.last[a] = prev;
                self.free[a] += 1;
                self.leg_used[label - 1] = false;
            }
        }

        if self.free[a] >= 2 && admissible(Token::Loop) {
            self.free[a] -= 2;
            let prev = self.last[a].replace(Token::Loop);
            self.edges.push((a, a));
            self.run();
            self.edges.pop();
            self.last[a] = prev;
            self.free[a] += 2;
        }

        for w in (a + 1)..self.started {
            if self.free[w] > 0 && admissible(Token::Edge(w)) {
                self.free[a] -= 1;
                self.free[w] -= 1;
                let prev = self.last[a].replace(Token::Edge(w));
                self.edges.push((a, w));
                self.run();
                self.edges.pop();
                self.last[a] = prev;
                self.free[w] += 1;
                self.free[a] += 1;
            }
        }

        if self.started < self.m {
            let w = self.started;
            debug_assert!(admissible(Token::Edge(w)));
            self.started += 1;
            self.free[a] -= 1;
            self.free[w] -= 1;
            let prev = self.last[a].replace(Token::Edge(w));
            self.edges.push((a, w));
            self.run();
            self.edges.pop();
            self.last[a] = prev;
            self.free[w] += 1;
            self.free[a] += 1;
            self.started -= 1;
        }
    }
}

/// Enumerates every pants graph type for `surface`, returning canonical
/// representatives in canonical code order.
pub fn enumerate_types(surface: SurfaceType) -> Result<Vec<PantsGraph>, EnumerateError> {
    let m = surface.pants_count();
    if m > MAX_PANTS {
        return Err(EnumerateError::TooLarge {
            surface,
            pants: m,
            max: MAX_PANTS,
        });
    }
    let n = surface.boundary_count() as usize;
    let mut search = Search {
        m,
        n,
        free: vec![3; m],
        started: 1,
        leg_used: vec![false; n],
        last: vec![None; m],
        legs: vec![usize::MAX; n],
        edges: Vec::with_capacity(surface.curve_count()),
        surface,
        found: BTreeSet::new(),
    };
    search.run();
    Ok(search
        .found
        .iter()
        .map(|code| {
            code.decode()
                .expect("canonical codes of generated graphs decode")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(g: u32, n: u32) -> usize {
        enumerate_types(SurfaceType::new(g, n).unwrap())
            .unwrap()
            .len()
    }

    #[test]
    fn small_surface_type_counts() {
        assert_eq!(count(0, 3), 1);
        assert_eq!(count(0, 4), 3);
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(0, 5), 15);
        assert_eq!(count(1, 2), 2);
        assert_eq!(count(2, 0), 2);
    }

    #[test]
    fn planar_counts_follow_the_double_factorial() {
        // Genus-0 types are trivalent trees with n labelled leaves, counted
        // by (2n-5)!!.
        assert_eq!(count(0, 6), 105);
        assert_eq!(count(0, 7), 945);
    }

    #[test]
    fn enumeration_output_is_sorted_and_canonical() {
        let types = enumerate_types(SurfaceType::new(1, 2).unwrap()).unwrap();
        let codes: Vec<CanonicalCode> = types.iter().map(|t| t.canonical_code()).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(codes, sorted);
        for t in &types {
            assert_eq!(t.canonical_code().decode().unwrap(), *t);
        }
    }

    #[test]
    fn refuses_oversized_surfaces() {
        let big = SurfaceType::new(3, 5).unwrap(); // 9 pants
        assert!(matches!(
            enumerate_types(big),
            Err(EnumerateError::TooLarge { pants: 9, .. })
        ));
    }
}
