//! Graded free resolutions: Schreyer frames, minimalization and Betti tables.

mod betti;
mod map;
mod minimal;
mod schreyer;

use std::sync::Arc;

use serde::Serialize;

pub use betti::{betti_table, depth_and_pd, regularity_of, BettiTable};
pub use map::ModuleMap;
pub use minimal::{minimalize, minimalize_with, PivotRule};
pub use schreyer::{free_resolution, schreyer_syzygies, syzygies_of, Syzygies};

use crate::hilbert::HilbertSeriesData;
use crate::polyring::{Field, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolutionStatus {
    Complete,
    /// Some cap was hit. `length`: maps beyond the length cap exist;
    /// `degree`: generators above the degree cap were dropped.
    Truncated { length: bool, degree: bool },
}

/// A graded free resolution `0 <- S/I <- F_0 <- F_1 <- ... <- F_m` of a
/// cyclic module, stored as its maps `φ_i : F_i -> F_{i-1}` (`maps[i-1]`).
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    ring: Arc<Ring<F>>,
    maps: Vec<ModuleMap<F>>,
    minimal: bool,
    status: ResolutionStatus,
    degree_cap: Option<i64>,
}

impl<F: Field> Resolution<F> {
    pub fn new(
        ring: Arc<Ring<F>>,
        maps: Vec<ModuleMap<F>>,
        minimal: bool,
        status: ResolutionStatus,
        degree_cap: Option<i64>,
    ) -> Resolution<F> {
        Resolution { ring, maps, minimal, status, degree_cap }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// `maps()[i]` is `φ_{i+1} : F_{i+1} -> F_i`.
    pub fn maps(&self) -> &[ModuleMap<F>] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> Option<&ModuleMap<F>> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn status(&self) -> ResolutionStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == ResolutionStatus::Complete
    }

    pub fn degree_cap(&self) -> Option<i64> {
        self.degree_cap
    }

    /// Largest `i` with `F_i != 0`.
    pub fn length(&self) -> usize {
        (0..=self.maps.len()).rev().find(|&i| self.rank(i) > 0).unwrap_or(0)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            return self.maps.first().map_or(vec![0], |m| m.target_degrees.clone());
        }
        self.maps.get(i - 1).map_or(Vec::new(), |m| m.source_degrees.clone())
    }

    /// Generator bidegrees of `F_i`, when recorded.
    pub fn bidegrees(&self, i: usize) -> Option<Vec<(i64, i64)>> {
        if i == 0 {
            return match self.maps.first() {
                Some(m) => m.target_bidegrees.clone(),
                None => Some(vec![(0, 0)]),
            };
        }
        match self.maps.get(i - 1) {
            Some(m) => m.source_bidegrees.clone(),
            None => self.maps.last().and_then(|m| m.source_bidegrees.as_ref()).map(|_| Vec::new()),
        }
    }

    /// `φ_i ∘ φ_{i+1} = 0` for all `i`, and every map is homogeneous.
    pub fn is_complex(&self) -> bool {
        self.maps.iter().all(|m| m.is_homogeneous()) && self.maps.windows(2).all(|w| w[0].composes_to_zero(&w[1]))
    }

    /// Alternating sum `Σ (-1)^i Σ_j t^{d_ij} / (1-t)^n`; equals the Hilbert
    /// series of the module when the resolution is complete.
    pub fn hilbert_series(&self) -> HilbertSeriesData {
        let n = self.ring.nvars();
        let terms = (0..=self.maps.len())
            .flat_map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                self.degrees(i).into_iter().map(move |d| (d, sign))
            })
            .collect::<Vec<_>>();
        let mut h = HilbertSeriesData::from_terms(terms, n);
        let bi: Option<Vec<((i64, i64), i64)>> = (0..=self.maps.len())
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                self.bidegrees(i).map(|b| b.into_iter().map(|d| (d, sign)).collect::<Vec<_>>())
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| {
                let mut acc = std::collections::BTreeMap::new();
                for (d, s) in v.into_iter().flatten() {
                    *acc.entry(d).or_insert(0i64) += s;
                }
                acc.into_iter().filter(|(_, c)| *c != 0).collect()
            });
        h.bigraded_numerator = bi;
        h
    }
}
