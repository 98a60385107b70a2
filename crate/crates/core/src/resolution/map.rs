use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Field, Grading, Polynomial, Ring, RingExt};

/// A homogeneous map of graded free modules `⊕ S(-src_j) -> ⊕ S(-tgt_i)`,
/// stored as sparse columns.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    ring: Arc<Ring<F>>,
    pub source_degrees: Vec<i64>,
    pub target_degrees: Vec<i64>,
    pub source_bidegrees: Option<Vec<(i64, i64)>>,
    pub target_bidegrees: Option<Vec<(i64, i64)>>,
    /// Column `j`: nonzero entries `(row, entry)` sorted by row.
    columns: Vec<Vec<(usize, Polynomial<F>)>>,
}

impl<F: Field> ModuleMap<F> {
    /// Builds a map from sparse columns; degrees are taken as given.
    pub fn from_columns(
        ring: &Arc<Ring<F>>,
        target_degrees: Vec<i64>,
        source_degrees: Vec<i64>,
        mut columns: Vec<Vec<(usize, Polynomial<F>)>>,
    ) -> ModuleMap<F> {
        assert_eq!(source_degrees.len(), columns.len());
        for col in columns.iter_mut() {
            col.retain(|(_, p)| !p.is_zero());
            col.sort_by_key(|(r, _)| *r);
            assert!(col.iter().all(|(r, _)| *r < target_degrees.len()), "row index out of range");
        }
        ModuleMap {
            ring: ring.clone(),
            source_degrees,
            target_degrees,
            source_bidegrees: None,
            target_bidegrees: None,
            columns,
        }
    }

    /// Builds a map from a dense row-major matrix, reading column degrees
    /// off the entries. Fails if some column is not homogeneous.
    pub fn from_rows(ring: &Arc<Ring<F>>, target_degrees: Vec<i64>, rows: &[Vec<Polynomial<F>>]) -> Result<ModuleMap<F>> {
        assert_eq!(rows.len(), target_degrees.len());
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = Vec::with_capacity(ncols);
        let mut degrees = Vec::with_capacity(ncols);
        for c in 0..ncols {
            let col: Vec<(usize, Polynomial<F>)> =
                (0..rows.len()).filter(|&r| !rows[r][c].is_zero()).map(|r| (r, rows[r][c].clone())).collect();
            let mut deg = None;
            for (r, p) in &col {
                let d = p
                    .homogeneous_degree()
                    .ok_or_else(|| Error::NotHomogeneous(format!("entry ({r}, {c}) is not homogeneous")))?
                    as i64
                    + target_degrees[*r];
                if deg.is_some_and(|x| x != d) {
                    return Err(Error::NotHomogeneous(format!("column {c} mixes degrees")));
                }
                deg = Some(d);
            }
            degrees.push(deg.unwrap_or(0));
            columns.push(col);
        }
        Ok(ModuleMap::from_columns(ring, target_degrees, degrees, columns))
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.target_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, Polynomial<F>)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, Polynomial<F>)>] {
        &self.columns
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial<F> {
        match self.columns[c].binary_search_by_key(&r, |(row, _)| *row) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    /// Dense row-major copy.
    pub fn to_rows(&self) -> Vec<Vec<Polynomial<F>>> {
        let mut rows = vec![vec![self.ring.zero(); self.ncols()]; self.nrows()];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, p) in col {
                rows[*r][c] = p.clone();
            }
        }
        rows
    }

    /// Every nonzero entry `(r, c)` is homogeneous of degree
    /// `source_degrees[c] - target_degrees[r]` (and bihomogeneous of the
    /// matching bidegree when bidegrees are recorded).
    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| {
            col.iter().all(|(r, p)| {
                let ok = p.homogeneous_degree().map(|d| d as i64) == Some(self.source_degrees[c] - self.target_degrees[*r]);
                let bi_ok = match (&self.source_bidegrees, &self.target_bidegrees) {
                    (Some(s), Some(t)) => p
                        .bidegree()
                        .map(|(a, b)| (a as i64, b as i64) == (s[c].0 - t[*r].0, s[c].1 - t[*r].1))
                        .unwrap_or(false),
                    _ => true,
                };
                ok && bi_ok
            })
        })
    }

    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().flatten().any(|(_, p)| p.is_constant())
    }

    /// `self ∘ other` is the zero map.
    pub fn composes_to_zero(&self, other: &ModuleMap<F>) -> bool {
        assert_eq!(self.ncols(), other.nrows(), "maps are not composable");
        other.columns.iter().all(|col| self.apply(col).is_empty())
    }

    /// Image of the vector with the given sparse coordinates.
    pub fn apply(&self, v: &[(usize, Polynomial<F>)]) -> Vec<(usize, Polynomial<F>)> {
        let mut acc: Vec<Polynomial<F>> = vec![self.ring.zero(); self.nrows()];
        for (k, b) in v {
            for (r, a) in &self.columns[*k] {
                acc[*r] = &acc[*r] + &(a * b);
            }
        }
        acc.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Fills in bidegrees when the ring is bigraded and every entry is
    /// bihomogeneous; `target` gives the row bidegrees.
    pub fn assign_bidegrees(&mut self, target: Vec<(i64, i64)>) -> bool {
        if !matches!(self.ring.grading(), Grading::Bigraded { .. }) {
            return false;
        }
        let mut src = Vec::with_capacity(self.ncols());
        for col in &self.columns {
            let mut bd = None;
            for (r, p) in col {
                let Ok((a, b)) = p.bidegree() else { return false };
                let d = (a as i64 + target[*r].0, b as i64 + target[*r].1);
                if bd.is_some_and(|x| x != d) {
                    return false;
                }
                bd = Some(d);
            }
            match bd {
                Some(d) => src.push(d),
                None => return false,
            }
        }
        self.target_bidegrees = Some(target);
        self.source_bidegrees = Some(src);
        true
    }

    pub(crate) fn columns_mut(&mut self) -> &mut Vec<Vec<(usize, Polynomial<F>)>> {
        &mut self.columns
    }
}
