//! Slices of the syzygies of `J_f` for bihomogeneous surfaces in
//! `k[x0,x1][x2,x3]`.
//!
//! For `f` of bidegree `(k, d-k)` with `d-k = 2μ+1` the partials `f_0, f_1`
//! have bidegree `(k-1, d-k)` and `f_2, f_3` have `(k, d-k-1)`. A syzygy
//! whose `x2,x3`-degree is `η` is a kernel element of a matrix `φ_η` over
//! `A = k[x0,x1]` assembled from Sylvester blocks. The bi-Euler relation
//! accounts for a free summand that is removed by keeping a single column of
//! the `f_3` block; what remains is `M_η`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::milnor::partials;
use crate::polyring::{determinant, Field, Grading, Monomial, Polynomial, Ring, RingExt};
use crate::resolution::{schreyer_syzygies, ModuleMap};

/// `(k, d, μ)` for a bihomogeneous `f` with `d-k` odd.
fn shape<F: Field>(f: &Polynomial<F>) -> Result<(u32, u32, u32)> {
    let ring = f.ring();
    if ring.nvars() != 4 || ring.grading() != (Grading::Bigraded { split: 2 }) {
        return Err(Error::InvalidInput("expected the bigraded ring k[x0,x1;x2,x3]".into()));
    }
    let (k, m) = f.bidegree().map_err(|e| Error::NotHomogeneous(e.to_string()))?;
    if k == 0 || m % 2 == 0 {
        return Err(Error::NotApplicable(format!("bidegree ({k}, {m}): need k >= 1 and d-k odd")));
    }
    Ok((k, k + m, (m - 1) / 2))
}

/// Coefficients of `p` as a form in `x2, x3` of degree `deg` over `A`:
/// entry `j` multiplies `x2^(deg-j) x3^j`.
fn coefficients_in_a<F: Field>(p: &Polynomial<F>, a: &Arc<Ring<F>>, deg: u32) -> Vec<Polynomial<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); deg as usize + 1];
    for (m, c) in p.terms() {
        let j = m.exp(3) as usize;
        parts[j].push((Monomial::new(&[m.exp(0), m.exp(1)]), c.clone()));
    }
    parts.into_iter().map(|t| a.from_terms(t)).collect()
}

/// The slice matrix `φ_η` (or its stripped form) over `A = k[x0,x1]`.
#[derive(Clone, Debug)]
pub struct SliceMatrix<F: Field> {
    pub ring: Arc<Ring<F>>,
    /// Dense, row `j` is the coefficient of `x2^(η-j) x3^j`.
    pub entries: Vec<Vec<Polynomial<F>>>,
    /// `(a, b)` for the row monomial `x2^a x3^b`.
    pub row_labels: Vec<(u32, u32)>,
    /// `(partial index, (a, b))` for the multiplier `x2^a x3^b`.
    pub col_labels: Vec<(usize, (u32, u32))>,
    /// Degree in `A` of each column's image.
    pub col_degrees: Vec<i64>,
    pub eta: u32,
    pub mu: u32,
    pub k: u32,
    pub stripped: bool,
}

impl<F: Field> SliceMatrix<F> {
    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    fn block(&self, i: usize) -> Vec<usize> {
        (0..self.ncols()).filter(|&c| self.col_labels[c].0 == i).collect()
    }

    fn to_map(&self) -> Result<ModuleMap<F>> {
        let columns = (0..self.ncols())
            .map(|c| (0..self.nrows()).filter(|&r| !self.entries[r][c].is_zero()).map(|r| (r, self.entries[r][c].clone())).collect())
            .collect();
        let map = ModuleMap::from_columns(&self.ring, vec![0; self.nrows()], self.col_degrees.clone(), columns);
        if !map.is_homogeneous() {
            return Err(Error::Verification("slice matrix is not homogeneous".into()));
        }
        Ok(map)
    }
}

/// Builds `φ_η` from the four Sylvester blocks; rows run over `x2^(η-j) x3^j`
/// and multipliers within a block descend in `x2`.
pub fn slice_matrix<F: Field>(f: &Polynomial<F>, eta: u32) -> Result<SliceMatrix<F>> {
    let (k, d, mu) = shape(f)?;
    let a = Ring::new(f.field().clone(), 2);
    let parts = partials(f)?;
    let m = d - k;
    let coeffs: Vec<Vec<Polynomial<F>>> =
        parts.iter().enumerate().map(|(i, p)| coefficients_in_a(p, &a, if i < 2 { m } else { m - 1 })).collect();
    let rows = eta as usize + 1;
    let mut col_labels = Vec::new();
    let mut col_degrees = Vec::new();
    let mut columns: Vec<Vec<Polynomial<F>>> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        let deg_i = c.len() as u32 - 1;
        if eta < deg_i {
            continue;
        }
        let mult_deg = eta - deg_i;
        for b in 0..=mult_deg {
            let mut col = vec![a.zero(); rows];
            for (j, h) in c.iter().enumerate() {
                col[b as usize + j] = h.clone();
            }
            columns.push(col);
            col_labels.push((i, (mult_deg - b, b)));
            col_degrees.push(if i < 2 { k as i64 - 1 } else { k as i64 });
        }
    }
    let entries = (0..rows).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    Ok(SliceMatrix {
        ring: a,
        entries,
        row_labels: (0..=eta).map(|j| (eta - j, j)).collect(),
        col_labels,
        col_degrees,
        eta,
        mu,
        k,
        stripped: false,
    })
}

/// Drops every `f_3` column except the first (multiplier `x2^(η-2μ)`), which
/// removes the multiples of the bi-Euler syzygy.
pub fn strip_bieuler<F: Field>(s: &SliceMatrix<F>) -> Result<SliceMatrix<F>> {
    if s.stripped {
        return Err(Error::InvalidInput("matrix is already stripped".into()));
    }
    if s.eta <= 2 * s.mu {
        return Err(Error::NotApplicable(format!("η = {} <= 2μ = {}: no bi-Euler multiples", s.eta, 2 * s.mu)));
    }
    let f3 = s.block(3);
    let keep: Vec<usize> = (0..s.ncols()).filter(|c| !f3.contains(c) || *c == f3[0]).collect();
    Ok(SliceMatrix {
        ring: s.ring.clone(),
        entries: s.entries.iter().map(|row| keep.iter().map(|&c| row[c].clone()).collect()).collect(),
        row_labels: s.row_labels.clone(),
        col_labels: keep.iter().map(|&c| s.col_labels[c]).collect(),
        col_degrees: keep.iter().map(|&c| s.col_degrees[c]).collect(),
        stripped: true,
        ..s.clone()
    })
}

/// Generators of `M_η` as a graded `A`-module.
#[derive(Clone, Debug, Serialize)]
pub struct SliceKernel {
    pub eta: u32,
    /// Degrees in `A` of the minimal generators.
    pub degrees: Vec<i64>,
}

impl SliceKernel {
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// `ker φ_η` over `A` by syzygies in two variables.
pub fn slice_kernel<F: Field>(s: &SliceMatrix<F>) -> Result<SliceKernel> {
    if s.ncols() == 0 {
        return Ok(SliceKernel { eta: s.eta, degrees: vec![] });
    }
    let syz = schreyer_syzygies(&s.to_map()?)?;
    Ok(SliceKernel { eta: s.eta, degrees: syz.map.source_degrees.clone() })
}

/// `φ_η` with bi-Euler multiples removed where there are any.
pub fn reduced_slice<F: Field>(f: &Polynomial<F>, eta: u32) -> Result<SliceMatrix<F>> {
    let s = slice_matrix(f, eta)?;
    if eta > 2 * s.mu {
        strip_bieuler(&s)
    } else {
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub passed: bool,
    /// Name of the first vanishing factor.
    pub witness: Option<String>,
}

/// Checks the factors `2μ+1`, `h_{2μ+1}`, `∂_{x0} h_0`, `∂_{x1} h_{2μ+1}` and
/// `Δ`, the determinant of the `f_2` block restricted to rows
/// `η-2μ, ..., 2(η-2μ)`, for non-vanishing.
pub fn genericity_certificate<F: Field>(f: &Polynomial<F>, eta: u32) -> Result<Certificate> {
    let (k, d, mu) = shape(f)?;
    let a = Ring::new(f.field().clone(), 2);
    let h = coefficients_in_a(f, &a, d - k);
    let top = 2 * mu as usize + 1;
    let fail = |w: &str| Ok(Certificate { passed: false, witness: Some(w.to_string()) });
    if a.field().is_zero(&a.field().from_i64(top as i64)) {
        return fail("2μ+1");
    }
    if h[top].is_zero() {
        return fail("h_{2μ+1}");
    }
    if h[0].partial_derivative(0)?.is_zero() {
        return fail("∂x0 h_0");
    }
    if h[top].partial_derivative(1)?.is_zero() {
        return fail("∂x1 h_{2μ+1}");
    }
    if eta < 2 * mu {
        return Err(Error::InvalidInput(format!("η = {eta} < 2μ = {}", 2 * mu)));
    }
    let s = slice_matrix(f, eta)?;
    let cols = s.block(2);
    let t = (eta - 2 * mu) as usize;
    let sub: Vec<Vec<Polynomial<F>>> = (t..=2 * t).map(|r| cols.iter().map(|&c| s.entries[r][c].clone()).collect()).collect();
    if determinant(&sub).is_zero() {
        return fail("Δ");
    }
    Ok(Certificate { passed: true, witness: None })
}

/// Result of the search for the smallest `η` with `M_η ≠ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct SyzygySearch {
    pub k: u32,
    pub d: u32,
    pub mu: u32,
    /// `(e, η)`: degree in `x0,x1` and in `x2,x3`.
    pub bidegree: (i64, i64),
    pub total_degree: i64,
    /// `(2k, 0) + μ (3k-2, 3)`.
    pub predicted: (i64, i64),
    pub certificate: Certificate,
    /// `total_degree - 2`, a lower bound for `reg M(f)`.
    pub regularity_lower_bound: i64,
    pub kernels: Vec<SliceKernel>,
}

/// Scans `η = 0, 1, ...` for the first nonzero `M_η`. Fails with
/// `Genericity` if the certificate fails or the kernel appears before `3μ`,
/// and with `Verification` if its shape disagrees with the closed form.
pub fn minimal_syzygy_search<F: Field>(f: &Polynomial<F>) -> Result<SyzygySearch> {
    let (k, d, mu) = shape(f)?;
    let certificate = genericity_certificate(f, 3 * mu)?;
    if !certificate.passed {
        return Err(Error::Genericity(format!("certificate factor {} vanishes", certificate.witness.as_deref().unwrap_or("?"))));
    }
    let predicted = (2 * k as i64 + mu as i64 * (3 * k as i64 - 2), 3 * mu as i64);
    let mut kernels = Vec::new();
    for eta in 0..=3 * mu {
        let ker = slice_kernel(&reduced_slice(f, eta)?)?;
        kernels.push(ker.clone());
        if ker.is_zero() {
            continue;
        }
        if eta < 3 * mu {
            return Err(Error::Genericity(format!("M_η is nonzero at η = {eta} < 3μ = {}", 3 * mu)));
        }
        if ker.rank() != 1 {
            return Err(Error::Verification(format!("M_{eta} has rank {}", ker.rank())));
        }
        // expected-rank condition 2η = 3(d-k-1)
        debug_assert_eq!(2 * eta, 3 * (d - k - 1));
        let bidegree = (ker.degrees[0], eta as i64);
        if bidegree != predicted {
            return Err(Error::Verification(format!("found {bidegree:?}, expected {predicted:?}")));
        }
        let total = bidegree.0 + bidegree.1;
        return Ok(SyzygySearch {
            k,
            d,
            mu,
            bidegree,
            total_degree: total,
            predicted,
            certificate,
            regularity_lower_bound: total - 2,
            kernels,
        });
    }
    Err(Error::Genericity(format!("M_η vanishes up to η = 3μ = {}", 3 * mu)))
}

/// The bigraded ring `k[x0,x1;x2,x3]`.
pub fn bigraded_ring<F: Field>(field: F) -> Arc<Ring<F>> {
    Ring::with_grading(field, 4, Grading::Bigraded { split: 2 })
}
