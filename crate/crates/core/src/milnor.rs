//! Jacobian ideals, Hessians and the invariants of the Milnor algebra
//! `M(f) = S / J_f`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::hilbert::{hilbert_series_of_quotient, HilbertPolynomialData, HilbertSeriesData};
use crate::polyring::{determinant, Field, Polynomial, RingExt};
use crate::resolution::{betti_table, free_resolution, minimalize, syzygies_of, BettiTable, ResolutionStatus};

fn degree_of<F: Field>(f: &Polynomial<F>) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial".into()));
    }
    f.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(f.to_string()))
}

fn check_characteristic<F: Field>(f: &Polynomial<F>, d: u32) -> Result<()> {
    let p = f.field().characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::Characteristic { characteristic: p, degree: d });
    }
    Ok(())
}

/// The partial derivatives `∂_0 f, ..., ∂_n f`, zeros included.
pub fn partials<F: Field>(f: &Polynomial<F>) -> Result<Vec<Polynomial<F>>> {
    let d = degree_of(f)?;
    check_characteristic(f, d)?;
    (0..f.ring().nvars()).map(|i| f.partial_derivative(i)).collect()
}

/// `J_f = (∂_0 f, ..., ∂_n f)`. Requires `f` homogeneous of degree at least
/// one and a characteristic that is zero or exceeds the degree.
pub fn jacobian_ideal<F: Field>(f: &Polynomial<F>) -> Result<Ideal<F>> {
    Ok(Ideal::new(f.ring(), partials(f)?))
}

/// Determinant of the matrix of second partials.
pub fn hessian<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let n = f.ring().nvars();
    let first = (0..n).map(|i| f.partial_derivative(i)).collect::<Result<Vec<_>>>()?;
    let rows = first
        .iter()
        .map(|g| (0..n).map(|j| g.partial_derivative(j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(&rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpodziejaVerdict {
    pub hess_in_j: bool,
    pub hess_in_colon: bool,
    /// Decided by saturation: `V(f)` is singular iff `J_f : m^∞` is proper.
    pub singular: bool,
}

/// Hessian membership in `J_f` and in `J_f : m`, cross-checked against the
/// singularity verdict from saturation. A mismatch is a `Verification`
/// error.
pub fn spodzieja_test<F: Field>(f: &Polynomial<F>) -> Result<SpodziejaVerdict> {
    let j = jacobian_ideal(f)?;
    let sat = saturate_irrelevant(&j);
    spodzieja_with(f, &j, &sat)
}

fn spodzieja_with<F: Field>(f: &Polynomial<F>, j: &Ideal<F>, sat: &Ideal<F>) -> Result<SpodziejaVerdict> {
    if degree_of(f)? < 2 {
        return Err(Error::NotApplicable("Hessian test needs degree at least 2".into()));
    }
    let hess = hessian(f)?;
    let hess_in_j = j.contains(&hess)?;
    let ring = f.ring();
    let mut hess_in_colon = true;
    for i in 0..ring.nvars() {
        if !j.contains(&(&ring.var(i) * &hess))? {
            hess_in_colon = false;
        }
    }
    let singular = !sat.is_unit();
    let v = SpodziejaVerdict { hess_in_j, hess_in_colon, singular };
    if hess_in_j != singular {
        return Err(Error::Verification(format!("hess in J_f is {hess_in_j} but singular is {singular} for {f}")));
    }
    if !hess_in_colon {
        return Err(Error::Verification(format!("hess is not in J_f : m for {f}")));
    }
    Ok(v)
}

/// Dimensions of `N(f) = I_f / J_f` over a degree window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NData {
    pub window: (i64, i64),
    /// `dims[k - window.0]` for `k` in the window.
    pub dims: Vec<i64>,
    pub indeg: Option<i64>,
    pub top: Option<i64>,
}

impl NData {
    fn from_series(j: &HilbertSeriesData, sat: &HilbertSeriesData, window: (i64, i64)) -> NData {
        let dims: Vec<i64> = (window.0..=window.1).map(|k| j.hilbert_function_at(k) - sat.hilbert_function_at(k)).collect();
        let indeg = dims.iter().position(|&x| x != 0).map(|p| window.0 + p as i64);
        let top = dims.iter().rposition(|&x| x != 0).map(|p| window.0 + p as i64);
        NData { window, dims, indeg, top }
    }

    pub fn is_zero(&self) -> bool {
        self.indeg.is_none()
    }
}

/// `T = (n+1)(d-2)` for a hypersurface of degree `d` in `P^n`.
pub fn hessian_degree(nvars: usize, d: u32) -> i64 {
    nvars as i64 * (d as i64 - 2)
}

/// `N(f)` over `window`, default `[0, T+2]`.
pub fn n_module<F: Field>(f: &Polynomial<F>, window: Option<(i64, i64)>) -> Result<NData> {
    let d = degree_of(f)?;
    let j = jacobian_ideal(f)?;
    let sat = saturate_irrelevant(&j);
    let w = window.unwrap_or((0, hessian_degree(f.ring().nvars(), d) + 2));
    Ok(NData::from_series(&hilbert_series_of_quotient(&j), &hilbert_series_of_quotient(&sat), w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl Comparison {
    fn of(a: i64, b: i64) -> Comparison {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Greater,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Less => "<",
            Comparison::Equal => "=",
            Comparison::Greater => ">",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Comparisons {
    pub reg_vs_t: Option<Comparison>,
    pub st_vs_t: Option<Comparison>,
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub length_cap: Option<usize>,
    pub degree_cap: Option<i64>,
    pub n_window: Option<(i64, i64)>,
    /// Number of Hilbert function values to sample; default `T + 3`.
    pub hf_samples: Option<usize>,
}

/// All Milnor algebra invariants of one hypersurface.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorReport {
    pub d: u32,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: i64,
    pub hf_samples: Vec<i64>,
    pub hp: HilbertPolynomialData,
    pub st: Option<i64>,
    pub reg: Option<i64>,
    /// `false` when a cap truncated the resolution; `reg` and `pd` are then
    /// only lower bounds.
    pub exact: bool,
    pub pd: Option<usize>,
    pub depth: Option<usize>,
    pub hess_in_j: bool,
    pub hess_in_colon: bool,
    pub singular: bool,
    pub n_data: NData,
    pub comparisons: Comparisons,
    #[serde(skip)]
    pub betti: BettiTable,
    #[serde(skip)]
    pub series: HilbertSeriesData,
    pub status: ResolutionStatus,
}

impl MilnorReport {
    /// `st <= reg + pd - n` and `reg >= top(N(f))`, each `None` when an
    /// input is missing.
    pub fn invariants(&self) -> Vec<(&'static str, Option<bool>)> {
        let st_reg = match (self.st, self.reg, self.pd) {
            (Some(st), Some(reg), Some(pd)) => Some(st <= reg + pd as i64 - self.n as i64),
            (None, _, _) => Some(true),
            _ => None,
        };
        let reg_top = match (self.reg, self.n_data.top) {
            (Some(reg), Some(top)) => Some(reg >= top),
            (_, None) => Some(true),
            _ => None,
        };
        vec![
            ("T = (n+1)(d-2)", Some(self.t == hessian_degree(self.n + 1, self.d))),
            ("depth = n+1 - pd", Some(self.depth.zip(self.pd).is_none_or(|(a, b)| a + b == self.n + 1))),
            ("st <= reg + pd - n", st_reg),
            ("reg >= top N(f)", reg_top),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["betti"] = self.betti.to_json();
        v
    }

    pub fn to_text(&self) -> String {
        let opt = |x: Option<i64>| x.map_or("none".to_string(), |v| v.to_string());
        let mut s = String::new();
        let _ = writeln!(s, "d: {}", self.d);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "T: {}", self.t);
        let _ = writeln!(s, "HF: {}", self.hf_samples.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        let _ = writeln!(s, "HP: {}", self.hp.display());
        let _ = writeln!(s, "st: {}", opt(self.st));
        let bound = if self.exact { "" } else { " (lower bound)" };
        let _ = writeln!(s, "reg: {}{}", opt(self.reg), bound);
        let _ = writeln!(s, "pd: {}", opt(self.pd.map(|x| x as i64)));
        let _ = writeln!(s, "depth: {}", opt(self.depth.map(|x| x as i64)));
        let _ = writeln!(s, "hess in J: {}", self.hess_in_j);
        let _ = writeln!(s, "hess in J:m: {}", self.hess_in_colon);
        let _ = writeln!(s, "singular: {}", self.singular);
        let _ = writeln!(
            s,
            "N(f) dims [{}..{}]: {}",
            self.n_data.window.0,
            self.n_data.window.1,
            self.n_data.dims.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        );
        let _ = writeln!(s, "N(f) indeg: {}", opt(self.n_data.indeg));
        let _ = writeln!(s, "N(f) top: {}", opt(self.n_data.top));
        if let Some(c) = self.comparisons.reg_vs_t {
            let _ = writeln!(s, "reg {} T", c.symbol());
        }
        if let Some(c) = self.comparisons.st_vs_t {
            let _ = writeln!(s, "st {} T", c.symbol());
        }
        let _ = writeln!(s, "betti:");
        s.push_str(&self.betti.to_text());
        s
    }
}

/// Runs every pipeline on `f`: Hilbert data of `M(f)`, a minimal resolution
/// with its Betti table, the Hessian tests and `N(f)`.
pub fn milnor_report<F: Field>(f: &Polynomial<F>, opts: &ReportOptions) -> Result<MilnorReport> {
    let d = degree_of(f)?;
    let nvars = f.ring().nvars();
    let t = hessian_degree(nvars, d);
    let j = jacobian_ideal(f)?;
    let series = hilbert_series_of_quotient(&j);
    let sat = saturate_irrelevant(&j);
    let spod = spodzieja_with(f, &j, &sat)?;
    let window = opts.n_window.unwrap_or((0, t + 2));
    let n_data = NData::from_series(&series, &hilbert_series_of_quotient(&sat), window);
    let res = minimalize(&free_resolution(&j, opts.length_cap, opts.degree_cap)?);
    let betti = betti_table(&res)?;
    if res.is_complete() && betti.hilbert_series() != series {
        return Err(Error::Verification("Betti numbers do not reproduce the Hilbert series".into()));
    }
    let exact = res.is_complete();
    let reg = betti.regularity();
    let pd = betti.projective_dimension();
    let depth = if exact { pd.map(|p| nvars - p) } else { None };
    let st = series.stability_threshold();
    let samples = opts.hf_samples.unwrap_or((t + 3).max(1) as usize);
    Ok(MilnorReport {
        d,
        n: nvars - 1,
        t,
        hf_samples: series.hilbert_function(0..samples as i64),
        hp: series.hilbert_polynomial(),
        st,
        reg,
        exact,
        pd,
        depth,
        hess_in_j: spod.hess_in_j,
        hess_in_colon: spod.hess_in_colon,
        singular: spod.singular,
        n_data,
        comparisons: Comparisons {
            reg_vs_t: reg.filter(|_| exact).map(|r| Comparison::of(r, t)),
            st_vs_t: st.map(|s| Comparison::of(s, t)),
        },
        betti,
        series,
        status: res.status(),
    })
}

/// The Euler relation `d f - Σ x_i ∂_i f = 0` as a syzygy of
/// `(f, ∂_0 f, ..., ∂_n f)`, tested for membership in the computed syzygy
/// module.
pub fn euler_syzygy_present<F: Field>(f: &Polynomial<F>) -> Result<bool> {
    let d = degree_of(f)?;
    let ring = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend(partials(f)?);
    let syz = syzygies_of(ring, &gens)?;
    let minus_one = ring.field().from_i64(-1);
    let mut v = vec![(0, ring.constant(ring.field().from_i64(d as i64)))];
    v.extend((0..ring.nvars()).map(|i| (i + 1, ring.var(i).scale(&minus_one))));
    let relation: Polynomial<F> = gens.iter().zip(v.iter()).fold(ring.zero(), |acc, (g, (_, c))| &acc + &(g * c));
    Ok(relation.is_zero() && syz.contains(&v))
}

/// The bi-Euler relation `(d-k)(x0 ∂_0 f + x1 ∂_1 f) - k (x2 ∂_2 f + x3 ∂_3 f) = 0`
/// for `f` of bidegree `(k, d-k)` in a ring split after two variables,
/// tested as a member of `Syz(∂_0 f, ..., ∂_3 f)`.
pub fn bi_euler_syzygy_present<F: Field>(f: &Polynomial<F>) -> Result<bool> {
    let (k, m) = f.bidegree().map_err(|e| Error::NotApplicable(format!("bi-Euler relation: {e}")))?;
    let ring = f.ring();
    let split = match ring.grading() {
        crate::polyring::Grading::Bigraded { split } => split,
        crate::polyring::Grading::Standard => unreachable!("bidegree succeeded"),
    };
    let gens = partials(f)?;
    let field = ring.field();
    let v: Vec<(usize, Polynomial<F>)> = (0..ring.nvars())
        .map(|i| {
            let c = if i < split { m as i64 } else { -(k as i64) };
            (i, ring.var(i).scale(&field.from_i64(c)))
        })
        .collect();
    let relation = gens.iter().zip(v.iter()).fold(ring.zero(), |acc, (g, (_, c))| &acc + &(g * c));
    let syz = syzygies_of(ring, &gens)?;
    Ok(relation.is_zero() && syz.contains(&v))
}

/// Bounds for surfaces whose Jacobian ideal sits in a codimension-two
/// perfect ideal `I` with Hilbert-Burch degrees `e_1 <= ...`, `l_1 <= ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Codim2Bounds {
    pub d: i64,
    pub r: Option<usize>,
    pub e1: i64,
    pub l1: i64,
    pub eta0: i64,
    pub eta1: i64,
    pub eta2: i64,
    pub st_bound: i64,
    pub reg_bound: i64,
}

pub fn codim2_bounds(d: i64, e1: i64, l1: i64) -> Result<Codim2Bounds> {
    if !(1 <= e1 && e1 < d && e1 < l1) {
        return Err(Error::InvalidInput(format!("need 1 <= e1 <= d-1 and e1 < l1, got d={d}, e1={e1}, l1={l1}")));
    }
    let eta0 = 4 * d - 8 - 2 * e1;
    let eta1 = 3 * d - 7 - e1 + (d - 1 - l1).max(0);
    let eta2 = l1 - 4;
    let reg_bound = if e1 < d - 1 { (4 * d - 8 - 2 * e1).max(l1 - 2) } else { (2 * d - 5).max(l1 - 2) };
    Ok(Codim2Bounds { d, r: None, e1, l1, eta0, eta1, eta2, st_bound: (eta0 + 1).max(eta2 + 1), reg_bound })
}

impl Codim2Bounds {
    /// Data for a union of `r` surfaces of the given degrees: `I` is generated
    /// by the products of all but one component, so `e_1 = d - max d_i` and
    /// `l_1 = d`.
    pub fn for_arrangement(degrees: &[u32]) -> Result<Codim2Bounds> {
        let d: i64 = degrees.iter().map(|&x| x as i64).sum();
        let dr = degrees.iter().copied().max().unwrap_or(0) as i64;
        let mut b = codim2_bounds(d, d - dr, d)?;
        b.r = Some(degrees.len());
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolatedBranch {
    /// `V(f)` is smooth: `N(f) = M(f)` and the bounds hold trivially.
    Smooth,
    General,
    /// `I_f = J_f` is a complete intersection of degree `(d-1)^n`.
    CompleteIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatedVerdict {
    pub branch: IsolatedBranch,
    pub st_bound: Option<i64>,
    pub reg_bound: Option<i64>,
    pub st_ok: bool,
    pub reg_ok: bool,
}

/// Checks `st <= T - indeg N(f) + 1` and the regularity bound for
/// hypersurfaces with isolated singularities (constant Hilbert polynomial).
pub fn isolated_bounds_check(report: &MilnorReport) -> Result<IsolatedVerdict> {
    let hp = &report.hp;
    if hp.degree().is_some_and(|deg| deg > 0) {
        return Err(Error::NotApplicable("the singular locus is not finite".into()));
    }
    let t = report.t;
    let d = report.d as i64;
    let branch = if hp.is_zero() {
        IsolatedBranch::Smooth
    } else {
        let codim = report.n;
        let ci = report.betti.total(1) == codim && report.pd == Some(codim);
        let deg = hp.integer_coefficients().and_then(|c| c.first().copied());
        if report.n_data.is_zero() && ci && deg == Some((d - 1).pow(report.n as u32)) {
            IsolatedBranch::CompleteIntersection
        } else {
            IsolatedBranch::General
        }
    };
    let indeg = report.n_data.indeg;
    let st_bound = indeg.map(|i| t - i + 1);
    let reg_bound = match branch {
        IsolatedBranch::CompleteIntersection => Some(t - indeg.map_or(d - 2, |i| i.min(d - 2))),
        _ => indeg.map(|i| t - i.min(d - 1)),
    };
    let le = |x: Option<i64>, b: Option<i64>| match (x, b) {
        (Some(x), Some(b)) => x <= b,
        _ => true,
    };
    Ok(IsolatedVerdict {
        branch,
        st_bound,
        reg_bound,
        st_ok: le(report.st, st_bound),
        reg_ok: le(report.reg.filter(|_| report.exact), reg_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, PrimeField, Rationals, Ring};

    #[test]
    fn bounds_arithmetic() {
        for d in 2..6 {
            let b = Codim2Bounds::for_arrangement(&[1, d]).unwrap();
            assert_eq!(b.st_bound, 4 * d as i64 - 5);
            let b = Codim2Bounds::for_arrangement(&[d, d]).unwrap();
            assert_eq!(b.st_bound, 6 * d as i64 - 7);
        }
        let b = codim2_bounds(6, 5, 7).unwrap();
        assert_eq!(b.reg_bound, 7);
        assert!(codim2_bounds(6, 6, 7).is_err());
        assert!(codim2_bounds(6, 3, 3).is_err());
    }

    #[test]
    fn characteristic_guard() {
        let r = Ring::new(PrimeField::new(3), 4);
        let f = parse_polynomial(&r, "x0^3+x1^3+x2^3+x3^3").unwrap();
        assert_eq!(jacobian_ideal(&f).unwrap_err(), Error::Characteristic { characteristic: 3, degree: 3 });
        let q = Ring::new(Rationals, 4);
        let f = parse_polynomial(&q, "x0^2+x1^2+x2^2+x3^2").unwrap();
        assert_eq!(hessian(&f).unwrap(), q.constant(Rationals.from_i64(16)));
    }
}
