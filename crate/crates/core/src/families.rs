//! Constructors for the hypersurface families studied here, and a Betti
//! shape classifier for free and nearly free divisors.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, gcd, saturate_irrelevant, Ideal};
use crate::hilbert::hilbert_series_of_quotient;
use crate::milnor::jacobian_ideal;
use crate::polyring::{determinant, rank, Field, Monomial, Polynomial, Ring, RingExt};
use crate::resolution::BettiTable;

const MAX_RESAMPLES: usize = 64;

/// `f(x0, ..., x3) = g(x1, x2, x3)` for a plane curve `g` in three variables.
pub fn cone_over_plane_curve<F: Field>(g: &Polynomial<F>) -> Result<Polynomial<F>> {
    if g.ring().nvars() != 3 {
        return Err(Error::InvalidInput("a plane curve needs exactly three variables".into()));
    }
    if g.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let target = Ring::new(g.field().clone(), 4);
    Ok(g.remap(&target, &[1, 2, 3]))
}

fn random_linear_form<F: Field>(ring: &Arc<Ring<F>>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    (0..ring.nvars()).map(|_| ring.field().random_nonzero(rng)).collect()
}

/// Whether every `size`-subset of `rows` is linearly independent.
fn all_subsets_independent<F: Field>(field: &F, rows: &[Vec<F::Elem>], size: usize) -> bool {
    fn rec<F: Field>(field: &F, rows: &[Vec<F::Elem>], size: usize, start: usize, pick: &mut Vec<usize>) -> bool {
        if pick.len() == size {
            let mut m: Vec<Vec<F::Elem>> = pick.iter().map(|&i| rows[i].clone()).collect();
            return rank(field, &mut m) == size;
        }
        (start..rows.len()).all(|i| {
            pick.push(i);
            let ok = rec(field, rows, size, i + 1, pick);
            pick.pop();
            ok
        })
    }
    rec(field, rows, size, 0, &mut Vec::new())
}

/// A product of `d` linear forms in `P^n`.
#[derive(Clone, Debug)]
pub struct Arrangement<F: Field> {
    pub f: Polynomial<F>,
    pub forms: Vec<Polynomial<F>>,
}

/// `d` seeded random hyperplanes in `P^n`, any `n+1` of them independent.
/// Resamples a bounded number of times and fails with `Genericity`.
pub fn generic_hyperplane_arrangement<F: Field>(field: F, n: usize, d: usize, seed: u64) -> Result<Arrangement<F>> {
    if !(2 <= n && n < d) {
        return Err(Error::InvalidInput(format!("need d > n >= 2, got n={n}, d={d}")));
    }
    let ring = Ring::new(field.clone(), n + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let coeffs: Vec<Vec<F::Elem>> = (0..d).map(|_| random_linear_form(&ring, &mut rng)).collect();
        if !all_subsets_independent(&field, &coeffs, n + 1) {
            continue;
        }
        let forms: Vec<Polynomial<F>> = coeffs
            .iter()
            .map(|c| ring.from_terms(c.iter().enumerate().map(|(i, x)| (Monomial::var(i), x.clone())).collect()))
            .collect();
        let f = forms.iter().fold(ring.one(), |acc, l| &acc * l);
        return Ok(Arrangement { f, forms });
    }
    Err(Error::Genericity(format!("no generic arrangement after {MAX_RESAMPLES} samples")))
}

/// `det A_n` (generic) or `det B_n` (symmetric) with the ideal of
/// submaximal minors.
#[derive(Clone, Debug)]
pub struct Determinantal<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub matrix: Vec<Vec<Polynomial<F>>>,
    pub f: Polynomial<F>,
    pub minors: Ideal<F>,
}

/// Largest `n` built without `allow_large`.
pub const DETERMINANTAL_DEFAULT_CAP: usize = 3;

pub fn generic_determinantal<F: Field>(field: F, n: usize, symmetric: bool, allow_large: bool) -> Result<Determinantal<F>> {
    if n < 2 {
        return Err(Error::InvalidInput("matrix size must be at least 2".into()));
    }
    if n > DETERMINANTAL_DEFAULT_CAP && !allow_large {
        return Err(Error::InvalidInput(format!("n = {n} exceeds the default cap {DETERMINANTAL_DEFAULT_CAP}")));
    }
    let nvars = if symmetric { n * (n + 1) / 2 } else { n * n };
    if nvars > crate::polyring::MAX_VARS {
        return Err(Error::InvalidInput(format!("{nvars} variables exceed the supported {}", crate::polyring::MAX_VARS)));
    }
    if symmetric && field.characteristic() == 2 {
        return Err(Error::Characteristic { characteristic: 2, degree: n as u32 });
    }
    let ring = Ring::new(field, nvars);
    // symmetric entries (i, j), i <= j, numbered row by row
    let index = |i: usize, j: usize| -> usize {
        if !symmetric {
            return i * n + j;
        }
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        a * n - a * (a + 1) / 2 + b
    };
    let matrix: Vec<Vec<Polynomial<F>>> = (0..n).map(|i| (0..n).map(|j| ring.var(index(i, j))).collect()).collect();
    let f = determinant(&matrix);
    let mut minors = Vec::new();
    for skip_r in 0..n {
        for skip_c in 0..n {
            let sub: Vec<Vec<Polynomial<F>>> = (0..n)
                .filter(|&r| r != skip_r)
                .map(|r| (0..n).filter(|&c| c != skip_c).map(|c| matrix[r][c].clone()).collect())
                .collect();
            minors.push(determinant(&sub));
        }
    }
    let minors = Ideal::new(&ring, minors);
    Ok(Determinantal { ring, matrix, f, minors })
}

/// A union of surfaces `V(f_1) ∪ ... ∪ V(f_r)` in `P^3` with the data of
/// the codimension-two ideal `I = (g_1, ..., g_r)`, `g_i = f / f_i`.
#[derive(Clone, Debug)]
pub struct SurfaceArrangement<F: Field> {
    pub f: Polynomial<F>,
    pub components: Vec<Polynomial<F>>,
    pub g: Vec<Polynomial<F>>,
    pub ideal: Ideal<F>,
    /// `r × (r-1)` bidiagonal: `psi[i][i] = f_i`, `psi[i+1][i] = -f_{i+1}`
    /// (zero-based).
    pub psi: Vec<Vec<Polynomial<F>>>,
    /// `r × 4` Jacobian matrix of the components.
    pub h: Vec<Vec<Polynomial<F>>>,
}

pub fn surface_arrangement<F: Field>(components: Vec<Polynomial<F>>) -> Result<SurfaceArrangement<F>> {
    let Some(first) = components.first() else {
        return Err(Error::InvalidInput("no components".into()));
    };
    let ring = first.ring().clone();
    if ring.nvars() != 4 {
        return Err(Error::InvalidInput("surfaces live in four variables".into()));
    }
    let mut total = 0;
    for c in &components {
        if **c.ring() != *ring {
            return Err(Error::RingMismatch);
        }
        total += c.homogeneous_degree().filter(|&d| d > 0).ok_or_else(|| Error::NotHomogeneous(c.to_string()))?;
    }
    if total < 2 {
        return Err(Error::InvalidInput("total degree must be at least 2".into()));
    }
    for a in 0..components.len() {
        for b in a + 1..components.len() {
            if !gcd(&components[a], &components[b]).is_constant() {
                return Err(Error::InvalidInput(format!("components {a} and {b} share a factor; the product is not reduced")));
            }
        }
    }
    let f = components.iter().fold(ring.one(), |acc, c| &acc * c);
    let g: Vec<Polynomial<F>> = components.iter().map(|c| f.div_exact(c).expect("component divides the product")).collect();
    let r = components.len();
    let psi = (0..r)
        .map(|i| {
            (0..r.saturating_sub(1))
                .map(|j| {
                    if i == j {
                        components[i].clone()
                    } else if i == j + 1 {
                        -&components[i]
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    let h = components.iter().map(|c| (0..4).map(|j| c.partial_derivative(j)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&ring, g.clone());
    Ok(SurfaceArrangement { f, components, g, ideal, psi, h })
}

impl<F: Field> SurfaceArrangement<F> {
    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.homogeneous_degree().unwrap()).collect()
    }

    /// `(∂_0 f, ..., ∂_3 f) = (g_1, ..., g_r) · H` holds exactly.
    pub fn jacobian_factors(&self) -> bool {
        (0..4).all(|j| {
            let rhs = self.g.iter().zip(&self.h).fold(self.f.ring().zero(), |acc, (g, row)| &acc + &(g * &row[j]));
            self.f.partial_derivative(j).map(|p| p == rhs).unwrap_or(false)
        })
    }

    /// The maximal minors of `Ψ` are `±g_i`.
    pub fn psi_minors_match(&self) -> bool {
        let r = self.components.len();
        if r == 1 {
            return self.g[0].is_constant();
        }
        (0..r).all(|skip| {
            let sub: Vec<Vec<Polynomial<F>>> = (0..r).filter(|&i| i != skip).map(|i| self.psi[i].clone()).collect();
            let m = determinant(&sub);
            m == self.g[skip] || m == -&self.g[skip]
        })
    }

    /// Krull dimension of `S / (J_f : I)`; at most one means a finite
    /// (possibly empty) subscheme of `P^3`.
    pub fn colon_dimension(&self) -> Result<usize> {
        let j = jacobian_ideal(&self.f)?;
        let c = colon_ideal(&j, &self.ideal);
        if c.is_unit() {
            return Ok(0);
        }
        Ok(hilbert_series_of_quotient(&c).dimension())
    }

    /// `J_f : m^∞ = I`, expected for smooth transverse components.
    pub fn saturation_is_ideal(&self) -> Result<bool> {
        let j = jacobian_ideal(&self.f)?;
        Ok(saturate_irrelevant(&j).same_ideal(&self.ideal))
    }
}

/// `x3 · (x0^d + x1^d + x2^d)`.
pub fn plane_and_cone<F: Field>(ring: &Arc<Ring<F>>, d: u16) -> Result<SurfaceArrangement<F>> {
    let f = ring.field();
    let f2 = ring.from_terms((0..3).map(|i| (Monomial::var_pow(i, d), f.one())).collect());
    surface_arrangement(vec![ring.var(3), f2])
}

/// `(x1^d + 2 x2^d + x3^d) · (x0^d + x1^d + x2^d)`.
pub fn two_cones<F: Field>(ring: &Arc<Ring<F>>, d: u16) -> Result<SurfaceArrangement<F>> {
    let f = ring.field();
    let f1 = ring.from_terms(vec![
        (Monomial::var_pow(1, d), f.one()),
        (Monomial::var_pow(2, d), f.from_i64(2)),
        (Monomial::var_pow(3, d), f.one()),
    ]);
    let f2 = ring.from_terms((0..3).map(|i| (Monomial::var_pow(i, d), f.one())).collect());
    surface_arrangement(vec![f1, f2])
}

/// Dense random forms of the given degrees, each checked smooth by
/// saturation of its Jacobian ideal.
pub fn random_smooth_surfaces<F: Field>(ring: &Arc<Ring<F>>, degrees: &[u32], seed: u64) -> Result<Vec<Polynomial<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &d in degrees {
        let mut found = None;
        for _ in 0..MAX_RESAMPLES {
            let terms = monomials(ring.nvars(), d).into_iter().map(|m| (m, ring.field().random_nonzero(&mut rng))).collect();
            let p = ring.from_terms(terms);
            if d == 1 || saturate_irrelevant(&jacobian_ideal(&p)?).is_unit() {
                found = Some(p);
                break;
            }
        }
        out.push(found.ok_or_else(|| Error::Genericity(format!("no smooth surface of degree {d}")))?);
    }
    Ok(out)
}

fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    if nvars == 1 {
        return vec![Monomial::var_pow(0, d as u16)];
    }
    (0..=d)
        .flat_map(|a| monomials(nvars - 1, d - a).into_iter().map(move |m| m.mul(&Monomial::var_pow(nvars - 1, a as u16))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Freeness {
    Free { exponents: Vec<i64> },
    NearlyFree { exponents: Vec<i64> },
    Neither { reason: String },
}

/// Reads freeness off the minimal Betti table of `M(f)` for `f` of degree
/// `d` in `P^n`, `n = nvars - 1`. Partials that vanish or depend linearly on
/// the others give syzygies of degree zero, recorded as exponents `0`.
pub fn classify_free_nearly_free(table: &BettiTable, d: i64) -> Freeness {
    let n = table.nvars - 1;
    let degrees = |i: usize| -> Vec<i64> {
        table.entries.iter().filter(|((j, _), _)| *j == i).flat_map(|((_, deg), v)| std::iter::repeat_n(*deg, *v)).collect()
    };
    let neither = |reason: String| Freeness::Neither { reason };
    let pd = table.projective_dimension().unwrap_or(0);
    let f1 = degrees(1);
    if f1.is_empty() || f1.len() > n + 1 || f1.iter().any(|&x| x != d - 1) {
        return neither(format!("F1 is not generated in degree {}", d - 1));
    }
    let zeros = n + 1 - f1.len();
    let f2: Vec<i64> = degrees(2).into_iter().map(|x| x - (d - 1)).collect();
    let with_zeros = |mut ex: Vec<i64>| {
        let mut out = vec![0; zeros];
        out.append(&mut ex);
        out.sort();
        out
    };
    match pd {
        2 => {
            if f2.len() + zeros != n {
                return neither(format!("F2 has rank {} instead of {}", f2.len(), n - zeros));
            }
            let ex = with_zeros(f2);
            if ex.iter().sum::<i64>() != d - 1 {
                return neither("exponents do not sum to d-1".into());
            }
            Freeness::Free { exponents: ex }
        }
        3 => {
            let f3 = degrees(3);
            if f2.len() + zeros != n + 1 || f3.len() != 1 {
                return neither("ranks do not match the nearly free shape".into());
            }
            let dn = *f2.iter().max().unwrap();
            if f3[0] != dn + d {
                return neither(format!("F3 is S(-{}) rather than S(-{})", f3[0], dn + d));
            }
            let mut ex = f2.clone();
            let pos = ex.iter().rposition(|&x| x == dn).unwrap();
            ex.remove(pos);
            let ex = with_zeros(ex);
            if ex.iter().sum::<i64>() != d {
                return neither("exponents do not sum to d".into());
            }
            Freeness::NearlyFree { exponents: ex }
        }
        p => neither(format!("projective dimension {p}")),
    }
}
