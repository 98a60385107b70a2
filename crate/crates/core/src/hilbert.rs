//! Hilbert series, functions and polynomials of graded quotients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::groebner::Ideal;
use crate::polyring::{Field, Monomial};

/// `N(t) / (1-t)^ambient_vars`, with integer numerator coefficients
/// (index = power of `t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeriesData {
    pub numerator: Vec<i64>,
    pub ambient_vars: usize,
    /// Numerator in `(t1, t2)` for bigraded data: `((a, b), coefficient)`.
    pub bigraded_numerator: Option<Vec<((i64, i64), i64)>>,
}

impl HilbertSeriesData {
    pub fn new(mut numerator: Vec<i64>, ambient_vars: usize) -> HilbertSeriesData {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        HilbertSeriesData { numerator, ambient_vars, bigraded_numerator: None }
    }

    /// Builds the numerator from `(degree, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>, ambient_vars: usize) -> HilbertSeriesData {
        let mut num: Vec<i64> = Vec::new();
        for (d, c) in terms {
            assert!(d >= 0, "negative degree in a Hilbert numerator");
            let d = d as usize;
            if num.len() <= d {
                num.resize(d + 1, 0);
            }
            num[d] += c;
        }
        HilbertSeriesData::new(num, ambient_vars)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// `Q(t)` and `c` with `N(t) = (1-t)^(n-c) Q(t)`, `Q(1) != 0`; `c` is the
    /// Krull dimension.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut q = self.numerator.clone();
        let mut c = self.ambient_vars;
        while c > 0 && !q.is_empty() && q.iter().sum::<i64>() == 0 {
            // divide by (1 - t): synthetic division
            let mut out = vec![0i64; q.len() - 1];
            let mut acc = 0i64;
            for i in 0..q.len() - 1 {
                acc += q[i];
                out[i] = acc;
            }
            q = out;
            c -= 1;
        }
        (q, c)
    }

    /// Krull dimension of the module.
    pub fn dimension(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.reduced().1
        }
    }

    /// Coefficient of `t^k` in the series.
    pub fn hilbert_function_at(&self, k: i64) -> i64 {
        if k < 0 {
            return 0;
        }
        let n = self.ambient_vars as i64;
        let mut total: i128 = 0;
        for (j, &nj) in self.numerator.iter().enumerate() {
            let m = k - j as i64;
            if m < 0 {
                break;
            }
            total += nj as i128 * binomial_i128(m + n - 1, n - 1);
        }
        i64::try_from(total).expect("Hilbert function value fits in i64")
    }

    pub fn hilbert_function(&self, range: std::ops::Range<i64>) -> Vec<i64> {
        range.map(|k| self.hilbert_function_at(k)).collect()
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomialData {
        hilbert_polynomial(self)
    }

    pub fn stability_threshold(&self) -> Option<i64> {
        stability_threshold(self)
    }
}

fn binomial_i128(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return if k == 0 { 1 } else { 0 };
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// The polynomial `C(x, r) = x (x-1) ... (x-r+1) / r!` evaluated at any
/// integer `x`.
fn binomial_poly_at(x: i64, r: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= BigInt::from(x - i as i64);
        den *= BigInt::from(i as i64 + 1);
    }
    BigRational::new(num, den)
}

/// Exact Hilbert polynomial in the Newton basis `Σ b_i C(k, i)` and in the
/// monomial basis `Σ a_i k^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomialData {
    pub binomial: Vec<BigRational>,
    pub monomial: Vec<BigRational>,
}

impl HilbertPolynomialData {
    pub fn evaluate(&self, k: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        let mut acc = BigRational::zero();
        for c in self.monomial.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.monomial.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.monomial.len().checked_sub(1)
    }

    /// Monomial coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.monomial.iter().map(|c| if c.is_integer() { i64::try_from(c.numer()).ok() } else { None }).collect()
    }

    /// Human-readable form in `k`, highest power first.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.monomial.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            match i {
                0 => out.push_str(&coeff),
                _ => {
                    if !a.is_one() {
                        out.push_str(&coeff);
                        out.push('*');
                    }
                    out.push('k');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

fn rat_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Serialize for HilbertPolynomialData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HilbertPolynomialData", 3)?;
        st.serialize_field("binomial", &self.binomial.iter().map(rat_str).collect::<Vec<_>>())?;
        st.serialize_field("monomial", &self.monomial.iter().map(rat_str).collect::<Vec<_>>())?;
        st.serialize_field("text", &self.display())?;
        st.end()
    }
}

/// Hilbert polynomial from the reduced numerator.
pub fn hilbert_polynomial(h: &HilbertSeriesData) -> HilbertPolynomialData {
    if h.is_zero() {
        return HilbertPolynomialData { binomial: vec![], monomial: vec![] };
    }
    let (q, c) = h.reduced();
    if c == 0 {
        return HilbertPolynomialData { binomial: vec![], monomial: vec![] };
    }
    // P(k) = Σ_j q_j C(k - j + c - 1, c - 1) as a polynomial identity
    let value = |k: i64| -> BigRational {
        q.iter()
            .enumerate()
            .map(|(j, &qj)| BigRational::from_integer(BigInt::from(qj)) * binomial_poly_at(k - j as i64 + c as i64 - 1, c - 1))
            .fold(BigRational::zero(), |a, b| a + b)
    };
    // Newton coefficients from forward differences at 0..c
    let mut diffs: Vec<BigRational> = (0..c as i64).map(value).collect();
    let mut binomial = Vec::with_capacity(c);
    for _ in 0..c {
        binomial.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // expand Σ b_i C(k, i) into powers of k
    let mut monomial = vec![BigRational::zero(); c];
    for (i, b) in binomial.iter().enumerate() {
        // C(k, i) = Π_{s<i} (k - s) / i!
        let mut poly = vec![BigRational::one()];
        for s in 0..i {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (e, a) in poly.iter().enumerate() {
                next[e + 1] += a;
                next[e] -= a * BigRational::from_integer(BigInt::from(s as i64));
            }
            poly = next;
        }
        let fact: BigInt = (1..=i as i64).map(BigInt::from).product();
        for (e, a) in poly.iter().enumerate() {
            monomial[e] += b * a / BigRational::from_integer(fact.clone());
        }
    }
    while monomial.last().is_some_and(|c| c.is_zero()) {
        monomial.pop();
    }
    while binomial.last().is_some_and(|c| c.is_zero()) {
        binomial.pop();
    }
    HilbertPolynomialData { binomial, monomial }
}

/// Least `q` with `H(k) = P(k)` for all `k >= q`; `None` for the zero
/// module. Scans downward from the degree of the reduced numerator, where
/// agreement is guaranteed, and continues below zero (where `H = 0`) until
/// the first disagreement.
pub fn stability_threshold(h: &HilbertSeriesData) -> Option<i64> {
    if h.is_zero() {
        return None;
    }
    let hp = hilbert_polynomial(h);
    let (q, c) = h.reduced();
    let mut k = q.len() as i64 - 1 - c as i64;
    loop {
        let hv = BigRational::from_integer(BigInt::from(h.hilbert_function_at(k)));
        if hv != hp.evaluate(k) {
            return Some(k + 1);
        }
        k -= 1;
    }
}

/// Numerator of `S/M` for a monomial ideal `M` in `nvars` variables, by the
/// pivot recursion `N(M) = N(M + (p)) + t^deg(p) N(M : p)`.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> HilbertSeriesData {
    let gens = minimalize(gens.to_vec());
    HilbertSeriesData::new(numerator_rec(gens), nvars)
}

/// Hilbert series of `S/I` via the lead ideal of the grevlex basis.
pub fn hilbert_series_of_quotient<F: Field>(ideal: &Ideal<F>) -> HilbertSeriesData {
    let leads = ideal.groebner_basis().leads();
    hilbert_numerator(&leads, ideal.ring().nvars())
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.grevlex_cmp(a)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // pairwise coprime generators (in particular pure powers): product formula
    let mut used = 0u32;
    let mut coprime = true;
    for g in &gens {
        let m = g.support_mask();
        if m & used != 0 {
            coprime = false;
            break;
        }
        used |= m;
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // most frequent variable, ties to the lowest index
    let mut counts = [0usize; crate::polyring::MAX_VARS];
    for g in &gens {
        for (i, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..counts.len()).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var_pow(var, e);

    let mut plus = gens.clone();
    plus.push(pivot);
    let left = numerator_rec(minimalize(plus));
    let colon: Vec<Monomial> = gens.iter().map(|g| pivot.gcd(g).quotient_of(g).unwrap()).collect();
    let right = numerator_rec(minimalize(colon));
    let mut out = left;
    poly_add_shifted(&mut out, &right, e as usize);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// JSON fragment `{"hf_samples": [...], "hp": {...}, "st": q}`.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub hf_samples: Vec<i64>,
    pub hp: HilbertPolynomialData,
    pub st: Option<i64>,
}

impl HilbertReport {
    /// Samples `H(0..samples)`.
    pub fn new(h: &HilbertSeriesData, samples: usize) -> HilbertReport {
        HilbertReport { hf_samples: h.hilbert_function(0..samples as i64), hp: hilbert_polynomial(h), st: stability_threshold(h) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn numerators() {
        assert_eq!(hilbert_numerator(&[m(&[1]), m(&[0, 1])], 4).numerator, vec![1, -2, 1]);
        let ci = hilbert_numerator(&[m(&[2]), m(&[0, 2]), m(&[0, 0, 2]), m(&[0, 0, 0, 2])], 4);
        assert_eq!(ci.numerator, vec![1, 0, -4, 0, 6, 0, -4, 0, 1]);
        assert_eq!(ci.hilbert_function(0..6), vec![1, 4, 6, 4, 1, 0]);
    }

    #[test]
    fn polynomial_and_threshold() {
        let h = hilbert_numerator(&[m(&[1]), m(&[0, 1])], 4);
        let hp = h.hilbert_polynomial();
        assert_eq!(hp.integer_coefficients(), Some(vec![1, 1]));
        assert_eq!(hp.display(), "k + 1");
        // S/(x0, x1) agrees with k + 1 from k = -1 on
        assert_eq!(h.stability_threshold(), Some(-1));
        let x0 = hilbert_numerator(&[m(&[1])], 4);
        assert_eq!(x0.stability_threshold(), Some(-2));
        let ci = hilbert_numerator(&[m(&[2]), m(&[0, 2]), m(&[0, 0, 2]), m(&[0, 0, 0, 2])], 4);
        assert!(ci.hilbert_polynomial().is_zero());
        assert_eq!(ci.stability_threshold(), Some(5));
        assert_eq!(hilbert_numerator(&[Monomial::ONE], 4).stability_threshold(), None);
    }
}
