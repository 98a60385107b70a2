use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec};
use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// How the variables of a ring are graded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Grading {
    #[default]
    Standard,
    /// Variables `0..split` have bidegree `(1,0)`, the rest `(0,1)`.
    Bigraded { split: usize },
}

/// A polynomial ring `k[x_0..x_{n-1}]` over a coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    nvars: usize,
    grading: Grading,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, nvars: usize) -> Arc<Ring<F>> {
        Ring::with_grading(field, nvars, Grading::Standard)
    }

    pub fn with_grading(field: F, nvars: usize, grading: Grading) -> Arc<Ring<F>> {
        assert!((1..=MAX_VARS).contains(&nvars), "variable count {nvars} out of range");
        if let Grading::Bigraded { split } = grading {
            assert!(split <= nvars, "block split {split} beyond {nvars} variables");
        }
        Arc::new(Ring { field, nvars, grading })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field.spec()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{i}")
    }
}

/// Convenience constructors that need the shared ring handle.
pub trait RingExt<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn var(&self, i: usize) -> Polynomial<F>;
    fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F>;
    fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F>;
    fn from_int_terms(&self, terms: &[(i64, &[u16])]) -> Polynomial<F>;
}

impl<F: Field> RingExt<F> for Arc<Ring<F>> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }
    fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }
    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.monomial(Monomial::ONE, c)
    }
    fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars, "variable x{i} not in ring with {} variables", self.nvars);
        self.monomial(Monomial::var(i), self.field.one())
    }
    fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial { ring: self.clone(), terms: vec![(m, c)] }
    }
    fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        Polynomial::from_raw(self.clone(), terms)
    }
    fn from_int_terms(&self, terms: &[(i64, &[u16])]) -> Polynomial<F> {
        let t = terms.iter().map(|(c, e)| (Monomial::new(e), self.field.from_i64(*c))).collect();
        self.from_terms(t)
    }
}

/// Failure modes of [`Polynomial::bidegree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BidegreeError {
    #[error("the zero polynomial has no bidegree")]
    Zero,
    #[error("the ring is not bigraded")]
    NotBigraded,
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
}

/// An exact polynomial; terms are stored strictly descending in grevlex
/// with nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    /// Sorts, merges equal monomials and drops zeros.
    pub fn from_raw(ring: Arc<Ring<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        let field = ring.field.clone();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.1) {
                out.pop();
            }
        }
        debug_assert!(out.iter().all(|(m, _)| (ring.nvars..MAX_VARS).all(|i| m.exp(i) == 0)));
        Polynomial { ring, terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The leading term in grevlex.
    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// The common total degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Bidegree `(a, b)` when every term has first-block degree `a` and
    /// second-block degree `b`.
    pub fn bidegree(&self) -> std::result::Result<(u32, u32), BidegreeError> {
        let Grading::Bigraded { split } = self.ring.grading else {
            return Err(BidegreeError::NotBigraded);
        };
        let n = self.ring.nvars;
        let bideg = |m: &Monomial| (m.partial_degree(0..split), m.partial_degree(split..n));
        let first = bideg(&self.terms.first().ok_or(BidegreeError::Zero)?.0);
        if self.terms.iter().all(|(m, _)| bideg(m) == first) {
            Ok(first)
        } else {
            Err(BidegreeError::NotBihomogeneous)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &F::Elem| if negate { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.grevlex_cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*mb, conv(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, conv(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    /// Exact product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let mut acc = std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                acc.entry(m).and_modify(|e| *e = f.add(e, &c)).or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        Ok(Polynomial::from_raw(self.ring.clone(), terms))
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = self.ring.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.ring.nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars: self.ring.nvars });
        }
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(i);
                let low = m.lower(i)?;
                Some((low, f.mul(c, &f.from_i64(e as i64))))
            })
            .filter(|(_, c)| !f.is_zero(c))
            .collect();
        // lowering one exponent keeps grevlex order among surviving terms
        Ok(Polynomial::from_raw(self.ring.clone(), terms))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = f.mul(&v, x);
                }
            }
            total = f.add(&total, &v);
        }
        total
    }

    /// Substitutes `x_i -> images[i]` (images live in the target ring).
    pub fn compose(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.ring.nvars, "one image per variable");
        let target = images[0].ring.clone();
        let mut total = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = &t * img;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Moves the polynomial into `target`, sending `x_i` to `x_{map[i]}`.
    pub fn remap(&self, target: &Arc<Ring<F>>, map: &[usize]) -> Polynomial<F> {
        assert_eq!(map.len(), self.ring.nvars);
        assert!(map.iter().all(|&j| j < target.nvars));
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect();
        Polynomial::from_raw(target.clone(), terms)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c)),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let f = self.field().clone();
        let (lm, lc) = divisor.terms.first()?.clone();
        let lc_inv = f.inv(&lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = f.mul(&c, &lc_inv);
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Polynomial::from_raw(self.ring.clone(), quot))
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }
}

/// A dense polynomial of bidegree `(k, m)` in `k[x0,x1][x2,x3]`: every
/// monomial `x0^a x1^(k-a) x2^c x3^(m-c)` appears with a coefficient drawn
/// uniformly from the nonzero field elements. Deterministic in `seed`.
pub fn random_bihomogeneous<F: Field>(ring: &Arc<Ring<F>>, k: u32, m: u32, seed: u64) -> Result<Polynomial<F>> {
    if ring.nvars() != 4 || ring.grading() != (Grading::Bigraded { split: 2 }) {
        return Err(Error::InvalidInput("random_bihomogeneous needs the bigraded ring k[x0,x1;x2,x3]".into()));
    }
    if k == 0 || m == 0 {
        return Err(Error::InvalidInput("bidegree components must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = ring.field();
    let mut terms = Vec::with_capacity(((k + 1) * (m + 1)) as usize);
    for a in (0..=k).rev() {
        for c in (0..=m).rev() {
            let mono = Monomial::new(&[a as u16, (k - a) as u16, c as u16, (m - c) as u16]);
            terms.push((mono, f.random_nonzero(&mut rng)));
        }
    }
    Ok(ring.from_terms(terms))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, multiply);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_polynomial(self))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};
    use crate::polyring::parse::parse_polynomial;
    use proptest::prelude::*;

    fn qq4() -> Arc<Ring<Rationals>> {
        Ring::new(Rationals, 4)
    }

    #[test]
    fn difference_of_squares() {
        let r = qq4();
        let p = parse_polynomial(&r, "x0+x1").unwrap();
        let q = parse_polynomial(&r, "x0-x1").unwrap();
        assert_eq!(&p * &q, parse_polynomial(&r, "x0^2-x1^2").unwrap());
        assert_eq!(&p * &r.one(), p);
        let x0 = r.var(0);
        assert_eq!(&x0.pow(5) * &x0, parse_polynomial(&r, "x0^6").unwrap());
    }

    #[test]
    fn partial_derivatives() {
        let r = qq4();
        let f = parse_polynomial(&r, "x0^3+x1^3").unwrap();
        assert_eq!(f.partial_derivative(0).unwrap(), parse_polynomial(&r, "3*x0^2").unwrap());
        let g = parse_polynomial(&r, "x0^3").unwrap();
        assert!(g.partial_derivative(2).unwrap().is_zero());
        assert!(matches!(g.partial_derivative(4), Err(Error::VariableOutOfRange { .. })));
    }

    #[test]
    fn bidegree_cases() {
        let r = Ring::with_grading(Rationals, 4, Grading::Bigraded { split: 2 });
        let p = parse_polynomial(&r, "x0*x2^3 + x1*x2*x3^2").unwrap();
        assert_eq!(p.bidegree(), Ok((1, 3)));
        let q = parse_polynomial(&r, "x0^2 + x2^2").unwrap();
        assert_eq!(q.bidegree(), Err(BidegreeError::NotBihomogeneous));
        assert_eq!(r.zero().bidegree(), Err(BidegreeError::Zero));
        assert_eq!(qq4().var(0).bidegree(), Err(BidegreeError::NotBigraded));
    }

    #[test]
    fn random_bihomogeneous_shape() {
        let r = Ring::with_grading(PrimeField::default(), 4, Grading::Bigraded { split: 2 });
        let f = random_bihomogeneous(&r, 1, 3, 7).unwrap();
        assert_eq!(f.len(), 8);
        assert_eq!(f.bidegree(), Ok((1, 3)));
        let g = random_bihomogeneous(&r, 6, 13, 7).unwrap();
        assert_eq!(g.len(), 98);
        assert_eq!(g.bidegree(), Ok((6, 13)));
        assert_eq!(g, random_bihomogeneous(&r, 6, 13, 7).unwrap());
        assert_ne!(g, random_bihomogeneous(&r, 6, 13, 8).unwrap());
        // partials drop one block degree
        assert_eq!(g.partial_derivative(0).unwrap().bidegree(), Ok((5, 13)));
        assert_eq!(g.partial_derivative(3).unwrap().bidegree(), Ok((6, 12)));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Ring::new(Rationals, 3).var(0);
        let b = qq4().var(0);
        assert_eq!(a.multiply(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = qq4();
        let p = parse_polynomial(&r, "x0^2-x1^2").unwrap();
        let d = parse_polynomial(&r, "x0-x1").unwrap();
        assert_eq!(p.div_exact(&d).unwrap(), parse_polynomial(&r, "x0+x1").unwrap());
        assert!(p.div_exact(&r.var(2)).is_none());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
        proptest::collection::vec((-5i64..5, proptest::collection::vec(0u16..3, 4)), 0..6)
    }

    fn build(r: &Arc<Ring<Rationals>>, t: &[(i64, Vec<u16>)]) -> Polynomial<Rationals> {
        let f = r.field();
        r.from_terms(t.iter().map(|(c, e)| (Monomial::new(e), f.from_i64(*c))).collect())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let r = qq4();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in small_poly(), b in small_poly(), i in 0usize..4) {
            let r = qq4();
            let (a, b) = (build(&r, &a), build(&r, &b));
            let d = |p: &Polynomial<Rationals>| p.partial_derivative(i).unwrap();
            prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
            prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
        }

        #[test]
        fn euler_relation(t in proptest::collection::vec((-5i64..5, 0u16..4, 0u16..4, 0u16..4), 1..6)) {
            // homogeneous of degree 9: pad the last exponent
            let r = qq4();
            let terms: Vec<(i64, Vec<u16>)> = t.iter().map(|&(c, a, b, e)| (c, vec![a, b, e, 9 - a - b - e])).collect();
            let p = build(&r, &terms);
            let mut lhs = r.zero();
            for i in 0..4 {
                lhs = &lhs + &(&r.var(i) * &p.partial_derivative(i).unwrap());
            }
            prop_assert_eq!(lhs, p.scale(&r.field().from_i64(9)));
        }
    }
}
