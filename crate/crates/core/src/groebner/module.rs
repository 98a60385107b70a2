//! Free modules over the polynomial ring with module term orders, and sparse
//! vectors in them.

use std::cmp::Ordering;

use crate::polyring::{Field, Monomial, MonomialOrder, MAX_VARS};

/// A module term `m e_comp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub comp: u32,
}

impl Term {
    pub fn new(mono: Monomial, comp: u32) -> Term {
        Term { mono, comp }
    }

    pub fn scalar(mono: Monomial) -> Term {
        Term { mono, comp: 0 }
    }
}

/// Ordering data of one basis vector `e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompInfo {
    /// Schreyer monomial: `m e_c` is compared as `m * mono`.
    pub mono: Monomial,
    /// Degree of `e_c`.
    pub degree: i32,
    /// Tie-break: smaller rank is bigger.
    pub rank: u32,
    /// Position-over-term block: lower block is bigger.
    pub block: u32,
}

impl CompInfo {
    pub fn plain(degree: i32, rank: u32) -> CompInfo {
        CompInfo { mono: Monomial::ONE, degree, rank, block: 0 }
    }
}

/// A free module `⊕ S(-degree_c)` with a term order.
///
/// Terms are compared by block, then (for graded orders) by degree, then by
/// the monomial order on `m * mono_c`, then by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub order: MonomialOrder,
    /// Variable weights used for sugar degrees.
    pub weights: [u32; MAX_VARS],
    pub comps: Vec<CompInfo>,
}

impl FreeModule {
    /// The ring itself as a rank one module.
    pub fn ring(order: MonomialOrder) -> FreeModule {
        FreeModule { order, weights: [1; MAX_VARS], comps: vec![CompInfo::plain(0, 0)] }
    }

    /// `⊕ S(-degrees[c])` ordered by degree, then monomial, then position.
    pub fn graded(order: MonomialOrder, degrees: &[i32]) -> FreeModule {
        let comps = degrees.iter().enumerate().map(|(i, &d)| CompInfo::plain(d, i as u32)).collect();
        FreeModule { order, weights: [1; MAX_VARS], comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        if a.comp == b.comp {
            return self.order.cmp(&a.mono, &b.mono);
        }
        let ca = &self.comps[a.comp as usize];
        let cb = &self.comps[b.comp as usize];
        cb.block
            .cmp(&ca.block)
            .then_with(|| {
                if self.order.is_graded() {
                    (a.mono.degree() as i64 + ca.degree as i64).cmp(&(b.mono.degree() as i64 + cb.degree as i64))
                } else {
                    Ordering::Equal
                }
            })
            .then_with(|| {
                if ca.mono.is_one() && cb.mono.is_one() {
                    self.order.cmp(&a.mono, &b.mono)
                } else {
                    self.order.cmp(&a.mono.mul(&ca.mono), &b.mono.mul(&cb.mono))
                }
            })
            .then_with(|| cb.rank.cmp(&ca.rank))
    }

    /// Degree of a term in the standard grading.
    #[inline]
    pub fn degree(&self, t: &Term) -> i64 {
        t.mono.degree() as i64 + self.comps[t.comp as usize].degree as i64
    }

    /// Weighted degree of a monomial.
    #[inline]
    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        m.exps().iter().zip(self.weights.iter()).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    /// Weighted ("sugar") degree of a term.
    #[inline]
    pub fn sugar(&self, t: &Term) -> i64 {
        self.weighted_degree(&t.mono) + self.comps[t.comp as usize].degree as i64
    }
}

/// A sparse module element, terms strictly descending in the module order.
pub type Vector<F> = Vec<(Term, <F as Field>::Elem)>;

/// Arithmetic on vectors of one free module.
#[derive(Clone, Debug)]
pub struct VecOps<'a, F: Field> {
    pub field: &'a F,
    pub module: &'a FreeModule,
}

impl<'a, F: Field> VecOps<'a, F> {
    pub fn new(field: &'a F, module: &'a FreeModule) -> Self {
        VecOps { field, module }
    }

    /// Sorts and merges an unsorted term list.
    pub fn normalize(&self, mut v: Vec<(Term, F::Elem)>) -> Vector<F> {
        v.sort_by(|a, b| self.module.cmp(&b.0, &a.0));
        let mut out: Vector<F> = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == t => last.1 = self.field.add(&last.1, &c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        out
    }

    /// `a - c * m * b`.
    pub fn sub_mul(&self, a: &[(Term, F::Elem)], c: &F::Elem, m: &Monomial, b: &[(Term, F::Elem)]) -> Vector<F> {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term { mono: t.mono.mul(m), comp: t.comp };
        let mut pending: Option<Term> = b.first().map(|(t, _)| shifted(t));
        while i < a.len() {
            let Some(tb) = pending else { break };
            match self.module.cmp(&a[i].0, &tb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb, f.neg(&f.mul(c, &b[j].1))));
                    j += 1;
                    pending = b.get(j).map(|(t, _)| shifted(t));
                }
                Ordering::Equal => {
                    let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
                    if !f.is_zero(&v) {
                        out.push((tb, v));
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(|(t, _)| shifted(t));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push((shifted(&b[j].0), f.neg(&f.mul(c, &b[j].1))));
            j += 1;
        }
        out
    }

    pub fn add(&self, a: &[(Term, F::Elem)], b: &[(Term, F::Elem)]) -> Vector<F> {
        let minus_one = self.field.neg(&self.field.one());
        self.sub_mul(a, &minus_one, &Monomial::ONE, b)
    }

    pub fn scale(&self, a: &[(Term, F::Elem)], c: &F::Elem) -> Vector<F> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        a.iter().map(|(t, x)| (*t, self.field.mul(x, c))).collect()
    }

    pub fn mul_term(&self, a: &[(Term, F::Elem)], m: &Monomial, c: &F::Elem) -> Vector<F> {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        a.iter().map(|(t, x)| (Term::new(t.mono.mul(m), t.comp), self.field.mul(x, c))).collect()
    }

    pub fn monic(&self, a: &[(Term, F::Elem)]) -> Vector<F> {
        match a.first() {
            None => Vec::new(),
            Some((_, c)) if self.field.is_one(c) => a.to_vec(),
            Some((_, c)) => self.scale(a, &self.field.inv(c)),
        }
    }

    /// Whether every term has the same degree; returns it.
    pub fn homogeneous_degree(&self, a: &[(Term, F::Elem)]) -> Option<i64> {
        let d = self.module.degree(&a.first()?.0);
        a.iter().all(|(t, _)| self.module.degree(t) == d).then_some(d)
    }

    pub fn sugar(&self, a: &[(Term, F::Elem)]) -> i64 {
        a.iter().map(|(t, _)| self.module.sugar(t)).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    #[test]
    fn schreyer_comparison() {
        // e0 carries x0^2, e1 carries x1^2: x1^2 e0 = x0^2 x1^2 = x0^2 e1 as
        // products, so rank decides
        let mut m = FreeModule::graded(MonomialOrder::Grevlex, &[2, 2]);
        m.comps[0].mono = Monomial::new(&[2]);
        m.comps[1].mono = Monomial::new(&[0, 2]);
        let a = Term::new(Monomial::new(&[0, 2]), 0);
        let b = Term::new(Monomial::new(&[2]), 1);
        assert_eq!(m.cmp(&a, &b), Ordering::Greater);
        m.comps[0].rank = 5;
        assert_eq!(m.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn sub_mul_cancels() {
        let f = PrimeField::default();
        let m = FreeModule::ring(MonomialOrder::Grevlex);
        let ops = VecOps::new(&f, &m);
        let x = |e: &[u16]| Term::scalar(Monomial::new(e));
        let a = ops.normalize(vec![(x(&[2]), 1), (x(&[1, 1]), 3)]);
        let b = ops.normalize(vec![(x(&[1]), 1), (x(&[0, 1]), 3)]);
        assert!(ops.sub_mul(&a, &1, &Monomial::var(0), &b).is_empty());
    }
}
