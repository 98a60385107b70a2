use std::sync::{Arc, OnceLock};

use super::engine::{cmp_leads, groebner_basis, reduce_full, Buchberger, LeadIndex};
use super::module::{FreeModule, Term, VecOps, Vector};
use crate::error::{Error, Result};
use crate::polyring::{Field, Monomial, MonomialOrder, Polynomial, Ring, RingExt, MAX_VARS};

/// A reduced Gröbner basis of an ideal, monic, sorted by increasing degree
/// then decreasing lead monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    module: FreeModule,
    vecs: Vec<Vector<F>>,
    elements: Vec<Polynomial<F>>,
    index: LeadIndex,
    complete: bool,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_vecs(ring: Arc<Ring<F>>, module: FreeModule, vecs: Vec<Vector<F>>, complete: bool) -> Self {
        let elements = vecs.iter().map(|v| vec_to_poly(&ring, v)).collect();
        let mut index = LeadIndex::new(1);
        for (k, v) in vecs.iter().enumerate() {
            index.insert(&v[0].0, k);
        }
        GroebnerBasis { ring, module, vecs, elements, index, complete }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.module.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Lead monomials with respect to the basis order.
    pub fn leads(&self) -> Vec<Monomial> {
        self.vecs.iter().map(|v| v[0].0.mono).collect()
    }

    /// `false` if the computation stopped at a degree cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_unit(&self) -> bool {
        self.vecs.len() == 1 && self.vecs[0][0].0.mono.is_one()
    }

    /// Unique remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if **p.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        let ops = VecOps::new(self.ring.field(), &self.module);
        let v = poly_to_vec(&ops, p);
        Ok(vec_to_poly(&self.ring, &reduce_full(&ops, &self.index, &self.vecs, v)))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Buchberger's criterion checked directly: every S-polynomial reduces
    /// to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let ops = VecOps::new(self.ring.field(), &self.module);
        let one = self.ring.field().one();
        for i in 0..self.vecs.len() {
            for j in i + 1..self.vecs.len() {
                let (a, b) = (&self.vecs[i], &self.vecs[j]);
                let l = a[0].0.mono.lcm(&b[0].0.mono);
                let qa = a[0].0.mono.quotient_of(&l).unwrap();
                let qb = b[0].0.mono.quotient_of(&l).unwrap();
                let s = ops.sub_mul(&ops.mul_term(a, &qa, &one), &one, &qb, b);
                if !reduce_full(&ops, &self.index, &self.vecs, s).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// The monomial ideal of lead terms.
    pub fn lead_ideal(&self) -> Ideal<F> {
        let f = self.ring.field();
        Ideal::new(&self.ring, self.leads().into_iter().map(|m| self.ring.monomial(m, f.one())).collect())
    }
}

pub(crate) fn poly_to_vec<F: Field>(ops: &VecOps<F>, p: &Polynomial<F>) -> Vector<F> {
    let terms = p.terms().iter().map(|(m, c)| (Term::scalar(*m), c.clone())).collect();
    if ops.module.order == MonomialOrder::Grevlex {
        terms
    } else {
        ops.normalize(terms)
    }
}

pub(crate) fn vec_to_poly<F: Field>(ring: &Arc<Ring<F>>, v: &[(Term, F::Elem)]) -> Polynomial<F> {
    ring.from_terms(v.iter().map(|(t, c)| (t.mono, c.clone())).collect())
}

/// An ideal given by generators, with a lazily computed grevlex basis.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Ideal<F> {
        assert!(gens.iter().all(|g| **g.ring() == **ring), "generator from another ring");
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    fn with_basis(ring: &Arc<Ring<F>>, gb: GroebnerBasis<F>) -> Ideal<F> {
        let ideal = Ideal::new(ring, gb.elements.clone());
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Ideal<F> {
        Ideal::new(ring, vec![ring.one()])
    }

    /// The irrelevant ideal `(x_0, ..., x_n)`.
    pub fn irrelevant(ring: &Arc<Ring<F>>) -> Ideal<F> {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// The reduced grevlex Gröbner basis, computed once.
    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        self.gb.get_or_init(|| buchberger(self, MonomialOrder::Grevlex))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        self.groebner_basis().contains(p)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g).unwrap_or(false))
    }

    /// Equality as ideals (equal reduced bases).
    pub fn same_ideal(&self, other: &Ideal<F>) -> bool {
        self.groebner_basis().elements() == other.groebner_basis().elements()
    }
}

/// Reduced Gröbner basis for `order`.
pub fn buchberger<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> GroebnerBasis<F> {
    buchberger_capped(ideal, order, None)
}

/// As [`buchberger`], stopping after sugar degree `cap`.
pub fn buchberger_capped<F: Field>(ideal: &Ideal<F>, order: MonomialOrder, cap: Option<i64>) -> GroebnerBasis<F> {
    let module = FreeModule::ring(order);
    let field = ideal.ring.field();
    let ops = VecOps::new(field, &module);
    let gens = ideal.gens.iter().map(|g| poly_to_vec(&ops, g)).collect();
    let (vecs, complete) = groebner_basis(field, &module, gens, cap);
    GroebnerBasis::from_vecs(ideal.ring.clone(), module, vecs, complete)
}

pub fn normal_form<F: Field>(p: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    gb.normal_form(p)
}

pub fn lead_ideal<F: Field>(gb: &GroebnerBasis<F>) -> Ideal<F> {
    gb.lead_ideal()
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Ideal<F> {
    let ring = &i.ring;
    assert!(*ring == j.ring, "intersection of ideals in different rings");
    if i.is_zero() || j.is_zero() {
        return Ideal::new(ring, vec![]);
    }
    let n = ring.nvars();
    assert!(n < MAX_VARS, "no room for an elimination variable");
    let ext = Ring::new(ring.field().clone(), n + 1);
    let up: Vec<usize> = (1..=n).collect();
    let t = ext.var(0);
    let one_minus_t = &ext.one() - &t;
    let mut gens = Vec::new();
    for g in i.groebner_basis().elements() {
        gens.push(&t * &g.remap(&ext, &up));
    }
    for g in j.groebner_basis().elements() {
        gens.push(&one_minus_t * &g.remap(&ext, &up));
    }
    let mut module = FreeModule::ring(MonomialOrder::Elimination { block: 1 });
    module.weights[0] = 0;
    let field = ring.field();
    let ops = VecOps::new(field, &module);
    let vecs = gens.iter().map(|g| poly_to_vec(&ops, g)).collect();
    let (basis, _) = groebner_basis(field, &module, vecs, None);
    let mut down = vec![0usize];
    down.extend(0..n);
    let kept: Vec<Vector<F>> = basis
        .into_iter()
        .filter(|v| v[0].0.mono.exp(0) == 0)
        .map(|v| v.into_iter().map(|(t, c)| (Term::scalar(t.mono.remap(&down)), c)).collect())
        .collect();
    // the surviving elements already form the reduced grevlex basis
    let gmod = FreeModule::ring(MonomialOrder::Grevlex);
    let gops = VecOps::new(field, &gmod);
    let mut kept: Vec<Vector<F>> = kept.into_iter().map(|v| gops.normalize(v)).collect();
    kept.sort_by(|a, b| cmp_leads::<F>(&gmod, a, b));
    Ideal::with_basis(ring, GroebnerBasis::from_vecs(ring.clone(), gmod, kept, true))
}

/// `(I : g) = (I ∩ (g)) / g`.
pub fn colon_by_poly<F: Field>(i: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if **g.ring() != *i.ring {
        return Err(Error::RingMismatch);
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    let meet = intersect(i, &Ideal::new(&i.ring, vec![g.clone()]));
    let gens = meet
        .groebner_basis()
        .elements()
        .iter()
        .map(|h| h.div_exact(g).expect("element of (g) is divisible by g"))
        .collect();
    Ok(Ideal::new(&i.ring, gens))
}

/// `(I : J)` as the intersection of `(I : g)` over the generators of `J`.
pub fn colon_ideal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Ideal<F> {
    let mut acc: Option<Ideal<F>> = None;
    for g in j.groebner_basis().elements() {
        let q = colon_by_poly(i, g).expect("nonzero generator");
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(&i.ring))
}

/// `(I : m^∞)` as the stable value of `I ⊆ (I : m) ⊆ (I : m^2) ⊆ ...`.
pub fn saturate_irrelevant<F: Field>(i: &Ideal<F>) -> Ideal<F> {
    let m = Ideal::irrelevant(&i.ring);
    let mut cur = i.clone();
    loop {
        if cur.is_unit() {
            return cur;
        }
        let next = colon_ideal(&cur, &m);
        if next.same_ideal(&cur) {
            return next;
        }
        cur = next;
    }
}

/// Greatest common divisor (up to a scalar) via `lcm = (f) ∩ (g)`.
pub fn gcd<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let ring = f.ring();
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let meet = intersect(&Ideal::new(ring, vec![f.clone()]), &Ideal::new(ring, vec![g.clone()]));
    let lcm = &meet.groebner_basis().elements()[0];
    (f * g).div_exact(lcm).expect("lcm divides the product").monic()
}

/// A minimal generating set of a homogeneous module, chosen greedily in
/// increasing degree (input order within a degree).
pub fn minimal_generators_vec<F: Field>(field: &F, module: &FreeModule, gens: Vec<Vector<F>>) -> Vec<Vector<F>> {
    let ops = VecOps::new(field, module);
    let mut sorted: Vec<(i64, usize, Vector<F>)> = gens
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(k, v)| (ops.sugar(&v), k, v))
        .collect();
    sorted.sort_by_key(|(d, k, _)| (*d, *k));
    let mut bb = Buchberger::new(field.clone(), module.clone());
    let mut kept = Vec::new();
    for (d, _, v) in sorted {
        bb.run(Some(d));
        let nf = bb.normal_form(v.clone());
        if !nf.is_empty() {
            bb.insert_reduced(nf);
            kept.push(v);
        }
    }
    kept
}

/// A minimal homogeneous generating set of an ideal.
pub fn minimal_generators<F: Field>(ideal: &Ideal<F>) -> Vec<Polynomial<F>> {
    let module = FreeModule::ring(MonomialOrder::Grevlex);
    let field = ideal.ring.field();
    let ops = VecOps::new(field, &module);
    let gens = ideal.gens.iter().map(|g| poly_to_vec(&ops, g)).collect();
    minimal_generators_vec(field, &module, gens).iter().map(|v| vec_to_poly(&ideal.ring, v)).collect()
}
