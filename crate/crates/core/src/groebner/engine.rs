//! Buchberger's algorithm for submodules of free modules, with the
//! Gebauer–Möller criteria and sugar-degree pair selection.

use std::cmp::Ordering;

use super::module::{FreeModule, Term, VecOps, Vector};
use crate::polyring::{Field, Monomial};

/// Lead-term index used to find reducers quickly.
#[derive(Clone, Debug, Default)]
pub struct LeadIndex {
    /// Per component: (lead monomial, support mask, element index).
    by_comp: Vec<Vec<(Monomial, u32, usize)>>,
}

impl LeadIndex {
    pub fn new(rank: usize) -> LeadIndex {
        LeadIndex { by_comp: vec![Vec::new(); rank] }
    }

    pub fn insert(&mut self, lead: &Term, index: usize) {
        let c = lead.comp as usize;
        if self.by_comp.len() <= c {
            self.by_comp.resize(c + 1, Vec::new());
        }
        self.by_comp[c].push((lead.mono, lead.mono.support_mask(), index));
    }

    /// First element (in insertion order) whose lead divides `t`.
    #[inline]
    pub fn find(&self, t: &Term) -> Option<(usize, Monomial)> {
        let list = self.by_comp.get(t.comp as usize)?;
        let mask = t.mono.support_mask();
        for (lead, lmask, idx) in list {
            if lmask & !mask == 0 {
                if let Some(q) = lead.quotient_of(&t.mono) {
                    return Some((*idx, q));
                }
            }
        }
        None
    }
}

/// Reduces `p` completely (lead and tail) by monic `basis` elements.
pub fn reduce_full<F: Field>(ops: &VecOps<F>, index: &LeadIndex, basis: &[Vector<F>], p: Vector<F>) -> Vector<F> {
    let mut p = p;
    let mut result: Vector<F> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (t, c) = &p[start];
        if let Some((k, q)) = index.find(t) {
            let g = &basis[k];
            let coef = ops.field.div(c, &g[0].1);
            p = ops.sub_mul(&p[start..], &coef, &q, g);
            start = 0;
        } else {
            result.push(p[start].clone());
            start += 1;
        }
    }
    result
}

/// Top-reduces `p` to zero, returning the quotients `(element, monomial,
/// coefficient)` with `p = Σ c m basis[element]`. Returns the nonzero
/// remainder as an error if `p` does not reduce to zero.
pub fn reduce_tracking<F: Field>(
    ops: &VecOps<F>,
    index: &LeadIndex,
    basis: &[Vector<F>],
    p: Vector<F>,
) -> Result<Vec<(usize, Monomial, F::Elem)>, Vector<F>> {
    let mut p = p;
    let mut quotients = Vec::new();
    while let Some((t, c)) = p.first() {
        let Some((k, q)) = index.find(t) else {
            return Err(p);
        };
        let g = &basis[k];
        let coef = ops.field.div(c, &g[0].1);
        p = ops.sub_mul(&p, &coef, &q, g);
        quotients.push((k, q, coef));
    }
    Ok(quotients)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    sugar: i64,
}

/// Incremental Buchberger state. Generators may be added at any time; the
/// computation proceeds in increasing sugar degree and may be stopped at a
/// degree cap, leaving a basis that is complete up to that degree.
#[derive(Clone, Debug)]
pub struct Buchberger<F: Field> {
    field: F,
    module: FreeModule,
    sugars: Vec<i64>,
    basis_vecs: Vec<Vector<F>>,
    active: Vec<bool>,
    index: LeadIndex,
    pairs: Vec<Pair>,
    pending: Vec<(i64, usize, Vector<F>)>,
    next_input: usize,
    product_criterion: bool,
    /// Largest sugar degree fully processed.
    done_through: Option<i64>,
}

impl<F: Field> Buchberger<F> {
    pub fn new(field: F, module: FreeModule) -> Buchberger<F> {
        let product_criterion = module.rank() == 1;
        let rank = module.rank();
        Buchberger {
            field,
            module,
            sugars: Vec::new(),
            basis_vecs: Vec::new(),
            active: Vec::new(),
            index: LeadIndex::new(rank),
            pairs: Vec::new(),
            pending: Vec::new(),
            next_input: 0,
            product_criterion,
            done_through: None,
        }
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Queues generators; zero vectors are ignored.
    pub fn add_generators(&mut self, gens: impl IntoIterator<Item = Vector<F>>) {
        let ops = VecOps::new(&self.field, &self.module);
        for g in gens {
            if g.is_empty() {
                continue;
            }
            let s = ops.sugar(&g);
            self.pending.push((s, self.next_input, g));
            self.next_input += 1;
        }
    }

    fn next_degree(&self) -> Option<i64> {
        let p = self.pairs.iter().map(|p| p.sugar).min();
        let g = self.pending.iter().map(|g| g.0).min();
        match (p, g) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Runs until no work of sugar at most `cap` remains. Returns `true` if
    /// the basis is complete (no work left at all).
    pub fn run(&mut self, cap: Option<i64>) -> bool {
        while let Some(s) = self.next_degree() {
            if cap.is_some_and(|c| s > c) {
                self.done_through = cap;
                return false;
            }
            self.step(s);
        }
        self.done_through = None;
        true
    }

    fn step(&mut self, s: i64) {
        // generators of this degree first, in input order
        if let Some(pos) = self
            .pending
            .iter()
            .enumerate()
            .filter(|(_, g)| g.0 == s)
            .min_by_key(|(_, g)| g.1)
            .map(|(pos, _)| pos)
        {
            let (sugar, _, g) = self.pending.remove(pos);
            let ops = VecOps::new(&self.field, &self.module);
            let h = reduce_full(&ops, &self.index, &self.basis_vecs, g);
            if !h.is_empty() {
                self.insert(h, sugar);
            }
            return;
        }
        let module = &self.module;
        let pos = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.sugar == s)
            .min_by(|(_, a), (_, b)| module.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)))
            .map(|(pos, _)| pos)
            .expect("a pair of the selected degree");
        let pair = self.pairs.swap_remove(pos);
        let ops = VecOps::new(&self.field, &self.module);
        let spoly = self.s_vector(&ops, &pair);
        let h = reduce_full(&ops, &self.index, &self.basis_vecs, spoly);
        if !h.is_empty() {
            self.insert(h, pair.sugar);
        }
    }

    fn s_vector(&self, ops: &VecOps<F>, pair: &Pair) -> Vector<F> {
        let a = &self.basis_vecs[pair.i];
        let b = &self.basis_vecs[pair.j];
        let qa = a[0].0.mono.quotient_of(&pair.lcm.mono).expect("lead divides lcm");
        let qb = b[0].0.mono.quotient_of(&pair.lcm.mono).expect("lead divides lcm");
        // both monic
        let left = ops.mul_term(a, &qa, &self.field.one());
        ops.sub_mul(&left, &self.field.one(), &qb, b)
    }

    fn insert(&mut self, h: Vector<F>, sugar: i64) {
        let ops = VecOps::new(&self.field, &self.module);
        let h = ops.monic(&h);
        let lead = h[0].0;
        let hi = self.basis_vecs.len();
        let lcm_of = |t: &Term| Term::new(t.mono.lcm(&lead.mono), lead.comp);

        // new pairs, chain criterion among themselves
        let mut cands: Vec<(Pair, bool)> = Vec::new();
        for g in 0..hi {
            if !self.active[g] {
                continue;
            }
            let gl = self.basis_vecs[g][0].0;
            if gl.comp != lead.comp {
                continue;
            }
            let lcm = lcm_of(&gl);
            let coprime = self.product_criterion && gl.mono.is_coprime(&lead.mono);
            let sg = self.sugars[g] + self.module.weighted_degree(&gl.mono.quotient_of(&lcm.mono).unwrap());
            let sh = sugar + self.module.weighted_degree(&lead.mono.quotient_of(&lcm.mono).unwrap());
            cands.push((Pair { i: g, j: hi, lcm, sugar: sg.max(sh) }, coprime));
        }
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while !cands.is_empty() {
            let (p, coprime) = cands.remove(0);
            let dominated = cands.iter().chain(kept.iter()).any(|(q, _)| q.lcm.mono.divides(&p.lcm.mono));
            if coprime || !dominated {
                kept.push((p, coprime));
            }
        }

        // prune old pairs
        let basis = &self.basis_vecs;
        self.pairs.retain(|p| {
            if p.lcm.comp != lead.comp || !lead.mono.divides(&p.lcm.mono) {
                return true;
            }
            let li = lcm_of(&basis[p.i][0].0);
            let lj = lcm_of(&basis[p.j][0].0);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));

        for g in 0..hi {
            if self.active[g] && self.basis_vecs[g][0].0.comp == lead.comp && lead.mono.divides(&self.basis_vecs[g][0].0.mono) {
                self.active[g] = false;
            }
        }
        self.index.insert(&lead, hi);
        self.basis_vecs.push(h);
        self.sugars.push(sugar);
        self.active.push(true);
    }

    /// Normal form of `p` with respect to the current basis.
    pub fn normal_form(&self, p: Vector<F>) -> Vector<F> {
        let ops = VecOps::new(&self.field, &self.module);
        reduce_full(&ops, &self.index, &self.basis_vecs, p)
    }

    /// Adds an element directly to the basis (it must be reduced).
    pub fn insert_reduced(&mut self, h: Vector<F>) {
        let ops = VecOps::new(&self.field, &self.module);
        let s = ops.sugar(&h);
        self.insert(h, s);
    }

    /// The reduced basis of everything computed so far, monic, in
    /// [`cmp_leads`] order.
    pub fn reduced_basis(&self) -> Vec<Vector<F>> {
        let ops = VecOps::new(&self.field, &self.module);
        let keep: Vec<usize> = (0..self.basis_vecs.len()).filter(|&i| self.active[i]).collect();
        let mut index = LeadIndex::new(self.module.rank());
        let vecs: Vec<Vector<F>> = keep.iter().map(|&i| self.basis_vecs[i].clone()).collect();
        for (k, v) in vecs.iter().enumerate() {
            index.insert(&v[0].0, k);
        }
        let mut out: Vec<Vector<F>> = vecs
            .iter()
            .map(|v| {
                let mut r = vec![v[0].clone()];
                r.extend(reduce_full(&ops, &index, &vecs, v[1..].to_vec()));
                ops.monic(&r)
            })
            .collect();
        out.sort_by(|a, b| cmp_leads::<F>(&self.module, a, b));
        out
    }

    pub fn basis_len(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`. The flag is
/// `false` when the computation stopped at `cap`.
pub fn groebner_basis<F: Field>(field: &F, module: &FreeModule, gens: Vec<Vector<F>>, cap: Option<i64>) -> (Vec<Vector<F>>, bool) {
    let mut bb = Buchberger::new(field.clone(), module.clone());
    bb.add_generators(gens);
    let complete = bb.run(cap);
    (bb.reduced_basis(), complete)
}

/// Output order of basis elements: increasing degree of the lead term,
/// then decreasing lead term.
pub fn cmp_leads<F: Field>(module: &FreeModule, a: &Vector<F>, b: &Vector<F>) -> Ordering {
    module.degree(&a[0].0).cmp(&module.degree(&b[0].0)).then_with(|| module.cmp(&b[0].0, &a[0].0))
}
