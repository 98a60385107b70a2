use std::sync::Arc;

use super::map::ModuleMap;
use super::Resolution;
use super::ResolutionStatus;
use crate::error::{Error, Result};
use crate::groebner::engine::{groebner_basis, reduce_full, reduce_tracking, LeadIndex};
use crate::groebner::{buchberger_capped, minimal_generators_vec, CompInfo, FreeModule, Ideal, Term, VecOps, Vector};
use crate::polyring::{Field, Grading, Monomial, MonomialOrder, Polynomial, Ring, RingExt};

/// Bidegree of a monomial in a ring with a block split.
fn mono_bidegree(m: &Monomial, split: usize) -> (i64, i64) {
    let a = m.partial_degree(0..split) as i64;
    (a, m.degree() as i64 - a)
}

/// The free module `F_{L+1}` with the order induced by `gens ⊂ F_L`.
fn schreyer_module<F: Field>(module: &FreeModule, gens: &[Vector<F>]) -> FreeModule {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| (module.comps[gens[i][0].0.comp as usize].rank, i));
    let mut rank = vec![0u32; gens.len()];
    for (k, &i) in order.iter().enumerate() {
        rank[i] = k as u32;
    }
    let comps = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let lead = g[0].0;
            let c = &module.comps[lead.comp as usize];
            CompInfo { mono: lead.mono.mul(&c.mono), degree: module.degree(&lead) as i32, rank: rank[i], block: 0 }
        })
        .collect();
    FreeModule { order: module.order, weights: module.weights, comps }
}

/// Lead terms `m_ij e_i` of the Schreyer syzygies that generate the lead
/// module minimally: `(i, j, m_ij, m_ji)`.
fn syzygy_pairs<F: Field>(gens: &[Vector<F>]) -> Vec<(usize, usize, Monomial, Monomial)> {
    let mut by_comp: Vec<Vec<usize>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let c = g[0].0.comp as usize;
        if by_comp.len() <= c {
            by_comp.resize(c + 1, Vec::new());
        }
        by_comp[c].push(i);
    }
    let mut out = Vec::new();
    for idx in &by_comp {
        for (a, &i) in idx.iter().enumerate() {
            let li = gens[i][0].0.mono;
            let cands: Vec<(usize, Monomial, Monomial)> = idx[a + 1..]
                .iter()
                .map(|&j| {
                    let lj = gens[j][0].0.mono;
                    let l = li.lcm(&lj);
                    (j, li.quotient_of(&l).unwrap(), lj.quotient_of(&l).unwrap())
                })
                .collect();
            for (k, (j, mij, mji)) in cands.iter().enumerate() {
                let redundant = cands
                    .iter()
                    .enumerate()
                    .any(|(k2, (_, m2, _))| k2 != k && m2.divides(mij) && (m2 != mij || k2 < k));
                if !redundant {
                    out.push((i, *j, *mij, *mji));
                }
            }
        }
    }
    out
}

/// Sorts generators by lead component, then lex-descending lead monomial;
/// this keeps Schreyer frames within the Hilbert syzygy bound.
fn frame_sort<F: Field>(gens: &mut [Vector<F>]) {
    gens.sort_by(|a, b| a[0].0.comp.cmp(&b[0].0.comp).then_with(|| b[0].0.mono.lex_cmp(&a[0].0.mono)));
}

/// One Schreyer step: syzygies of the basis `gens ⊂ F_L`, as a basis of
/// `F_{L+1}` for the induced order. Returns the syzygies and whether some
/// were skipped by the degree cap.
fn schreyer_step<F: Field>(
    field: &F,
    module: &FreeModule,
    gens: &[Vector<F>],
    next: &FreeModule,
    degree_cap: Option<i64>,
) -> (Vec<Vector<F>>, bool) {
    let ops = VecOps::new(field, module);
    let next_ops = VecOps::new(field, next);
    let mut index = LeadIndex::new(module.rank());
    for (k, g) in gens.iter().enumerate() {
        index.insert(&g[0].0, k);
    }
    let one = field.one();
    let minus_one = field.neg(&one);
    let mut out = Vec::new();
    let mut skipped = false;
    for (i, j, mij, mji) in syzygy_pairs::<F>(gens) {
        let deg = mij.degree() as i64 + next.comps[i].degree as i64;
        if degree_cap.is_some_and(|c| deg > c) {
            skipped = true;
            continue;
        }
        let s = ops.sub_mul(&ops.mul_term(&gens[i], &mij, &one), &one, &mji, &gens[j]);
        let quotients = reduce_tracking(&ops, &index, gens, s).unwrap_or_else(|_| panic!("S-vector of a basis must reduce to zero"));
        let mut terms = vec![(Term::new(mij, i as u32), one.clone()), (Term::new(mji, j as u32), minus_one.clone())];
        terms.extend(quotients.into_iter().map(|(k, q, c)| (Term::new(q, k as u32), field.neg(&c))));
        let sigma = next_ops.normalize(terms);
        debug_assert!(sigma[0].0 == Term::new(mij, i as u32));
        out.push(sigma);
    }
    (out, skipped)
}

fn vectors_to_map<F: Field>(
    ring: &Arc<Ring<F>>,
    module: &FreeModule,
    gens: &[Vector<F>],
    target_bidegrees: Option<&[(i64, i64)]>,
) -> ModuleMap<F> {
    let target_degrees: Vec<i64> = module.comps.iter().map(|c| c.degree as i64).collect();
    let source_degrees: Vec<i64> = gens.iter().map(|g| module.degree(&g[0].0)).collect();
    let columns = gens.iter().map(|g| vector_to_column(ring, g)).collect();
    let mut map = ModuleMap::from_columns(ring, target_degrees, source_degrees, columns);
    if let (Some(t), Grading::Bigraded { split }) = (target_bidegrees, ring.grading()) {
        let src = gens
            .iter()
            .map(|g| {
                let lead = g[0].0;
                let (a, b) = mono_bidegree(&lead.mono, split);
                let (c, d) = t[lead.comp as usize];
                (a + c, b + d)
            })
            .collect();
        map.target_bidegrees = Some(t.to_vec());
        map.source_bidegrees = Some(src);
    }
    map
}

pub(crate) fn vector_to_column<F: Field>(ring: &Arc<Ring<F>>, v: &[(Term, F::Elem)]) -> Vec<(usize, Polynomial<F>)> {
    let mut parts: Vec<(usize, Vec<(Monomial, F::Elem)>)> = Vec::new();
    for (t, c) in v {
        let r = t.comp as usize;
        match parts.iter_mut().find(|(row, _)| *row == r) {
            Some((_, terms)) => terms.push((t.mono, c.clone())),
            None => parts.push((r, vec![(t.mono, c.clone())])),
        }
    }
    parts.sort_by_key(|(r, _)| *r);
    parts.into_iter().map(|(r, terms)| (r, ring.from_terms(terms))).collect()
}

/// Free resolution of `S/I` by iterated Schreyer syzygies, starting from
/// the reduced grevlex basis of `I`. The result is generally not minimal.
///
/// `length_cap` bounds the number of maps; `degree_cap` drops generators of
/// degree above the cap, so Betti numbers in degrees up to the cap remain
/// exact. Hitting a cap is reported in the status.
pub fn free_resolution<F: Field>(ideal: &Ideal<F>, length_cap: Option<usize>, degree_cap: Option<i64>) -> Result<Resolution<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("free resolutions need a homogeneous ideal".into()));
    }
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let gb = match degree_cap {
        None => ideal.groebner_basis().clone(),
        Some(c) => buchberger_capped(ideal, MonomialOrder::Grevlex, Some(c)),
    };
    let mut truncated_degree = !gb.is_complete();
    let mut module = FreeModule::graded(MonomialOrder::Grevlex, &[0]);
    let mut gens: Vec<Vector<F>> = gb
        .elements()
        .iter()
        .map(|p| p.terms().iter().map(|(m, c)| (Term::scalar(*m), c.clone())).collect())
        .collect();
    frame_sort::<F>(&mut gens);
    let bigraded = matches!(ring.grading(), Grading::Bigraded { .. })
        && ideal.generators().iter().all(|g| g.bidegree().is_ok())
        && gb.elements().iter().all(|g| g.bidegree().is_ok());
    let mut bidegrees: Option<Vec<(i64, i64)>> = bigraded.then(|| vec![(0, 0)]);
    let mut maps = Vec::new();
    let mut truncated_length = false;
    while !gens.is_empty() {
        if length_cap.is_some_and(|c| maps.len() >= c) {
            truncated_length = true;
            break;
        }
        let map = vectors_to_map(&ring, &module, &gens, bidegrees.as_deref());
        let next = schreyer_module::<F>(&module, &gens);
        let stop_here = length_cap.is_some_and(|c| maps.len() + 1 >= c);
        if stop_here {
            // only the lead terms are needed to see whether the frame ends
            truncated_length = !syzygy_pairs::<F>(&gens).is_empty();
            maps.push(map);
            break;
        }
        let (mut syz, skipped) = schreyer_step(&field, &module, &gens, &next, degree_cap);
        truncated_degree |= skipped;
        bidegrees = map.source_bidegrees.clone();
        maps.push(map);
        frame_sort::<F>(&mut syz);
        module = next;
        gens = syz;
    }
    let status = if truncated_length || truncated_degree {
        ResolutionStatus::Truncated { length: truncated_length, degree: truncated_degree }
    } else {
        ResolutionStatus::Complete
    };
    Ok(Resolution::new(ring, maps, false, status, degree_cap))
}

/// Generators of the syzygy module of the columns of a homogeneous map.
#[derive(Clone, Debug)]
pub struct Syzygies<F: Field> {
    /// Minimal generators as the columns of a map into `S^ncols`.
    pub map: ModuleMap<F>,
    module: FreeModule,
    basis: Vec<Vector<F>>,
    index: LeadIndex,
}

impl<F: Field> Syzygies<F> {
    /// Whether the vector with sparse coordinates `v` is a syzygy in the
    /// computed module (membership, not just the relation).
    pub fn contains(&self, v: &[(usize, Polynomial<F>)]) -> bool {
        let field = self.map.ring().field();
        let ops = VecOps::new(field, &self.module);
        let terms = v
            .iter()
            .flat_map(|(c, p)| p.terms().iter().map(move |(m, x)| (Term::new(*m, *c as u32), x.clone())))
            .collect();
        let vec = ops.normalize(terms);
        reduce_full(&ops, &self.index, &self.basis, vec).is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.map.ncols() == 0
    }
}

/// Minimal generators of the syzygies of the columns of `map`, computed from
/// a Gröbner basis of the graph module `{(φ(v), v)}` with the target block
/// dominant.
pub fn schreyer_syzygies<F: Field>(map: &ModuleMap<F>) -> Result<Syzygies<F>> {
    let ring = map.ring().clone();
    let field = ring.field().clone();
    let nrows = map.nrows();
    let ncols = map.ncols();
    if !map.is_homogeneous() {
        return Err(Error::NotHomogeneous("syzygies need homogeneous columns".into()));
    }
    let mut comps: Vec<CompInfo> = map.target_degrees.iter().enumerate().map(|(r, &d)| CompInfo::plain(d as i32, r as u32)).collect();
    comps.extend(map.source_degrees.iter().enumerate().map(|(c, &d)| CompInfo { block: 1, ..CompInfo::plain(d as i32, c as u32) }));
    let graph = FreeModule { order: MonomialOrder::Grevlex, weights: [1; crate::polyring::MAX_VARS], comps };
    let ops = VecOps::new(&field, &graph);
    let gens: Vec<Vector<F>> = (0..ncols)
        .map(|c| {
            let mut terms: Vec<(Term, F::Elem)> = map
                .column(c)
                .iter()
                .flat_map(|(r, p)| p.terms().iter().map(move |(m, x)| (Term::new(*m, *r as u32), x.clone())))
                .collect();
            terms.push((Term::new(Monomial::ONE, (nrows + c) as u32), field.one()));
            ops.normalize(terms)
        })
        .collect();
    let (basis, _) = groebner_basis(&field, &graph, gens, None);
    let syz_module = FreeModule::graded(MonomialOrder::Grevlex, &map.source_degrees.iter().map(|&d| d as i32).collect::<Vec<_>>());
    let syz_basis: Vec<Vector<F>> = basis
        .into_iter()
        .filter(|v| v[0].0.comp as usize >= nrows)
        .map(|v| v.into_iter().map(|(t, c)| (Term::new(t.mono, t.comp - nrows as u32), c)).collect())
        .collect();
    let mut index = LeadIndex::new(ncols);
    for (k, v) in syz_basis.iter().enumerate() {
        index.insert(&v[0].0, k);
    }
    let minimal = minimal_generators_vec(&field, &syz_module, syz_basis.clone());
    let degrees: Vec<i64> = minimal.iter().map(|v| syz_module.degree(&v[0].0)).collect();
    let columns = minimal.iter().map(|v| vector_to_column(&ring, v)).collect();
    let mut out = ModuleMap::from_columns(&ring, map.source_degrees.clone(), degrees, columns);
    if let Some(b) = &map.source_bidegrees {
        out.assign_bidegrees(b.clone());
    }
    Ok(Syzygies { map: out, module: syz_module, basis: syz_basis, index })
}

/// Syzygies of a list of homogeneous polynomials.
pub fn syzygies_of<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>]) -> Result<Syzygies<F>> {
    let rows = vec![gens.to_vec()];
    let mut map = ModuleMap::from_rows(ring, vec![0], &rows)?;
    if matches!(ring.grading(), Grading::Bigraded { .. }) {
        map.assign_bidegrees(vec![(0, 0)]);
    }
    schreyer_syzygies(&map)
}
