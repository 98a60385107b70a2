use std::collections::BTreeSet;

use super::map::ModuleMap;
use super::Resolution;
use crate::polyring::{Field, Polynomial};

/// Which entries may serve as pivots while pruning a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(clippy::manual_non_exhaustive)]
pub enum PivotRule {
    /// Nonzero constants only; the correct rule.
    Constant,
    /// Any single-term entry, with no elimination. Not a valid reduction;
    /// exists so that test suites can check they detect a broken pruning.
    #[doc(hidden)]
    AnyMonomialUnchecked,
}

impl PivotRule {
    fn accepts<F: Field>(self, p: &Polynomial<F>) -> bool {
        match self {
            PivotRule::Constant => p.is_constant() && !p.is_zero(),
            PivotRule::AnyMonomialUnchecked => p.len() == 1,
        }
    }
}

/// Prunes a free resolution to a minimal one by cancelling unit entries.
///
/// For `i = 1, 2, ...` the pivot in `φ_i` is the constant entry in the lowest
/// row, ties broken by lowest column. Column operations clear the pivot row,
/// then the pivot row and column are deleted from `φ_i` together with the
/// matching column of `φ_{i-1}` and row of `φ_{i+1}`.
pub fn minimalize<F: Field>(res: &Resolution<F>) -> Resolution<F> {
    minimalize_with(res, PivotRule::Constant)
}

pub fn minimalize_with<F: Field>(res: &Resolution<F>, rule: PivotRule) -> Resolution<F> {
    let mut maps: Vec<ModuleMap<F>> = res.maps().to_vec();
    let m = maps.len();
    let mut alive: Vec<Vec<bool>> = (0..=m).map(|i| vec![true; res.rank(i)]).collect();
    for i in 0..m {
        let field = maps[i].ring().field().clone();
        let pivot_ok = |p: &Polynomial<F>| rule.accepts(p);
        let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (c, col) in maps[i].columns().iter().enumerate() {
            if alive[i + 1][c] {
                candidates.extend(col.iter().filter(|(r, p)| alive[i][*r] && pivot_ok(p)).map(|(r, _)| (*r, c)));
            }
        }
        while let Some((r, c)) = candidates.pop_first() {
            let pivot_col = maps[i].column(c).to_vec();
            let cols = maps[i].columns_mut();
            for (rr, _) in &pivot_col {
                candidates.remove(&(*rr, c));
            }
            if rule == PivotRule::Constant {
                let u = pivot_col.iter().find(|(rr, _)| *rr == r).unwrap().1.terms()[0].1.clone();
                let u_inv = field.inv(&u);
                for j in 0..cols.len() {
                    if j == c || !alive[i + 1][j] {
                        continue;
                    }
                    let Ok(k) = cols[j].binary_search_by_key(&r, |(row, _)| *row) else { continue };
                    let lambda = cols[j][k].1.scale(&u_inv);
                    for (rr, p) in &cols[j] {
                        if alive[i][*rr] && pivot_ok(p) {
                            candidates.remove(&(*rr, j));
                        }
                    }
                    cols[j] = axpy(&cols[j], &lambda, &pivot_col);
                    candidates.extend(cols[j].iter().filter(|(rr, p)| alive[i][*rr] && pivot_ok(p)).map(|(rr, _)| (*rr, j)));
                }
            } else {
                candidates.retain(|&(rr, _)| rr != r);
            }
            alive[i][r] = false;
            alive[i + 1][c] = false;
        }
    }
    let maps = maps.into_iter().enumerate().map(|(i, map)| compact(map, &alive[i], &alive[i + 1])).collect();
    Resolution::new(res.ring().clone(), maps, true, res.status(), res.degree_cap())
}

/// `a - λ b` for sparse columns.
fn axpy<F: Field>(a: &[(usize, Polynomial<F>)], lambda: &Polynomial<F>, b: &[(usize, Polynomial<F>)]) -> Vec<(usize, Polynomial<F>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let ra = a.get(x).map_or(usize::MAX, |e| e.0);
        let rb = b.get(y).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push(a[x].clone());
            x += 1;
        } else if rb < ra {
            out.push((rb, (lambda * &b[y].1).neg()));
            y += 1;
        } else {
            let p = &a[x].1 - &(lambda * &b[y].1);
            if !p.is_zero() {
                out.push((ra, p));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

fn compact<F: Field>(map: ModuleMap<F>, rows: &[bool], cols: &[bool]) -> ModuleMap<F> {
    let mut new_index = vec![usize::MAX; rows.len()];
    let mut k = 0;
    for (r, &a) in rows.iter().enumerate() {
        if a {
            new_index[r] = k;
            k += 1;
        }
    }
    let target_degrees: Vec<i64> = map.target_degrees.iter().enumerate().filter(|(r, _)| rows[*r]).map(|(_, d)| *d).collect();
    let source_degrees: Vec<i64> = map.source_degrees.iter().enumerate().filter(|(c, _)| cols[*c]).map(|(_, d)| *d).collect();
    let columns: Vec<Vec<(usize, Polynomial<F>)>> = map
        .columns()
        .iter()
        .enumerate()
        .filter(|(c, _)| cols[*c])
        .map(|(_, col)| col.iter().filter(|(r, _)| rows[*r]).map(|(r, p)| (new_index[*r], p.clone())).collect())
        .collect();
    let mut out = ModuleMap::from_columns(map.ring(), target_degrees, source_degrees, columns);
    out.target_bidegrees = map.target_bidegrees.as_ref().map(|b| b.iter().enumerate().filter(|(r, _)| rows[*r]).map(|(_, d)| *d).collect());
    out.source_bidegrees = map.source_bidegrees.as_ref().map(|b| b.iter().enumerate().filter(|(c, _)| cols[*c]).map(|(_, d)| *d).collect());
    out
}
