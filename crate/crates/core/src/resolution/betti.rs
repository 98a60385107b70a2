use std::collections::BTreeMap;

use serde::Serialize;

use super::{Resolution, ResolutionStatus};
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeriesData;
use crate::polyring::Field;

/// Graded Betti numbers `β_{i,j}`: `entries[(i, j)]` is the number of
/// generators of degree `j` in `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub nvars: usize,
    pub entries: BTreeMap<(usize, i64), usize>,
    /// `β_{i,(a,b)}` when the resolution carries bidegrees.
    pub bigraded: Option<BTreeMap<(usize, (i64, i64)), usize>>,
    /// Homological indices above this bound may be incomplete.
    pub certified_index: Option<usize>,
    /// Degrees above this bound may be incomplete.
    pub certified_degree: Option<i64>,
}

#[derive(Serialize)]
struct JsonEntry {
    i: usize,
    deg: i64,
    rank: usize,
}

#[derive(Serialize)]
struct JsonBiEntry {
    i: usize,
    bideg: (i64, i64),
    rank: usize,
}

#[derive(Serialize)]
struct JsonTable {
    entries: Vec<JsonEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bigraded: Option<Vec<JsonBiEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_degree: Option<i64>,
}

impl BettiTable {
    pub fn from_entries(nvars: usize, entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> BettiTable {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiTable { nvars, entries: map, bigraded: None, certified_index: None, certified_degree: None }
    }

    pub fn get(&self, i: usize, deg: i64) -> usize {
        self.entries.get(&(i, deg)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, v)| v).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Projective dimension: the largest index with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|(i, j)| j - *i as i64).max()
    }

    /// Bidegrees of `F_i` with multiplicity, sorted.
    pub fn bidegrees(&self, i: usize) -> Option<Vec<(i64, i64)>> {
        self.bigraded.as_ref().map(|b| {
            b.range((i, (i64::MIN, i64::MIN))..=(i, (i64::MAX, i64::MAX)))
                .flat_map(|(k, v)| std::iter::repeat_n(k.1, *v))
                .collect()
        })
    }

    /// `Σ (-1)^i β_{i,j} t^j / (1-t)^n`.
    pub fn hilbert_series(&self) -> HilbertSeriesData {
        HilbertSeriesData::from_terms(
            self.entries.iter().map(|((i, j), v)| (*j, if i % 2 == 0 { *v as i64 } else { -(*v as i64) })),
            self.nvars,
        )
    }

    /// Plain-text table: columns are homological indices, row `r` holds
    /// `β_{i,i+r}`, zeros print as `.`, and runs of three or more empty rows
    /// collapse to a single `:` row.
    pub fn to_text(&self) -> String {
        let Some(pd) = self.projective_dimension() else { return String::new() };
        let rmin = self.entries.keys().map(|(i, j)| j - *i as i64).min().unwrap();
        let rmax = self.regularity().unwrap();
        let cell = |i: usize, r: i64| -> String {
            match self.get(i, r + i as i64) {
                0 => ".".to_string(),
                v => v.to_string(),
            }
        };
        let totals: Vec<String> = (0..=pd).map(|i| self.total(i).to_string()).collect();
        let mut widths: Vec<usize> = (0..=pd).map(|i| i.to_string().len().max(totals[i].len())).collect();
        for r in rmin..=rmax {
            for (i, w) in widths.iter_mut().enumerate() {
                *w = (*w).max(cell(i, r).len());
            }
        }
        let label_w = (rmin..=rmax).map(|r| format!("{r}:").len()).max().unwrap().max("total:".len());
        let mut lines = Vec::new();
        let row = |label: &str, cells: Vec<String>| -> String {
            let mut s = format!("{label:>label_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                s.push(' ');
                s.push_str(&format!("{c:>w$}"));
            }
            s
        };
        lines.push(row("", (0..=pd).map(|i| i.to_string()).collect()));
        lines.push(row("total:", totals.clone()));
        let empty = |r: i64| (0..=pd).all(|i| self.get(i, r + i as i64) == 0);
        let mut r = rmin;
        while r <= rmax {
            if empty(r) {
                let mut end = r;
                while end < rmax && empty(end + 1) {
                    end += 1;
                }
                let run = end - r + 1;
                if run >= 3 {
                    lines.push(row(":", vec![".".to_string(); pd + 1]));
                    r = end + 1;
                    continue;
                }
            }
            lines.push(row(&format!("{r}:"), (0..=pd).map(|i| cell(i, r)).collect()));
            r += 1;
        }
        lines.join("\n") + "\n"
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = JsonTable {
            entries: self.entries.iter().map(|((i, deg), rank)| JsonEntry { i: *i, deg: *deg, rank: *rank }).collect(),
            bigraded: self.bigraded.as_ref().map(|b| {
                b.iter().map(|((i, bideg), rank)| JsonBiEntry { i: *i, bideg: *bideg, rank: *rank }).collect()
            }),
            certified_index: self.certified_index,
            certified_degree: self.certified_degree,
        };
        serde_json::to_value(t).expect("table serializes")
    }
}

/// Betti table of a minimal resolution; fails with `NotMinimal` if some map
/// has a unit entry.
pub fn betti_table<F: Field>(res: &Resolution<F>) -> Result<BettiTable> {
    if res.maps().iter().any(|m| m.has_unit_entry()) {
        return Err(Error::NotMinimal);
    }
    let mut t = BettiTable::from_entries(
        res.ring().nvars(),
        (0..=res.maps().len()).flat_map(|i| res.degrees(i).into_iter().map(move |d| ((i, d), 1))),
    );
    let bi: Option<Vec<(usize, Vec<(i64, i64)>)>> =
        (0..=res.maps().len()).map(|i| res.bidegrees(i).map(|b| (i, b))).collect();
    t.bigraded = bi.map(|v| {
        let mut m = BTreeMap::new();
        for (i, b) in v {
            for d in b {
                *m.entry((i, d)).or_insert(0) += 1;
            }
        }
        m
    });
    if let ResolutionStatus::Truncated { length, degree } = res.status() {
        if length {
            t.certified_index = Some(res.maps().len().saturating_sub(1));
        }
        if degree {
            t.certified_degree = res.degree_cap();
        }
    }
    Ok(t)
}

pub fn regularity_of(table: &BettiTable) -> Result<i64> {
    table.regularity().ok_or(Error::EmptyTable)
}

/// `(depth, pd)` of the resolved module, depth by Auslander-Buchsbaum.
pub fn depth_and_pd(table: &BettiTable) -> Result<(usize, usize)> {
    let pd = table.projective_dimension().ok_or(Error::EmptyTable)?;
    Ok((table.nvars.saturating_sub(pd), pd))
}
