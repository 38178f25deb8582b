//! Enumeration of 1-3-2-avoiding permutations and occurrence distributions.
//!
//! Avoiders are generated structurally: a nonempty avoider of length `n` is
//! `(left, n, right)` where `left` is an avoider on the top values and
//! `right` an avoider on the bottom values. Nothing is generated and then
//! filtered, so exactly the Catalan number of permutations is visited.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{GeneralizedPattern, Permutation};

/// Largest `n` enumerated by default.
pub const DEFAULT_BUDGET: usize = 12;
/// Largest `n` the brute-force `n!` filter will accept.
pub const FILTER_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("n = {n} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("n = {n} exceeds the filter oracle bound of {bound}")]
    FilterBoundExceeded { n: usize, bound: usize },
}

/// Segment of the output buffer still to be filled: `len` positions starting
/// at `pos`, taking the values `base + 1 ..= base + len`.
#[derive(Clone, Copy)]
struct Segment {
    pos: usize,
    len: usize,
    base: u32,
}

fn fill(buf: &mut [u32], pending: &mut Vec<Segment>, f: &mut dyn FnMut(&[u32])) {
    let Some(seg) = pending.pop() else {
        f(buf);
        return;
    };
    if seg.len == 0 {
        fill(buf, pending, f);
    } else {
        for l in 1..=seg.len {
            place_max(buf, pending, seg, l);
            fill(buf, pending, f);
            pending.truncate(pending.len() - 2);
        }
    }
    pending.push(seg);
}

/// Puts the segment maximum at offset `l - 1` and queues both sides.
fn place_max(buf: &mut [u32], pending: &mut Vec<Segment>, seg: Segment, l: usize) {
    buf[seg.pos + l - 1] = seg.base + seg.len as u32;
    pending.push(Segment {
        pos: seg.pos + l,
        len: seg.len - l,
        base: seg.base,
    });
    pending.push(Segment {
        pos: seg.pos,
        len: l - 1,
        base: seg.base + (seg.len - l) as u32,
    });
}

/// Calls `f` once for every 1-3-2-avoiding permutation of length `n`.
pub fn for_each_avoider(n: usize, mut f: impl FnMut(&[u32])) {
    let mut buf = vec![0u32; n];
    let mut pending = vec![Segment {
        pos: 0,
        len: n,
        base: 0,
    }];
    fill(&mut buf, &mut pending, &mut f);
}

/// Visits the avoiders whose maximum sits at 1-based position `l`.
fn for_each_avoider_with_max_at(n: usize, l: usize, f: &mut dyn FnMut(&[u32])) {
    let mut buf = vec![0u32; n];
    let mut pending = Vec::new();
    place_max(
        &mut buf,
        &mut pending,
        Segment {
            pos: 0,
            len: n,
            base: 0,
        },
        l,
    );
    fill(&mut buf, &mut pending, f);
}

/// Runs `fold` over every avoider of length `n`, split across threads by the
/// position of the maximum, and merges the per-branch accumulators.
pub fn fold_avoiders<A, F, M>(n: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &[u32]) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &[]);
        return acc;
    }
    (1..=n)
        .into_par_iter()
        .map(|l| {
            let mut acc = init();
            for_each_avoider_with_max_at(n, l, &mut |p| fold(&mut acc, p));
            acc
        })
        .reduce(&init, &merge)
}

pub fn generate_avoiders(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(n, |p| out.push(Permutation::from_trusted(p.to_vec())));
    out
}

/// Independent oracle: every permutation of `1..=n` (Heap's algorithm), kept
/// when it avoids `1-3-2`. Refuses `n > FILTER_BOUND`.
pub fn generate_avoiders_filter(n: usize) -> Result<Vec<Permutation>, EnumerationError> {
    generate_avoiders_filter_bounded(n, FILTER_BOUND)
}

pub fn generate_avoiders_filter_bounded(
    n: usize,
    bound: usize,
) -> Result<Vec<Permutation>, EnumerationError> {
    if n > bound {
        return Err(EnumerationError::FilterBoundExceeded { n, bound });
    }
    let pattern = GeneralizedPattern::parse("1-3-2").expect("static pattern");
    let mut values: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    let mut keep = |v: &[u32]| {
        if pattern.count_in(v) == 0 {
            out.push(Permutation::from_trusted(v.to_vec()));
        }
    };
    keep(&values);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                values.swap(0, i);
            } else {
                values.swap(c[i], i);
            }
            keep(&values);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(out)
}

fn tally_to_big(tally: BTreeMap<u64, u64>) -> BTreeMap<u64, BigUint> {
    tally
        .into_iter()
        .map(|(r, c)| (r, BigUint::from(c)))
        .collect()
}

fn merge_tallies(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (r, c) in b {
        *a.entry(r).or_default() += c;
    }
    a
}

/// Number of avoiders of length `n` with exactly `r` occurrences of `pat`, for every witnessed `r`.
pub fn distribution(pat: &GeneralizedPattern, n: usize) -> BTreeMap<u64, BigUint> {
    let tally = fold_avoiders(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<u64, u64>, p| *acc.entry(pat.count_in(p)).or_default() += 1,
        merge_tallies,
    );
    tally_to_big(tally)
}

/// As [`distribution`], over the avoiders that also avoid `tau`, keyed by occurrences of `phi`.
pub fn distribution_restricted(
    tau: &GeneralizedPattern,
    phi: &GeneralizedPattern,
    n: usize,
) -> BTreeMap<u64, BigUint> {
    let tally = fold_avoiders(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<u64, u64>, p| {
            if tau.is_empty() || tau.count_in(p) == 0 {
                *acc.entry(phi.count_in(p)).or_default() += 1;
            }
        },
        merge_tallies,
    );
    tally_to_big(tally)
}

/// Occurrence counts `f(n, r)` for `n <= n_max`, `r <= r_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub pattern_label: String,
    pub restriction_label: Option<String>,
    pub n_max: usize,
    pub r_max: usize,
    /// `rows[n][r]`
    #[serde(serialize_with = "decimal_rows")]
    pub rows: Vec<Vec<BigUint>>,
    /// `truncated[n]` is true when some permutation of length `n` had more than `r_max` occurrences.
    pub truncated: Vec<bool>,
}

impl CountTable {
    pub fn from_distributions(
        pattern_label: String,
        restriction_label: Option<String>,
        r_max: usize,
        dists: &[BTreeMap<u64, BigUint>],
    ) -> Self {
        let mut rows = Vec::with_capacity(dists.len());
        let mut truncated = Vec::with_capacity(dists.len());
        for d in dists {
            let mut row = vec![BigUint::default(); r_max + 1];
            let mut cut = false;
            for (&r, c) in d {
                match row.get_mut(r as usize) {
                    Some(slot) => *slot = c.clone(),
                    None => cut = true,
                }
            }
            rows.push(row);
            truncated.push(cut);
        }
        CountTable {
            pattern_label,
            restriction_label,
            n_max: dists.len().saturating_sub(1),
            r_max,
            rows,
            truncated,
        }
    }

    pub fn get(&self, n: usize, r: usize) -> Option<&BigUint> {
        self.rows.get(n)?.get(r)
    }

    pub fn truncated_rows(&self) -> Vec<usize> {
        self.truncated
            .iter()
            .enumerate()
            .filter_map(|(n, &t)| t.then_some(n))
            .collect()
    }
}

fn decimal_rows<S: serde::Serializer>(rows: &[Vec<BigUint>], ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(rows.len()))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        seq.serialize_element(&cells)?;
    }
    seq.end()
}

/// Assembles distribution rows `0..=n_max`, refusing `n_max > budget`.
pub fn table(
    pat: &GeneralizedPattern,
    n_max: usize,
    r_max: usize,
    restriction: Option<&GeneralizedPattern>,
    budget: usize,
) -> Result<CountTable, EnumerationError> {
    if n_max > budget {
        return Err(EnumerationError::BudgetExceeded { n: n_max, budget });
    }
    let dists: Vec<_> = (0..=n_max)
        .map(|n| match restriction {
            Some(tau) => distribution_restricted(tau, pat, n),
            None => distribution(pat, n),
        })
        .collect();
    Ok(CountTable::from_distributions(
        pat.to_string(),
        restriction.map(ToString::to_string),
        r_max,
        &dists,
    ))
}

/// One pass over the avoiders scoring many `(restriction, pattern)` subjects at once.
///
/// Returns `tallies[subject][n]`.
pub fn joint_distributions(
    subjects: &[(Option<GeneralizedPattern>, GeneralizedPattern)],
    n_max: usize,
    budget: usize,
) -> Result<Vec<Vec<BTreeMap<u64, BigUint>>>, EnumerationError> {
    if n_max > budget {
        return Err(EnumerationError::BudgetExceeded { n: n_max, budget });
    }
    // score each distinct pattern once per permutation
    let mut patterns: Vec<GeneralizedPattern> = Vec::new();
    let mut index_of = |p: &GeneralizedPattern| match patterns.iter().position(|q| q == p) {
        Some(i) => i,
        None => {
            patterns.push(p.clone());
            patterns.len() - 1
        }
    };
    let keys: Vec<(Option<usize>, usize)> = subjects
        .iter()
        .map(|(tau, phi)| (tau.as_ref().map(&mut index_of), index_of(phi)))
        .collect();

    let mut out = vec![Vec::with_capacity(n_max + 1); subjects.len()];
    for n in 0..=n_max {
        let tallies = fold_avoiders(
            n,
            || vec![BTreeMap::<u64, u64>::new(); keys.len()],
            |acc, p| {
                let scores: Vec<u64> = patterns.iter().map(|q| q.count_in(p)).collect();
                for (slot, &(tau, phi)) in acc.iter_mut().zip(&keys) {
                    if tau.is_none_or(|t| scores[t] == 0) {
                        *slot.entry(scores[phi]).or_default() += 1;
                    }
                }
            },
            |a, b| {
                a.into_iter()
                    .zip(b)
                    .map(|(x, y)| merge_tallies(x, y))
                    .collect()
            },
        );
        for (dest, t) in out.iter_mut().zip(tallies) {
            dest.push(tally_to_big(t));
        }
    }
    Ok(out)
}
