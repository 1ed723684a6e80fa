use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};

/// A finite union of half-open intervals `[lo, hi)` inside `[0, 1)`.
///
/// The interval list is kept canonical: sorted, pairwise disjoint, every
/// interval nonempty and no two intervals touching. Two sets are equal
/// exactly when their interval lists are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawMSet", into = "RawMSet")]
pub struct MSet {
    intervals: Vec<(Rat, Rat)>,
}

#[derive(Serialize, Deserialize)]
struct RawMSet {
    intervals: Vec<(Rat, Rat)>,
}

impl TryFrom<RawMSet> for MSet {
    type Error = Error;

    fn try_from(raw: RawMSet) -> Result<MSet> {
        MSet::normalize(raw.intervals)
    }
}

impl From<MSet> for RawMSet {
    fn from(set: MSet) -> RawMSet {
        RawMSet {
            intervals: set.intervals,
        }
    }
}

impl std::fmt::Debug for MSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, (lo, hi)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "[{lo}, {hi})")?;
        }
        Ok(())
    }
}

impl MSet {
    pub fn empty() -> MSet {
        MSet::default()
    }

    /// The whole space `[0, 1)`.
    pub fn omega() -> MSet {
        MSet {
            intervals: vec![(Rat::zero(), Rat::one())],
        }
    }

    /// A single interval `[lo, hi)`; `lo == hi` gives the empty set.
    pub fn interval(lo: Rat, hi: Rat) -> Result<MSet> {
        MSet::normalize(vec![(lo, hi)])
    }

    /// Canonical form of the union of the given intervals.
    pub fn normalize(raw: Vec<(Rat, Rat)>) -> Result<MSet> {
        let zero = Rat::zero();
        let one = Rat::one();
        for (lo, hi) in &raw {
            for x in [lo, hi] {
                if *x < zero || *x > one {
                    return Err(Error::EndpointOutOfRange(x.to_string()));
                }
            }
            if lo > hi {
                return Err(Error::ReversedInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
        }
        let mut pieces: Vec<(Rat, Rat)> = raw.into_iter().filter(|(lo, hi)| lo < hi).collect();
        pieces.sort();
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Ok(MSet { intervals: out })
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> Rat {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// Left endpoint of the first interval.
    pub fn leftmost(&self) -> Option<&Rat> {
        self.intervals.first().map(|(lo, _)| lo)
    }

    pub fn union(&self, other: &MSet) -> MSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &MSet) -> MSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &MSet) -> MSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symdiff(&self, other: &MSet) -> MSet {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> MSet {
        MSet::omega().difference(self)
    }

    /// `self ⊂ other`.
    pub fn is_subset(&self, other: &MSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &MSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Leftmost-prefix subset of measure exactly `theta`.
    pub fn darboux_split(&self, theta: &Rat) -> Result<MSet> {
        let total = self.measure();
        if theta.is_negative() || *theta > total {
            return Err(Error::ThetaOutOfRange {
                theta: theta.to_string(),
                max: total.to_string(),
            });
        }
        let mut remaining = theta.clone();
        let mut out = Vec::new();
        for (lo, hi) in &self.intervals {
            if remaining.is_zero() {
                break;
            }
            let len = hi - lo;
            if len <= remaining {
                remaining -= &len;
                out.push((lo.clone(), hi.clone()));
            } else {
                out.push((lo.clone(), lo + &remaining));
                remaining = Rat::zero();
            }
        }
        Ok(MSet { intervals: out })
    }

    /// Splits into `k` consecutive prefix pieces of equal measure.
    pub fn split_equal(&self, k: usize) -> Vec<MSet> {
        assert!(k >= 1, "split_equal needs at least one piece");
        let piece = self.measure() / Rat::int(k as i64);
        let mut rest = self.clone();
        let mut out = Vec::with_capacity(k);
        for _ in 1..k {
            let head = rest
                .darboux_split(&piece)
                .expect("piece measure never exceeds the remainder");
            rest = rest.difference(&head);
            out.push(head);
        }
        out.push(rest);
        out
    }

    // Merge of the two strictly increasing endpoint sequences; each
    // endpoint toggles membership in its own set.
    fn combine(&self, other: &MSet, keep: impl Fn(bool, bool) -> bool) -> MSet {
        use std::cmp::Ordering;
        let a: Vec<&Rat> = self
            .intervals
            .iter()
            .flat_map(|(lo, hi)| [lo, hi])
            .collect();
        let b: Vec<&Rat> = other
            .intervals
            .iter()
            .flat_map(|(lo, hi)| [lo, hi])
            .collect();
        let (mut i, mut j) = (0, 0);
        let (mut in_a, mut in_b) = (false, false);
        let mut open: Option<&Rat> = None;
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        while i < a.len() || j < b.len() {
            let order = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let x = if order == Ordering::Greater {
                b[j]
            } else {
                a[i]
            };
            if order != Ordering::Greater {
                in_a = !in_a;
                i += 1;
            }
            if order != Ordering::Less {
                in_b = !in_b;
                j += 1;
            }
            match (open, keep(in_a, in_b)) {
                (None, true) => open = Some(x),
                (Some(lo), false) => {
                    out.push((lo.clone(), x.clone()));
                    open = None;
                }
                _ => {}
            }
        }
        MSet { intervals: out }
    }
}
