use serde::{Deserialize, Serialize};

use super::{MSet, Rat};
use crate::error::{Error, Result};

/// Signed measure with a piecewise-constant density on `[0, 1)`.
///
/// `m(A) = Σ_k density_k · |A ∩ [b_k, b_{k+1})|`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct SignedMeasure {
    breakpoints: Vec<Rat>,
    densities: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    breakpoints: Vec<Rat>,
    densities: Vec<Rat>,
}

impl TryFrom<RawMeasure> for SignedMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<SignedMeasure> {
        SignedMeasure::new(raw.breakpoints, raw.densities)
    }
}

impl From<SignedMeasure> for RawMeasure {
    fn from(m: SignedMeasure) -> RawMeasure {
        RawMeasure {
            breakpoints: m.breakpoints,
            densities: m.densities,
        }
    }
}

impl SignedMeasure {
    pub fn new(breakpoints: Vec<Rat>, densities: Vec<Rat>) -> Result<SignedMeasure> {
        let invalid = |msg: &str| Err(Error::InvalidMeasure(msg.to_string()));
        if breakpoints.len() < 2 {
            return invalid("need at least two breakpoints");
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Rat::one() {
            return invalid("breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("breakpoints must be strictly increasing");
        }
        if densities.len() != breakpoints.len() - 1 {
            return invalid("need exactly one density per breakpoint gap");
        }
        Ok(SignedMeasure {
            breakpoints,
            densities,
        })
    }

    /// Constant density `c` on the whole space; `c = 1` is the ambient probability.
    pub fn constant(c: Rat) -> SignedMeasure {
        SignedMeasure {
            breakpoints: vec![Rat::zero(), Rat::one()],
            densities: vec![c],
        }
    }

    /// Density constant on each of `n` equal cells.
    pub fn on_grid(cell_densities: Vec<Rat>) -> SignedMeasure {
        let n = cell_densities.len();
        assert!(n >= 1, "grid needs at least one cell");
        let breakpoints = (0..=n as i64).map(|i| Rat::frac(i, n as i64)).collect();
        SignedMeasure {
            breakpoints,
            densities: cell_densities,
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn densities(&self) -> &[Rat] {
        &self.densities
    }

    /// Exact `m(a)`.
    pub fn eval(&self, a: &MSet) -> Rat {
        let mut total = Rat::zero();
        let mut k = 0;
        for (lo, hi) in a.intervals() {
            // Pieces entirely left of this interval are never needed again.
            while self.breakpoints[k + 1] <= *lo {
                k += 1;
            }
            let mut j = k;
            while j < self.densities.len() && self.breakpoints[j] < *hi {
                let left = if self.breakpoints[j] > *lo {
                    &self.breakpoints[j]
                } else {
                    lo
                };
                let right = if self.breakpoints[j + 1] < *hi {
                    &self.breakpoints[j + 1]
                } else {
                    hi
                };
                if left < right {
                    total += (right - left) * &self.densities[j];
                }
                j += 1;
            }
        }
        total
    }

    /// `m(Ω)`.
    pub fn total(&self) -> Rat {
        self.eval(&MSet::omega())
    }
}

/// A simple function: finitely many disjoint sets covering `[0, 1)`, each
/// carrying a value in `(-∞, +∞]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleFunction {
    pieces: Vec<(MSet, f64)>,
}

impl SimpleFunction {
    pub fn new(pieces: Vec<(MSet, f64)>) -> Result<SimpleFunction> {
        let mut covered = MSet::empty();
        for (i, (set, _)) in pieces.iter().enumerate() {
            if !covered.is_disjoint(set) {
                let j = pieces[..i]
                    .iter()
                    .position(|(s, _)| !s.is_disjoint(set))
                    .unwrap_or(0);
                return Err(Error::AtomOverlap {
                    first: j,
                    second: i,
                });
            }
            covered = covered.union(set);
        }
        if covered != MSet::omega() {
            return Err(Error::AtomGap {
                missing: (Rat::one() - covered.measure()).to_string(),
            });
        }
        Ok(SimpleFunction { pieces })
    }

    pub fn pieces(&self) -> &[(MSet, f64)] {
        &self.pieces
    }

    /// `∫ f dm` with the convention `0 · (+∞) = 0`.
    pub fn integrate(&self, m: &SignedMeasure) -> f64 {
        self.pieces
            .iter()
            .map(|(set, value)| {
                let mass = m.eval(set);
                if mass.is_zero() {
                    0.0
                } else {
                    mass.to_f64() * value
                }
            })
            .sum()
    }
}
