//! Swapping equal-measure sets between two atoms and the resulting entropy
//! increments `Δ(V, W, λ)`.
//!
//! For `A` with atoms `A_1 ⊃ V`, `A_2 ⊃ W` and `P(A_2)/P(A_1) = λ`, the
//! transport `T_{V,W}` moves `V` into the second atom and `W` into the first.
//! The increment `I(T A) − I(A)` does not depend on which such `A` is used,
//! so [`delta_lambda`] builds a two-atom representative itself.

use serde::{Deserialize, Serialize};

use crate::algebras::Algebra;
use crate::entropies::EntropySpec;
use crate::error::{Error, Result};
use crate::measure_space::{MSet, Rat};

/// Evaluation ratio behind [`delta`]; `log₂ 2 = 1`.
pub const CANONICAL_LAMBDA: i64 = 2;

/// Sets `v`, `w` to be swapped between two atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapPair {
    pub v: MSet,
    pub w: MSet,
}

impl SwapPair {
    pub fn new(v: MSet, w: MSet) -> SwapPair {
        SwapPair { v, w }
    }

    pub fn reversed(&self) -> SwapPair {
        SwapPair {
            v: self.w.clone(),
            w: self.v.clone(),
        }
    }

    fn require_disjoint(&self) -> Result<()> {
        if self.v.is_disjoint(&self.w) {
            Ok(())
        } else {
            Err(Error::PairOverlap)
        }
    }

    fn require_equal_measures(&self) -> Result<Rat> {
        let (mv, mw) = (self.v.measure(), self.w.measure());
        if mv != mw {
            return Err(Error::UnequalMeasures {
                v: mv.to_string(),
                w: mw.to_string(),
            });
        }
        Ok(mv)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaResult {
    pub value: f64,
    #[serde(rename = "lambda")]
    pub lambda_used: Rat,
    pub pieces: usize,
    pub crosscheck_residual: f64,
}

/// `ε(λ) = min(1/(1+λ), 1/(1+λ⁻¹))`, the smaller block of a two-block
/// partition whose measures have ratio `λ`.
pub fn epsilon(lambda: &Rat) -> Result<Rat> {
    require_positive(lambda)?;
    let one = Rat::one();
    let a = one.checked_div(&(&one + lambda))?;
    let b = &one - &a;
    Ok(a.min(b))
}

fn require_positive(lambda: &Rat) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveLambda(lambda.to_string()))
    }
}

// Atom indices (i, j), i ≠ j, with v ⊂ A_i and w ⊂ A_j; first in
// lexicographic order.
fn family_atoms(a: &Algebra, p: &SwapPair) -> Option<(usize, usize)> {
    let holds_v: Vec<usize> = (0..a.atom_count())
        .filter(|&i| p.v.is_subset(&a.atoms()[i]))
        .collect();
    let holds_w: Vec<usize> = (0..a.atom_count())
        .filter(|&j| p.w.is_subset(&a.atoms()[j]))
        .collect();
    holds_v
        .iter()
        .flat_map(|&i| holds_w.iter().map(move |&j| (i, j)))
        .find(|(i, j)| i != j)
}

/// If `a ∈ F^λ_{V,W}` for some `λ`, returns that `λ = P(atom ⊃ w) / P(atom ⊃ v)`.
pub fn in_family(a: &Algebra, p: &SwapPair) -> Result<Option<Rat>> {
    p.require_disjoint()?;
    Ok(family_atoms(a, p).map(|(i, j)| a.atoms()[j].measure() / a.atoms()[i].measure()))
}

/// `T_{V,W}`: swaps `v` and `w` between the atoms that contain them.
pub fn transport(a: &Algebra, p: &SwapPair) -> Result<Algebra> {
    p.require_equal_measures()?;
    if p.v.is_empty() && p.w.is_empty() {
        return Ok(a.clone());
    }
    p.require_disjoint()?;
    let (i, j) = family_atoms(a, p).ok_or(Error::NotInFamily)?;
    let mut atoms = a.atoms().to_vec();
    atoms[i] = atoms[i].difference(&p.v).union(&p.w);
    atoms[j] = atoms[j].difference(&p.w).union(&p.v);
    Ok(Algebra::from_partition(atoms))
}

/// Two-atom `⟨A_1, A_2⟩ ∈ F^λ_{V,W}` with `P(A_1) = 1/(1+λ)`; the filler
/// around `v` is the leftmost prefix of `Ω ∖ (v ∪ w)`.
pub fn make_family_algebra(p: &SwapPair, lambda: &Rat) -> Result<Algebra> {
    p.require_disjoint()?;
    let bound = epsilon(lambda)?;
    for set in [&p.v, &p.w] {
        let m = set.measure();
        if m > bound {
            return Err(Error::SwapTooLarge {
                measure: m.to_string(),
                bound: bound.to_string(),
            });
        }
    }
    let first_mass = Rat::one() / (Rat::one() + lambda);
    let free = p.v.union(&p.w).complement();
    let filler = free.darboux_split(&(&first_mass - p.v.measure()))?;
    let first = p.v.union(&filler);
    let second = first.complement();
    Ok(Algebra::from_partition(vec![first, second]))
}

/// Two-atom `B ⊥ a` with `B ∈ F^κ_{V,W}`: every atom of `a` is cut into a
/// `κ`-ratio pair, `v` staying on the first side and `w` on the second,
/// and `B_j` collects the `j`-th sides.
pub fn make_independent_family_algebra(a: &Algebra, p: &SwapPair, kappa: &Rat) -> Result<Algebra> {
    p.require_disjoint()?;
    let eps_kappa = epsilon(kappa)?;
    let (iv, iw) = family_atoms(a, p).ok_or(Error::NotInFamily)?;
    let atoms = a.atoms();
    let (pv_atom, pw_atom) = (atoms[iv].measure(), atoms[iw].measure());
    let lambda = &pw_atom / &pv_atom;
    let bound = eps_kappa * epsilon(&lambda)? * (&pv_atom + &pw_atom);
    for set in [&p.v, &p.w] {
        let m = set.measure();
        if m > bound {
            return Err(Error::SwapTooLarge {
                measure: m.to_string(),
                bound: bound.to_string(),
            });
        }
    }

    let share = Rat::one() / (Rat::one() + kappa);
    let mut first = MSet::empty();
    for (idx, atom) in atoms.iter().enumerate() {
        let target = atom.measure() * &share;
        let side = if idx == iv {
            let filler = atom
                .difference(&p.v)
                .darboux_split(&(&target - p.v.measure()))?;
            p.v.union(&filler)
        } else if idx == iw {
            atom.difference(&p.w).darboux_split(&target)?
        } else {
            atom.darboux_split(&target)?
        };
        first = first.union(&side);
    }
    let second = first.complement();
    Ok(Algebra::from_partition(vec![first, second]))
}

/// `Δ(V, W, λ)` for equal-measure `v`, `w` of any size and overlap.
///
/// The overlap `v ∩ w` is dropped, the remainders are cut into `k` equal
/// prefix pieces of measure below `min(ε(λ), 1/4)`, and the increments of
/// the piecewise swaps are summed in piece order.
pub fn delta_lambda(spec: &EntropySpec, p: &SwapPair, lambda: &Rat) -> Result<DeltaResult> {
    p.require_equal_measures()?;
    let bound = epsilon(lambda)?.min(Rat::frac(1, 4));
    let v = p.v.difference(&p.w);
    let w = p.w.difference(&p.v);
    let mass = v.measure();
    if mass.is_zero() {
        return Ok(DeltaResult {
            value: 0.0,
            lambda_used: lambda.clone(),
            pieces: 1,
            crosscheck_residual: 0.0,
        });
    }
    // Smallest k with mass / k < bound.
    let k = (&mass / &bound).floor_int() + 1u32;
    let k: usize = k.try_into().expect("piece count fits in usize");
    let value = v
        .split_equal(k)
        .into_iter()
        .zip(w.split_equal(k))
        .map(|(vp, wp)| {
            let piece = SwapPair::new(vp, wp);
            let a = make_family_algebra(&piece, lambda)?;
            let moved = transport(&a, &piece)?;
            Ok(spec.eval(&moved) - spec.eval(&a))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .sum();
    Ok(DeltaResult {
        value,
        lambda_used: lambda.clone(),
        pieces: k,
        crosscheck_residual: 0.0,
    })
}

/// `Δ(V, W)`, the coefficient in `Δ(V, W, λ) = Δ(V, W) · log₂ λ`, read off
/// at `λ = 2` and cross-checked against `λ = 4`.
pub fn delta(spec: &EntropySpec, p: &SwapPair) -> Result<DeltaResult> {
    delta_checked(spec, p, &Rat::int(CANONICAL_LAMBDA))
}

/// [`delta_lambda`] with the log-law cross-check `|Δ(λ²) − 2 Δ(λ)|` filled in.
pub fn delta_checked(spec: &EntropySpec, p: &SwapPair, lambda: &Rat) -> Result<DeltaResult> {
    let mut at = delta_lambda(spec, p, lambda)?;
    let squared = delta_lambda(spec, p, &(lambda * lambda))?;
    at.crosscheck_residual = (squared.value - 2.0 * at.value).abs();
    Ok(at)
}
