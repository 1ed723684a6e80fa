//! Seeded generators for sets, algebras, profiles and measures used by the
//! verification suites.
//!
//! Every trial draws from its own ChaCha8 stream (seed, stream = trial index),
//! so results do not depend on the order in which trials run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{Algebra, AtomProfile};
use crate::measure_space::{MSet, Rat, SignedMeasure};
use crate::transport_delta::{epsilon, SwapPair};

/// Name recorded in reports next to the seed.
pub const GENERATOR: &str = "ChaCha8Rng/rand_chacha-0.3;stream=trial";

/// Largest denominator used for random atom measures and cell grids.
pub const MAX_DENOM: i64 = 64;

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// `k` positive weights with a common denominator of at most [`MAX_DENOM`].
pub fn random_profile<R: Rng>(rng: &mut R, k: usize) -> AtomProfile {
    assert!((1..=MAX_DENOM as usize).contains(&k));
    let q = rng.gen_range(k as i64..=MAX_DENOM);
    let mut cuts: Vec<i64> = (1..q).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<i64> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(q);
    let weights = cuts.windows(2).map(|w| Rat::frac(w[1] - w[0], q)).collect();
    AtomProfile::new(weights).expect("composition of q is a valid profile")
}

/// Random algebra with `2..=max_atoms` atoms, each a union of cells of a
/// random grid of at most [`MAX_DENOM`] cells.
pub fn random_algebra<R: Rng>(rng: &mut R, max_atoms: usize) -> Algebra {
    let k = rng.gen_range(2..=max_atoms.max(2));
    let q = rng.gen_range(k as i64..=MAX_DENOM);
    let mut owner: Vec<usize> = (0..q as usize)
        .map(|c| if c < k { c } else { rng.gen_range(0..k) })
        .collect();
    owner.shuffle(rng);
    let mut atoms = vec![Vec::new(); k];
    for (cell, &o) in owner.iter().enumerate() {
        let c = cell as i64;
        atoms[o].push((Rat::frac(c, q), Rat::frac(c + 1, q)));
    }
    let atoms = atoms
        .into_iter()
        .map(|iv| MSet::normalize(iv).expect("grid cells lie in [0,1)"))
        .collect();
    Algebra::new(atoms).expect("cells partition the space")
}

/// Independent pair: a random algebra and a random-profile algebra built
/// against it, in random order.
pub fn random_independent_pair<R: Rng>(rng: &mut R, max_atoms: usize) -> (Algebra, Algebra) {
    let a = random_algebra(rng, max_atoms);
    let k = rng.gen_range(2..=max_atoms.max(2));
    let b = a.independent_with_profile(&random_profile(rng, k));
    if rng.gen_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Random union of cells of a random grid; may be empty.
pub fn random_mset<R: Rng>(rng: &mut R) -> MSet {
    let q = rng.gen_range(1..=MAX_DENOM);
    let intervals = (0..q)
        .filter(|_| rng.gen_bool(0.5))
        .map(|c| (Rat::frac(c, q), Rat::frac(c + 1, q)))
        .collect();
    MSet::normalize(intervals).expect("grid cells lie in [0,1)")
}

/// Random subset of `set` with measure exactly `theta`: the set is cut at
/// the `1/MAX_DENOM` grid, the pieces are shuffled and taken greedily, the
/// last one through a prefix split.
pub fn random_subset<R: Rng>(rng: &mut R, set: &MSet, theta: &Rat) -> MSet {
    assert!(*theta <= set.measure() && !theta.is_negative());
    let mut cells: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); MAX_DENOM as usize];
    let grid = Rat::int(MAX_DENOM);
    for (lo, hi) in set.intervals() {
        let first = (lo * &grid).floor_int();
        let first: i64 = first.try_into().expect("endpoint in [0,1]");
        for c in first..MAX_DENOM {
            let (cell_lo, cell_hi) = (Rat::frac(c, MAX_DENOM), Rat::frac(c + 1, MAX_DENOM));
            if cell_lo >= *hi {
                break;
            }
            let piece = (lo.clone().max(cell_lo), hi.clone().min(cell_hi));
            if piece.0 < piece.1 {
                cells[c as usize].push(piece);
            }
        }
    }
    let mut pieces: Vec<MSet> = cells
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| MSet::normalize(c).expect("clipped intervals lie in [0,1)"))
        .collect();
    pieces.shuffle(rng);
    let mut remaining = theta.clone();
    let mut out = MSet::empty();
    for piece in pieces {
        if remaining.is_zero() {
            break;
        }
        let m = piece.measure();
        if m <= remaining {
            remaining -= &m;
            out = out.union(&piece);
        } else {
            out = out.union(&piece.darboux_split(&remaining).unwrap());
            remaining = Rat::zero();
        }
    }
    out
}

/// Positive rational `j / q` not exceeding `max`, with `q ≤ MAX_DENOM`.
pub fn random_measure_below<R: Rng>(rng: &mut R, max: &Rat) -> Rat {
    loop {
        let q = rng.gen_range(2..=MAX_DENOM);
        let top = (max * Rat::int(q)).floor_int();
        let top: i64 = top.try_into().unwrap_or(q);
        if top >= 1 {
            return Rat::frac(rng.gen_range(1..=top), q);
        }
    }
}

/// Disjoint `v`, `w` of the common measure `theta`.
pub fn random_disjoint_pair<R: Rng>(rng: &mut R, theta: &Rat) -> SwapPair {
    let v = random_subset(rng, &MSet::omega(), theta);
    let w = random_subset(rng, &v.complement(), theta);
    SwapPair::new(v, w)
}

/// Random member of `F^λ_{V,W}` with possibly several atoms. Requires
/// disjoint `v`, `w` of equal measure at most `ε(λ)`.
pub fn random_family_algebra<R: Rng>(rng: &mut R, p: &SwapPair, lambda: &Rat) -> Algebra {
    let pv = p.v.measure();
    debug_assert!(pv <= epsilon(lambda).unwrap());
    // P(A_1) = s with s ≥ P(v), λ s ≥ P(w) and (1 + λ) s ≤ 1.
    let lo = pv.clone().max(&pv / lambda);
    let hi = Rat::one() / (Rat::one() + lambda);
    let u = Rat::frac(rng.gen_range(0..=16), 16);
    let s = &lo + (&hi - &lo) * u;

    let free = p.v.union(&p.w).complement();
    let first = p.v.union(&random_subset(rng, &free, &(&s - &pv)));
    let free = free.difference(&first);
    let second = p.w.union(&random_subset(rng, &free, &(lambda * &s - &pv)));
    let mut rest = free.difference(&second);

    let mut atoms = vec![first, second];
    if !rest.is_empty() {
        let k = rng.gen_range(1..=3);
        let profile = random_profile(rng, k);
        let total = rest.measure();
        for c in &profile.weights()[..k - 1] {
            let piece = random_subset(rng, &rest, &(c * &total));
            rest = rest.difference(&piece);
            atoms.push(piece);
        }
        atoms.push(rest);
    }
    Algebra::new(atoms).expect("constructed pieces partition the space")
}

/// Step density with up to 6 rational breakpoints and small signed values.
pub fn random_step_measure<R: Rng>(rng: &mut R) -> SignedMeasure {
    let q = rng.gen_range(2..=16i64);
    let mut cuts: Vec<i64> = (1..q).collect();
    cuts.shuffle(rng);
    let count = rng.gen_range(0..=(q as usize - 1).min(5));
    let mut cuts: Vec<i64> = cuts.into_iter().take(count).collect();
    cuts.sort_unstable();
    let mut breakpoints = vec![Rat::zero()];
    breakpoints.extend(cuts.into_iter().map(|c| Rat::frac(c, q)));
    breakpoints.push(Rat::one());
    let densities = (1..breakpoints.len())
        .map(|_| Rat::frac(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
        .collect();
    SignedMeasure::new(breakpoints, densities).expect("sorted breakpoints")
}
