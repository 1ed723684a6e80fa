//! Splitting an additive partition entropy into `H_P + L_m`.
//!
//! The hidden measure is read off the `n`-cell equipartition through
//! `m̂(A_j) = (1/n) Σ_i Δ(A_i, A_j)`, which fixes the normalisation
//! `m̂(Ω) = 0`. The residual `I − L_m̂` must then depend on atom measures
//! alone; [`verify_atom_dependence`] probes that on random pairs of
//! algebras sharing an atom-measure multiset.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebras::{Algebra, AtomProfile};
use crate::entropies::EntropySpec;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::measure_space::{MSet, Rat};
use crate::random::{random_algebra, random_independent_pair, random_profile, trial_rng};
use crate::transport_delta::{delta_lambda, SwapPair, CANONICAL_LAMBDA};

/// Largest atom count used by the random probes.
pub const PROBE_MAX_ATOMS: usize = 8;

/// Extracted measure on the `n`-cell equipartition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeasure {
    n: usize,
    #[serde(rename = "cells")]
    cell_values: Vec<f64>,
}

impl GridMeasure {
    pub fn new(cell_values: Vec<f64>) -> Result<GridMeasure> {
        let n = cell_values.len();
        check_grid(n)?;
        Ok(GridMeasure { n, cell_values })
    }

    pub fn zeros(n: usize) -> Result<GridMeasure> {
        GridMeasure::new(vec![0.0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_values(&self) -> &[f64] {
        &self.cell_values
    }

    /// `m̂(Ω)`; zero up to rounding for extracted grids.
    pub fn total(&self) -> f64 {
        self.cell_values.iter().sum()
    }

    /// Sums adjacent cell pairs, giving the grid of half the size.
    pub fn coarsen(&self) -> Option<GridMeasure> {
        if self.n < 4 {
            return None;
        }
        let cells = self.cell_values.chunks(2).map(|c| c[0] + c[1]).collect();
        Some(GridMeasure {
            n: self.n / 2,
            cell_values: cells,
        })
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidGrid(n))
    }
}

/// Step density `n · cell_values[j]` on cell `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepDensity {
    n: usize,
    densities: Vec<f64>,
}

impl StepDensity {
    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    /// `m̂(a)` by integrating the density over each interval of `a`.
    pub fn eval(&self, a: &MSet) -> f64 {
        let n = self.n as i64;
        let mut total = 0.0;
        for (lo, hi) in a.intervals() {
            let first: i64 = (lo * Rat::int(n))
                .floor_int()
                .try_into()
                .expect("cell index");
            for cell in first..n {
                let left = Rat::frac(cell, n);
                if left >= *hi {
                    break;
                }
                let right = Rat::frac(cell + 1, n);
                let overlap = hi.clone().min(right) - lo.clone().max(left);
                if overlap.is_positive() {
                    total += overlap.to_f64() * self.densities[cell as usize];
                }
            }
        }
        total
    }
}

pub fn grid_to_density(g: &GridMeasure) -> StepDensity {
    let scale = g.n as f64;
    StepDensity {
        n: g.n,
        densities: g.cell_values.iter().map(|v| v * scale).collect(),
    }
}

/// `m̂` on the `n`-cell equipartition, `n` a power of two.
pub fn extract_measure(spec: &EntropySpec, n: usize) -> Result<GridMeasure> {
    extract_measure_with(spec, n, Exec::default())
}

pub fn extract_measure_with(spec: &EntropySpec, n: usize, exec: Exec) -> Result<GridMeasure> {
    check_grid(n)?;
    let cells = Algebra::equipartition(n).into_atoms();
    let lambda = Rat::int(CANONICAL_LAMBDA);
    // deltas[i * n + j] = Δ(A_i, A_j); log₂ λ = 1 so the λ = 2 increment is Δ itself.
    let deltas = exec.map_indexed(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        if i == j {
            return Ok(0.0);
        }
        let pair = SwapPair::new(cells[i].clone(), cells[j].clone());
        delta_lambda(spec, &pair, &lambda).map(|d| d.value)
    });
    let deltas = deltas.into_iter().collect::<Result<Vec<f64>>>()?;
    let cell_values = (0..n)
        .map(|j| (0..n).map(|i| deltas[i * n + j]).sum::<f64>() / n as f64)
        .collect();
    Ok(GridMeasure { n, cell_values })
}

/// The derived functional `Ĩ = I − L_m̂`.
#[derive(Clone, Debug)]
pub struct ResidualEntropy {
    spec: EntropySpec,
    density: StepDensity,
}

impl ResidualEntropy {
    pub fn new(spec: EntropySpec, grid: &GridMeasure) -> ResidualEntropy {
        ResidualEntropy {
            spec,
            density: grid_to_density(grid),
        }
    }

    pub fn spec(&self) -> &EntropySpec {
        &self.spec
    }

    pub fn eval(&self, a: &Algebra) -> f64 {
        let lm: f64 = a
            .atoms()
            .iter()
            .map(|atom| self.density.eval(atom) * -atom.measure().to_f64().log2())
            .sum();
        self.spec.eval(a) - lm
    }
}

/// `I(a) − Σ_i m̂(A_i) log₂(1/P(A_i))`.
pub fn residual_eval(spec: &EntropySpec, g: &GridMeasure, a: &Algebra) -> f64 {
    ResidualEntropy::new(spec.clone(), g).eval(a)
}

/// Largest residual gap over `trials` random pairs of algebras with equal
/// atom-measure multisets.
pub fn verify_atom_dependence(
    spec: &EntropySpec,
    g: &GridMeasure,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    atom_dependence_with(
        &ResidualEntropy::new(spec.clone(), g),
        trials,
        seed,
        Exec::default(),
    )
}

fn atom_dependence_with(
    residual: &ResidualEntropy,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let gaps = exec.map_indexed(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let (a, b) = same_measure_pair(&mut rng);
        (residual.eval(&a) - residual.eval(&b)).abs()
    });
    Ok(gaps.into_iter().fold(0.0, f64::max))
}

/// Two placements of one random profile (the second in shuffled order),
/// each independent of its own random base algebra.
pub fn same_measure_pair<R: Rng>(rng: &mut R) -> (Algebra, Algebra) {
    let k = rng.gen_range(2..=PROBE_MAX_ATOMS);
    let profile = random_profile(rng, k);
    let mut shuffled = profile.weights().to_vec();
    shuffled.shuffle(rng);
    let shuffled = AtomProfile::new(shuffled).expect("permutation of a profile");
    let a = random_algebra(rng, PROBE_MAX_ATOMS).independent_with_profile(&profile);
    let b = random_algebra(rng, PROBE_MAX_ATOMS).independent_with_profile(&shuffled);
    (a, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub grid: GridMeasure,
    #[serde(skip)]
    pub residual: ResidualEntropy,
    pub atom_dependence_deviation: f64,
    pub additivity_deviation: f64,
    pub trials: usize,
}

/// Extracts `m̂`, then checks that the residual depends on atom measures
/// only and is itself additive.
pub fn decompose(
    spec: &EntropySpec,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DecompositionReport> {
    decompose_with(spec, n, trials, seed, Exec::default())
}

pub fn decompose_with(
    spec: &EntropySpec,
    n: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<DecompositionReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let grid = extract_measure_with(spec, n, exec)?;
    let residual = ResidualEntropy::new(spec.clone(), &grid);
    let atom_dependence_deviation = atom_dependence_with(&residual, trials, seed, exec)?;
    let gaps = exec.map_indexed(trials, |t| {
        // Streams after the atom-dependence ones.
        let mut rng = trial_rng(seed, trials + t);
        let (a, b) = random_independent_pair(&mut rng, PROBE_MAX_ATOMS);
        (residual.eval(&a.join(&b)) - residual.eval(&a) - residual.eval(&b)).abs()
    });
    let additivity_deviation = gaps.into_iter().fold(0.0, f64::max);
    Ok(DecompositionReport {
        grid,
        residual,
        atom_dependence_deviation,
        additivity_deviation,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_space::SignedMeasure;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    fn half_density() -> SignedMeasure {
        SignedMeasure::new(vec![r(0, 1), r(1, 2), r(1, 1)], vec![r(2, 1), r(0, 1)]).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert_eq!(GridMeasure::zeros(3).unwrap_err(), Error::InvalidGrid(3));
        assert_eq!(GridMeasure::zeros(1).unwrap_err(), Error::InvalidGrid(1));
        assert_eq!(
            extract_measure(&EntropySpec::Shannon, 6)
                .unwrap_err()
                .code(),
            "invalid_grid"
        );
    }

    #[test]
    fn shannon_extracts_to_zero() {
        let g = extract_measure(&EntropySpec::Shannon, 4).unwrap();
        assert!(g.cell_values().iter().all(|v| v.abs() <= 1e-10));
    }

    #[test]
    fn lm_extracts_to_centred_measure() {
        let m = half_density();
        let spec = EntropySpec::lm(m.clone());
        let g = extract_measure(&spec, 4).unwrap();
        let shift = m.total() / Rat::int(4);
        for (j, cell) in Algebra::equipartition(4).atoms().iter().enumerate() {
            let expected = (m.eval(cell) - &shift).to_f64();
            assert!((g.cell_values()[j] - expected).abs() <= 1e-8);
        }
        let mixed = extract_measure(&EntropySpec::shannon_plus_lm(m), 4).unwrap();
        for (x, y) in mixed.cell_values().iter().zip(g.cell_values()) {
            assert!((x - y).abs() <= 1e-8);
        }
    }

    #[test]
    fn density_examples() {
        let zero = grid_to_density(&GridMeasure::zeros(4).unwrap());
        assert!(zero.densities().iter().all(|&d| d == 0.0));
        let d = grid_to_density(&GridMeasure::new(vec![0.5, -0.5]).unwrap());
        assert_eq!(d.densities(), &[1.0, -1.0]);
        let a = MSet::interval(r(1, 4), r(3, 4)).unwrap();
        assert_eq!(d.eval(&a), 0.0);
        assert_eq!(
            d.eval(&MSet::interval(r(0, 1), r(1, 3)).unwrap()),
            1.0 / 3.0
        );
    }

    #[test]
    fn residual_examples() {
        let zeros = GridMeasure::zeros(2).unwrap();
        let a = Algebra::equipartition(4);
        assert_eq!(residual_eval(&EntropySpec::Shannon, &zeros, &a), 2.0);
        assert_eq!(
            residual_eval(&EntropySpec::Shannon, &zeros, &Algebra::trivial()),
            0.0
        );

        let spec = EntropySpec::shannon_plus_lm(half_density());
        let g = extract_measure(&spec, 2).unwrap();
        let res = residual_eval(&spec, &g, &Algebra::equipartition(2));
        assert!((res - 2.0).abs() <= 1e-8);
    }

    #[test]
    fn atom_dependence_probes() {
        let zeros = GridMeasure::zeros(4).unwrap();
        let dev = verify_atom_dependence(&EntropySpec::Variance, &zeros, 20, 3).unwrap();
        assert!(dev <= 1e-12);
        let dev = verify_atom_dependence(&EntropySpec::lm(half_density()), &zeros, 20, 3).unwrap();
        assert!(dev > 1e-3);
        assert_eq!(
            verify_atom_dependence(&EntropySpec::Shannon, &zeros, 0, 3).unwrap_err(),
            Error::NoTrials
        );
    }

    #[test]
    fn decompose_renyi_gives_zero_grid() {
        let spec = EntropySpec::renyi(r(2, 1)).unwrap();
        let report = decompose(&spec, 4, 20, 5).unwrap();
        assert!(report.grid.cell_values().iter().all(|v| v.abs() <= 1e-8));
        assert!(report.atom_dependence_deviation <= 1e-8);
        assert!(report.additivity_deviation <= 1e-8);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let spec = EntropySpec::shannon_plus_lm(half_density());
        let a = extract_measure_with(&spec, 8, Exec::Sequential).unwrap();
        let b = extract_measure_with(&spec, 8, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_json_shape() {
        let report = decompose(&EntropySpec::Shannon, 2, 3, 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["grid"]["n"], 2);
        assert_eq!(json["grid"]["cells"].as_array().unwrap().len(), 2);
        assert_eq!(json["trials"], 3);
        assert!(json.get("residual").is_none());
    }
}
