//! Input files. JSON is read into plain mirror types first and then built
//! through the library constructors, so every invariant violation keeps
//! its own error code instead of collapsing into a JSON error.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use pentropy::{Algebra, AtomProfile, EntropySpec, MSet, Rat, SignedMeasure};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    intervals: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    atoms: Vec<RawSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    weights: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    breakpoints: Vec<String>,
    densities: Vec<String>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    Shannon,
    Renyi { alpha: String },
    Hartley,
    Min,
    Max,
    Variance,
    Lm { measure: RawMeasure },
    Combo { terms: Vec<RawTerm> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    weight: String,
    spec: RawSpec,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: PathBuf::from(path),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: PathBuf::from(path),
        source,
    })
}

pub fn rat(s: &str) -> Result<Rat, CliError> {
    Ok(Rat::from_str(s)?)
}

fn rats(raw: &[String]) -> Result<Vec<Rat>, CliError> {
    raw.iter().map(|s| rat(s)).collect()
}

fn build_set(raw: RawSet) -> Result<MSet, CliError> {
    let intervals = raw
        .intervals
        .iter()
        .map(|(lo, hi)| Ok((rat(lo)?, rat(hi)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(MSet::normalize(intervals)?)
}

fn build_measure(raw: RawMeasure) -> Result<SignedMeasure, CliError> {
    Ok(SignedMeasure::new(
        rats(&raw.breakpoints)?,
        rats(&raw.densities)?,
    )?)
}

fn build_spec(raw: RawSpec) -> Result<EntropySpec, CliError> {
    Ok(match raw {
        RawSpec::Shannon => EntropySpec::Shannon,
        RawSpec::Renyi { alpha } => EntropySpec::renyi(rat(&alpha)?)?,
        RawSpec::Hartley => EntropySpec::Hartley,
        RawSpec::Min => EntropySpec::MinInfo,
        RawSpec::Max => EntropySpec::MaxInfo,
        RawSpec::Variance => EntropySpec::Variance,
        RawSpec::Lm { measure } => EntropySpec::lm(build_measure(measure)?),
        RawSpec::Combo { terms } => EntropySpec::combo(
            terms
                .into_iter()
                .map(|t| Ok((rat(&t.weight)?, build_spec(t.spec)?)))
                .collect::<Result<Vec<_>, CliError>>()?,
        ),
    })
}

pub fn set(path: &Path) -> Result<MSet, CliError> {
    build_set(read(path)?)
}

pub fn algebra(path: &Path) -> Result<Algebra, CliError> {
    let raw: RawAlgebra = read(path)?;
    let atoms = raw
        .atoms
        .into_iter()
        .map(build_set)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Algebra::new(atoms)?)
}

pub fn profile(path: &Path) -> Result<AtomProfile, CliError> {
    let raw: RawProfile = read(path)?;
    Ok(AtomProfile::new(rats(&raw.weights)?)?)
}

pub fn spec(path: &Path) -> Result<EntropySpec, CliError> {
    build_spec(read(path)?)
}
