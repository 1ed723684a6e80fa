//! Additive partition entropies as evaluable specifications.
//!
//! All logarithms are base 2. Atom probabilities and signed-measure values
//! are exact until the final conversion feeding `log2`/`powf`.

use serde::{Deserialize, Serialize};

use crate::algebras::Algebra;
use crate::error::{Error, Result};
use crate::measure_space::{Rat, SignedMeasure, SimpleFunction};

/// Rényi order, any rational except 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Rat", into = "Rat")]
pub struct RenyiOrder(Rat);

impl RenyiOrder {
    pub fn new(alpha: Rat) -> Result<RenyiOrder> {
        if alpha == Rat::one() {
            return Err(Error::RenyiOrderOne);
        }
        Ok(RenyiOrder(alpha))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl TryFrom<Rat> for RenyiOrder {
    type Error = Error;

    fn try_from(alpha: Rat) -> Result<RenyiOrder> {
        RenyiOrder::new(alpha)
    }
}

impl From<RenyiOrder> for Rat {
    fn from(order: RenyiOrder) -> Rat {
        order.0
    }
}

/// Description of an entropy functional on finite algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EntropySpec {
    Shannon,
    Renyi {
        alpha: RenyiOrder,
    },
    Hartley,
    #[serde(rename = "min")]
    MinInfo,
    #[serde(rename = "max")]
    MaxInfo,
    Variance,
    Lm {
        measure: SignedMeasure,
    },
    Combo {
        terms: Vec<ComboTerm>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComboTerm {
    pub weight: Rat,
    pub spec: EntropySpec,
}

impl EntropySpec {
    pub fn renyi(alpha: Rat) -> Result<EntropySpec> {
        Ok(EntropySpec::Renyi {
            alpha: RenyiOrder::new(alpha)?,
        })
    }

    pub fn lm(measure: SignedMeasure) -> EntropySpec {
        EntropySpec::Lm { measure }
    }

    pub fn combo(terms: impl IntoIterator<Item = (Rat, EntropySpec)>) -> EntropySpec {
        EntropySpec::Combo {
            terms: terms
                .into_iter()
                .map(|(weight, spec)| ComboTerm { weight, spec })
                .collect(),
        }
    }

    /// `Shannon + L_m`, the canonical mixed example.
    pub fn shannon_plus_lm(measure: SignedMeasure) -> EntropySpec {
        EntropySpec::combo([
            (Rat::one(), EntropySpec::Shannon),
            (Rat::one(), EntropySpec::lm(measure)),
        ])
    }

    /// True when the value can only depend on the multiset of atom measures,
    /// i.e. no `L_m` term occurs anywhere.
    pub fn is_atom_measure_only(&self) -> bool {
        match self {
            EntropySpec::Lm { .. } => false,
            EntropySpec::Combo { terms } => terms.iter().all(|t| t.spec.is_atom_measure_only()),
            _ => true,
        }
    }

    pub fn eval(&self, a: &Algebra) -> f64 {
        match self {
            EntropySpec::Shannon => {
                let probs = sorted_probs(a);
                probs.iter().map(|&p| p * info(p)).sum()
            }
            EntropySpec::Renyi { alpha } => renyi(&sorted_probs(a), alpha.value().to_f64()),
            EntropySpec::Hartley => renyi(&sorted_probs(a), 0.0),
            EntropySpec::MinInfo => {
                // Largest atom carries the smallest information.
                let probs = sorted_probs(a);
                info(*probs.last().expect("algebras have atoms"))
            }
            EntropySpec::MaxInfo => {
                let probs = sorted_probs(a);
                info(probs[0])
            }
            EntropySpec::Variance => {
                let probs = sorted_probs(a);
                let mean: f64 = probs.iter().map(|&p| p * info(p)).sum();
                probs.iter().map(|&p| p * (info(p) - mean).powi(2)).sum()
            }
            EntropySpec::Lm { measure } => a
                .atoms()
                .iter()
                .map(|atom| {
                    let mass = measure.eval(atom);
                    if mass.is_zero() {
                        0.0
                    } else {
                        mass.to_f64() * info(atom.measure().to_f64())
                    }
                })
                .sum(),
            EntropySpec::Combo { terms } => terms
                .iter()
                .map(|t| t.weight.to_f64() * t.spec.eval(a))
                .sum(),
        }
    }
}

/// Convenience wrapper matching [`EntropySpec::eval`].
pub fn eval_entropy(spec: &EntropySpec, a: &Algebra) -> f64 {
    spec.eval(a)
}

fn info(p: f64) -> f64 {
    -p.log2()
}

// Exact sort before conversion so that algebras with equal atom-measure
// multisets produce bit-identical sums.
fn sorted_probs(a: &Algebra) -> Vec<f64> {
    let mut measures = a.atom_measures();
    measures.sort();
    measures.iter().map(Rat::to_f64).collect()
}

fn renyi(probs: &[f64], alpha: f64) -> f64 {
    let power_sum: f64 = probs.iter().map(|&p| p.powf(alpha)).sum();
    power_sum.log2() / (1.0 - alpha)
}

/// `L(A)`: value `log₂(1/P(A_i))` on atom `A_i`.
pub fn information_function(a: &Algebra) -> SimpleFunction {
    let pieces = a
        .atoms()
        .iter()
        .map(|atom| (atom.clone(), info(atom.measure().to_f64())))
        .collect();
    SimpleFunction::new(pieces).expect("atoms partition the space")
}

/// Cumulant generating function of `L(A)`: `log₂ Σ P(A_i)^{1−t}`.
pub fn cgf(a: &Algebra, t: f64) -> f64 {
    let power_sum: f64 = sorted_probs(a).iter().map(|&p| p.powf(1.0 - t)).sum();
    power_sum.log2()
}

/// `|I(A·B) − I(A) − I(B)|` for independent `a`, `b`.
pub fn additivity_residual(spec: &EntropySpec, a: &Algebra, b: &Algebra) -> Result<f64> {
    if !a.is_independent(b) {
        return Err(Error::NotIndependent);
    }
    Ok((spec.eval(&a.join(b)) - spec.eval(a) - spec.eval(b)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::AtomProfile;
    use crate::measure_space::MSet;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    fn algebra(cuts: &[(i64, i64)]) -> Algebra {
        let mut pts = vec![Rat::zero()];
        pts.extend(cuts.iter().map(|&(n, d)| r(n, d)));
        pts.push(Rat::one());
        Algebra::new(
            pts.windows(2)
                .map(|w| MSet::interval(w[0].clone(), w[1].clone()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn half_density() -> SignedMeasure {
        SignedMeasure::new(vec![r(0, 1), r(1, 2), r(1, 1)], vec![r(2, 1), r(0, 1)]).unwrap()
    }

    #[test]
    fn information_function_examples() {
        let f = information_function(&Algebra::equipartition(2));
        assert!(f.pieces().iter().all(|(_, v)| *v == 1.0));
        let f = information_function(&Algebra::trivial());
        assert_eq!(f.pieces()[0].1, 0.0);
        let f = information_function(&algebra(&[(1, 4)]));
        assert_eq!(f.pieces()[0].1, 2.0);
        assert!((f.pieces()[1].1 - (4.0f64 / 3.0).log2()).abs() < 1e-15);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(EntropySpec::Shannon.eval(&Algebra::equipartition(2)), 1.0);
        let four = algebra(&[(1, 8), (1, 2), (3, 5)]);
        assert_eq!(EntropySpec::Hartley.eval(&four), 2.0);
        assert!(EntropySpec::Variance.eval(&Algebra::equipartition(8)).abs() < 1e-15);
        assert_eq!(
            EntropySpec::lm(half_density()).eval(&Algebra::equipartition(2)),
            1.0
        );
        let quarter_pair = algebra(&[(1, 2), (3, 4)]);
        let r2 = EntropySpec::renyi(r(2, 1)).unwrap().eval(&quarter_pair);
        assert!((r2 - (-(3.0f64 / 8.0).log2())).abs() < 1e-12);
        assert!((r2 - 1.415_037_499_278_843_8).abs() < 1e-12);
    }

    #[test]
    fn min_max_info() {
        let a = algebra(&[(1, 4)]);
        assert_eq!(EntropySpec::MaxInfo.eval(&a), 2.0);
        assert!((EntropySpec::MinInfo.eval(&a) - (4.0f64 / 3.0).log2()).abs() < 1e-15);
    }

    #[test]
    fn renyi_order_one_rejected() {
        assert_eq!(
            EntropySpec::renyi(Rat::one()).unwrap_err(),
            Error::RenyiOrderOne
        );
        let err = serde_json::from_str::<EntropySpec>(r#"{"kind":"renyi","alpha":"1/1"}"#);
        assert!(err.is_err());
    }

    #[test]
    fn cgf_examples() {
        let four = Algebra::equipartition(4);
        assert!(cgf(&algebra(&[(1, 3)]), 0.0).abs() < 1e-15);
        assert_eq!(cgf(&four, 1.0), 2.0);
        assert_eq!(cgf(&Algebra::equipartition(2), -1.0), -1.0);
    }

    #[test]
    fn additivity_examples() {
        let a = algebra(&[(1, 3)]);
        let b = a.independent_with_profile(&AtomProfile::new(vec![r(1, 4), r(3, 4)]).unwrap());
        let res = additivity_residual(&EntropySpec::Shannon, &a, &b).unwrap();
        assert!(res <= 1e-9);
        let res = additivity_residual(&EntropySpec::lm(half_density()), &a, &b).unwrap();
        assert!(res <= 1e-9);
        let res = additivity_residual(&EntropySpec::Variance, &a, &Algebra::trivial()).unwrap();
        assert!(res <= 1e-15);
        assert_eq!(
            additivity_residual(&EntropySpec::Shannon, &a, &a).unwrap_err(),
            Error::NotIndependent
        );
    }

    #[test]
    fn json_forms() {
        let spec = EntropySpec::combo([
            (r(1, 1), EntropySpec::Shannon),
            (r(-1, 2), EntropySpec::renyi(r(2, 1)).unwrap()),
            (r(3, 1), EntropySpec::MinInfo),
        ]);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"combo","terms":[{"weight":"1/1","spec":{"kind":"shannon"}},{"weight":"-1/2","spec":{"kind":"renyi","alpha":"2/1"}},{"weight":"3/1","spec":{"kind":"min"}}]}"#
        );
        let back: EntropySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let lm: EntropySpec = serde_json::from_str(
            r#"{"kind":"lm","measure":{"breakpoints":["0/1","1/2","1/1"],"densities":["2/1","0/1"]}}"#,
        )
        .unwrap();
        assert_eq!(lm, EntropySpec::lm(half_density()));
        assert!(!lm.is_atom_measure_only());
        assert!(spec.is_atom_measure_only());
    }

    #[test]
    fn lm_distinguishes_measures() {
        // Two measures with different mass on A, P(A) = 1/4.
        let a = algebra(&[(1, 4)]);
        let m1 = SignedMeasure::constant(Rat::one());
        let m2 =
            SignedMeasure::new(vec![r(0, 1), r(1, 4), r(1, 1)], vec![r(2, 1), r(2, 3)]).unwrap();
        assert_eq!(m1.total(), m2.total());
        let d = EntropySpec::lm(m1).eval(&a) - EntropySpec::lm(m2).eval(&a);
        assert!(d.abs() > 1e-3);
    }
}
