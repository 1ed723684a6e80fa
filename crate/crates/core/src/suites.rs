//! Named property suites behind `pentropy verify`.
//!
//! Each suite runs seeded random trials (one ChaCha stream per trial) and
//! reports, per property, the largest deviation observed against its
//! tolerance. Exact properties report the number of violating trials with
//! tolerance zero.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebras::{max_weight_matching, Algebra, AtomProfile};
use crate::decomposition::{decompose_with, extract_measure_with, GridMeasure};
use crate::entropies::{additivity_residual, EntropySpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::measure_space::{MSet, Rat, SignedMeasure};
use crate::random::{
    random_algebra, random_disjoint_pair, random_family_algebra, random_independent_pair,
    random_measure_below, random_mset, random_profile, random_subset, trial_rng,
};
use crate::transport_delta::{
    delta, delta_lambda, epsilon, in_family, make_family_algebra, make_independent_family_algebra,
    transport, SwapPair,
};

pub const SUITES: [&str; 8] = [
    "set-laws",
    "algebra-laws",
    "additivity",
    "delta-laws",
    "delta-welldef",
    "extraction",
    "decomposition",
    "metrics",
];

/// Single-identity tolerance for float-valued entropies.
pub const TOL_IDENTITY: f64 = 1e-9;
/// Tolerance for identities that aggregate several sums.
pub const TOL_AGGREGATE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyCheck>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn failures(&self) -> Vec<&PropertyCheck> {
        self.properties.iter().filter(|p| !p.passed).collect()
    }
}

/// Direction of a property bound.
#[derive(Clone, Copy)]
enum Bound {
    AtMost(f64),
    // Used for "this must be detected" probes.
    Above(f64),
}

struct Property {
    name: String,
    bound: Bound,
}

fn at_most(name: impl Into<String>, tol: f64) -> Property {
    Property {
        name: name.into(),
        bound: Bound::AtMost(tol),
    }
}

fn exact(name: impl Into<String>) -> Property {
    at_most(name, 0.0)
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteSummary> {
    run_suite_with(name, trials, seed, Exec::default())
}

pub fn run_suite_with(name: &str, trials: usize, seed: u64, exec: Exec) -> Result<SuiteSummary> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let (props, rows): (Vec<Property>, Vec<Vec<f64>>) = match name {
        "set-laws" => (
            set_law_props(),
            per_trial(trials, seed, exec, set_law_trial),
        ),
        "algebra-laws" => (
            algebra_law_props(),
            per_trial(trials, seed, exec, algebra_law_trial),
        ),
        "additivity" => (
            additivity_props(),
            per_trial(trials, seed, exec, additivity_trial),
        ),
        "delta-laws" => (
            delta_law_props(),
            per_trial(trials, seed, exec, delta_law_trial),
        ),
        "delta-welldef" => (
            welldef_props(),
            per_trial(trials, seed, exec, welldef_trial),
        ),
        "extraction" => (
            extraction_props(),
            per_trial(trials, seed, exec, extraction_trial),
        ),
        "decomposition" => decomposition_rows(trials, seed, exec)?,
        "metrics" => (metric_props(), per_trial(trials, seed, exec, metric_trial)),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(summarize(name, trials, seed, props, rows))
}

fn per_trial<F>(trials: usize, seed: u64, exec: Exec, f: F) -> Vec<Vec<f64>>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<f64> + Sync + Send,
{
    exec.map_indexed(trials, |t| f(&mut trial_rng(seed, t)))
}

fn summarize(
    name: &str,
    trials: usize,
    seed: u64,
    props: Vec<Property>,
    rows: Vec<Vec<f64>>,
) -> SuiteSummary {
    let properties = props
        .into_iter()
        .enumerate()
        .map(|(k, prop)| {
            let column = rows.iter().map(|row| row[k]);
            match prop.bound {
                Bound::AtMost(tol) => {
                    let worst = if tol == 0.0 {
                        column.sum::<f64>()
                    } else {
                        column.fold(0.0, f64::max)
                    };
                    PropertyCheck {
                        name: prop.name,
                        max_deviation: worst,
                        tolerance: tol,
                        passed: worst <= tol,
                    }
                }
                Bound::Above(threshold) => {
                    let least = column.fold(f64::INFINITY, f64::min);
                    PropertyCheck {
                        name: prop.name,
                        max_deviation: least,
                        tolerance: threshold,
                        passed: least > threshold,
                    }
                }
            }
        })
        .collect();
    SuiteSummary {
        suite: name.to_string(),
        trials,
        seed,
        properties,
    }
}

/// The built-in entropies exercised by the suites, with the `L_m` instance
/// using density 2 on `[0, 1/2)`.
pub fn builtin_specs() -> Vec<(&'static str, EntropySpec)> {
    let renyi = |n, d| EntropySpec::renyi(Rat::frac(n, d)).expect("alpha != 1");
    vec![
        ("shannon", EntropySpec::Shannon),
        ("renyi(0)", renyi(0, 1)),
        ("renyi(1/2)", renyi(1, 2)),
        ("renyi(2)", renyi(2, 1)),
        ("hartley", EntropySpec::Hartley),
        ("min", EntropySpec::MinInfo),
        ("max", EntropySpec::MaxInfo),
        ("variance", EntropySpec::Variance),
        ("lm", EntropySpec::lm(half_density())),
    ]
}

/// Density 2 on `[0, 1/2)`, 0 elsewhere.
pub fn half_density() -> SignedMeasure {
    SignedMeasure::new(
        vec![Rat::zero(), Rat::frac(1, 2), Rat::one()],
        vec![Rat::int(2), Rat::zero()],
    )
    .expect("valid breakpoints")
}

/// Density `(2, 0, 1, 1)` on the quarters; total mass 1.
pub fn quarter_density() -> SignedMeasure {
    SignedMeasure::on_grid(vec![Rat::int(2), Rat::zero(), Rat::one(), Rat::one()])
}

// ---------------------------------------------------------------- set-laws

fn set_law_props() -> Vec<Property> {
    [
        "union commutes",
        "intersection commutes",
        "union associates",
        "intersection associates",
        "intersection distributes over union",
        "union distributes over intersection",
        "de morgan (union)",
        "de morgan (intersection)",
        "double complement",
        "self symmetric difference is empty",
        "inclusion-exclusion of measure",
        "darboux split is a subset of exact measure",
        "darboux split at full measure is identity",
        "normalize is idempotent and order-insensitive",
        "signed measure is additive",
    ]
    .into_iter()
    .map(exact)
    .collect()
}

fn set_law_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let (a, b, c) = (random_mset(rng), random_mset(rng), random_mset(rng));
    let theta = if a.is_empty() {
        Rat::zero()
    } else {
        random_measure_below(rng, &a.measure())
    };
    let split = a.darboux_split(&theta).expect("theta below measure");
    let mut raw: Vec<(Rat, Rat)> = a.intervals().iter().chain(b.intervals()).cloned().collect();
    let forward = MSet::normalize(raw.clone()).unwrap();
    raw.shuffle(rng);
    let shuffled = MSet::normalize(raw).unwrap();
    let again = MSet::normalize(forward.intervals().to_vec()).unwrap();
    let m = crate::random::random_step_measure(rng);
    let b_only = b.difference(&a);
    vec![
        flag(a.union(&b) == b.union(&a)),
        flag(a.intersect(&b) == b.intersect(&a)),
        flag(a.union(&b).union(&c) == a.union(&b.union(&c))),
        flag(a.intersect(&b).intersect(&c) == a.intersect(&b.intersect(&c))),
        flag(a.intersect(&b.union(&c)) == a.intersect(&b).union(&a.intersect(&c))),
        flag(a.union(&b.intersect(&c)) == a.union(&b).intersect(&a.union(&c))),
        flag(a.union(&b).complement() == a.complement().intersect(&b.complement())),
        flag(a.intersect(&b).complement() == a.complement().union(&b.complement())),
        flag(a.complement().complement() == a),
        flag(a.symdiff(&a).is_empty()),
        flag(a.union(&b).measure() + a.intersect(&b).measure() == a.measure() + b.measure()),
        flag(split.is_subset(&a) && split.measure() == theta),
        flag(a.darboux_split(&a.measure()).unwrap() == a),
        flag(forward == shuffled && forward == again),
        flag(m.eval(&a.union(&b_only)) == m.eval(&a) + m.eval(&b_only)),
    ]
}

// ------------------------------------------------------------ algebra-laws

fn algebra_law_props() -> Vec<Property> {
    [
        "join commutes",
        "join associates",
        "join is idempotent",
        "trivial algebra is the join identity",
        "profile algebra is independent with the requested measures",
        "independence separates through a coarsening",
        "transport is an involution",
        "transport preserves atom measures and the family ratio",
        "transport of an independent product is the product of transports",
        "piecewise transports compose to the full transport",
    ]
    .into_iter()
    .map(exact)
    .collect()
}

fn random_lambda<R: Rng>(rng: &mut R) -> Rat {
    Rat::frac(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// Random coarsening of `a`: atoms grouped into at most `groups` blocks.
fn coarsen<R: Rng>(rng: &mut R, a: &Algebra) -> Algebra {
    let groups = rng.gen_range(1..=a.atom_count());
    let mut blocks = vec![MSet::empty(); groups];
    for (i, atom) in a.atoms().iter().enumerate() {
        let g = if i < groups {
            i
        } else {
            rng.gen_range(0..groups)
        };
        blocks[g] = blocks[g].union(atom);
    }
    Algebra::new(blocks).expect("grouping a partition")
}

fn algebra_law_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let a = random_algebra(rng, 6);
    let b = random_algebra(rng, 6);
    let c = random_algebra(rng, 6);

    let k = rng.gen_range(1..=6);
    let profile = random_profile(rng, k);
    let indep = a.independent_with_profile(&profile);
    let mut want = profile.weights().to_vec();
    let mut got = indep.atom_measures();
    want.sort();
    got.sort();

    // A ⊥ B iff B ⊥ K and A ⊥_K B, for K ⊂ A; B independent of A, of K only, or arbitrary.
    let kk = coarsen(rng, &a);
    let kb = rng.gen_range(1..=4);
    let bb = match rng.gen_range(0..3) {
        0 => a.independent_with_profile(&random_profile(rng, kb)),
        1 => kk.independent_with_profile(&random_profile(rng, kb)),
        _ => random_algebra(rng, 4),
    };
    let lhs = a.is_independent(&bb);
    let rhs = bb.is_independent(&kk) && a.conditionally_independent(&bb, &kk);

    // Transport laws on a random family member.
    let lambda = random_lambda(rng);
    let eps = epsilon(&lambda).unwrap();
    let theta = random_measure_below(rng, &eps);
    let p = random_disjoint_pair(rng, &theta);
    let fam = random_family_algebra(rng, &p, &lambda);
    let moved = transport(&fam, &p).unwrap();
    let involution = transport(&moved, &p).unwrap() == fam;
    let preserved = moved.same_atom_measures(&fam)
        && in_family(&moved, &p.reversed()).unwrap() == Some(lambda.clone());

    // Product compatibility with a constructed independent family member.
    let kappa = random_lambda(rng);
    let small = random_measure_below(rng, &(epsilon(&kappa).unwrap() * &eps));
    let q = random_disjoint_pair(rng, &small);
    let fa = make_family_algebra(&q, &lambda).unwrap();
    let fb = make_independent_family_algebra(&fa, &q, &kappa).unwrap();
    let (ta, tb) = (transport(&fa, &q).unwrap(), transport(&fb, &q).unwrap());
    let product = fa.is_independent(&fb)
        && ta.is_independent(&tb)
        && transport(&fa.join(&fb), &q).unwrap() == ta.join(&tb);

    // Splitting: T_{V,W} = T_{V_1,W_1} ∘ ⋯ ∘ T_{V_n,W_n}.
    let pieces = rng.gen_range(1..=4);
    let cuts = random_profile(rng, pieces);
    let (mut rest_v, mut rest_w) = (p.v.clone(), p.w.clone());
    let mut stepped = fam.clone();
    for (idx, c) in cuts.weights().iter().enumerate() {
        let (vp, wp) = if idx + 1 == pieces {
            (rest_v.clone(), rest_w.clone())
        } else {
            let share = c * &theta;
            (
                random_subset(rng, &rest_v, &share),
                random_subset(rng, &rest_w, &share),
            )
        };
        rest_v = rest_v.difference(&vp);
        rest_w = rest_w.difference(&wp);
        stepped = transport(&stepped, &SwapPair::new(vp, wp)).unwrap();
    }

    vec![
        flag(a.join(&b) == b.join(&a)),
        flag(a.join(&b).join(&c) == a.join(&b.join(&c))),
        flag(a.join(&a) == a),
        flag(a.join(&Algebra::trivial()) == a),
        flag(a.is_independent(&indep) && want == got),
        flag(lhs == rhs),
        flag(involution),
        flag(preserved),
        flag(product),
        flag(stepped == moved),
    ]
}

// -------------------------------------------------------------- additivity

fn additivity_props() -> Vec<Property> {
    let mut props: Vec<Property> = builtin_specs()
        .into_iter()
        .map(|(name, _)| at_most(format!("additivity: {name}"), TOL_IDENTITY))
        .collect();
    props.push(at_most("atom-measure invariance of non-L_m specs", 1e-12));
    props.push(at_most("renyi tends to shannon as alpha -> 1", 1e-4));
    props.push(exact("hartley equals renyi(0)"));
    props.push(exact("min <= shannon <= max"));
    props.push(Property {
        name: "L_m separates measures differing on a set".into(),
        bound: Bound::Above(0.0),
    });
    props
}

fn additivity_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let specs = builtin_specs();
    let (a, b) = random_independent_pair(rng, 8);
    let mut row: Vec<f64> = specs
        .iter()
        .map(|(_, spec)| additivity_residual(spec, &a, &b).expect("constructed independent"))
        .collect();

    let (x, y) = crate::decomposition::same_measure_pair(rng);
    let invariance = specs
        .iter()
        .filter(|(_, s)| s.is_atom_measure_only())
        .map(|(_, s)| (s.eval(&x) - s.eval(&y)).abs())
        .fold(0.0, f64::max);
    row.push(invariance);

    let shannon = EntropySpec::Shannon.eval(&a);
    let near = |num| {
        EntropySpec::renyi(Rat::frac(num, 1_000_000))
            .unwrap()
            .eval(&a)
    };
    row.push(
        (near(999_999) - shannon)
            .abs()
            .max((near(1_000_001) - shannon).abs()),
    );

    let r0 = EntropySpec::renyi(Rat::zero()).unwrap().eval(&a);
    row.push(flag(r0 == EntropySpec::Hartley.eval(&a)));
    row.push(flag(
        EntropySpec::MinInfo.eval(&a) <= shannon && shannon <= EntropySpec::MaxInfo.eval(&a),
    ));

    row.push(injectivity_gap(rng));
    row
}

/// Builds `m1`, `m2` with equal total mass but different mass on
/// `A = [0, θ)`, `θ ≠ 1/2`, and returns `|L_m1 − L_m2|` on `⟨A, Ω∖A⟩`.
fn injectivity_gap<R: Rng>(rng: &mut R) -> f64 {
    let theta = loop {
        let t = random_measure_below(rng, &Rat::frac(15, 16));
        if t != Rat::frac(1, 2) {
            break t;
        }
    };
    let m1 = crate::random::random_step_measure(rng);
    let c = Rat::frac(rng.gen_range(1..=5), rng.gen_range(1..=3));
    let m2 = shifted_measure(&m1, &theta, &c);
    let set = MSet::interval(Rat::zero(), theta).unwrap();
    let algebra = Algebra::new(vec![set.clone(), set.complement()]).unwrap();
    (EntropySpec::lm(m1).eval(&algebra) - EntropySpec::lm(m2).eval(&algebra)).abs()
}

/// `m + c·1_[0,θ) − c·θ/(1−θ)·1_[θ,1)`: same total mass as `m`.
fn shifted_measure(m: &SignedMeasure, theta: &Rat, c: &Rat) -> SignedMeasure {
    let below = c.clone();
    let above = -(c * theta) / (Rat::one() - theta);
    let mut breakpoints: Vec<Rat> = m.breakpoints().to_vec();
    breakpoints.push(theta.clone());
    breakpoints.sort();
    breakpoints.dedup();
    let densities = breakpoints
        .windows(2)
        .map(|w| {
            let piece = MSet::interval(w[0].clone(), w[1].clone()).unwrap();
            let base = m.eval(&piece) / (&w[1] - &w[0]);
            if w[1] <= *theta {
                base + &below
            } else {
                base + &above
            }
        })
        .collect();
    SignedMeasure::new(breakpoints, densities).unwrap()
}

// -------------------------------------------------------------- delta-laws

fn delta_law_props() -> Vec<Property> {
    vec![
        at_most("cocycle", TOL_AGGREGATE),
        at_most("split additivity", TOL_AGGREGATE),
        at_most("log law", TOL_AGGREGATE),
        at_most("antisymmetry", TOL_IDENTITY),
        at_most("L_m oracle (m(W) - m(V)) log2 lambda", TOL_IDENTITY),
        at_most("proportionality |Delta(4) - 2 Delta(2)|", TOL_AGGREGATE),
        at_most("atom-measure-only spec gives zero", 1e-10),
    ]
}

const LOG_LAW_RATIOS: [(i64, i64); 3] = [(1, 2), (2, 1), (3, 1)];

fn delta_law_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let m = crate::random::random_step_measure(rng);
    let spec = EntropySpec::shannon_plus_lm(m.clone());
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
        let (n, d) = LOG_LAW_RATIOS[rng.gen_range(0..3)];
        Rat::frac(n, d)
    };
    let lambda = pick(rng);
    let kappa = pick(rng);
    let d = |p: &SwapPair, l: &Rat| delta_lambda(&spec, p, l).unwrap().value;

    let theta = random_measure_below(rng, &Rat::frac(1, 2));
    let omega = MSet::omega();
    let u = random_subset(rng, &omega, &theta);
    let v = random_subset(rng, &omega, &theta);
    let w = random_subset(rng, &omega, &theta);
    let uv = SwapPair::new(u.clone(), v.clone());
    let vw = SwapPair::new(v.clone(), w.clone());
    let uw = SwapPair::new(u, w.clone());
    let cocycle = (d(&uw, &lambda) - d(&uv, &lambda) - d(&vw, &lambda)).abs();

    let part = random_measure_below(rng, &theta);
    let v1 = random_subset(rng, &v, &part);
    let w1 = random_subset(rng, &w, &part);
    let first = SwapPair::new(v1.clone(), w1.clone());
    let second = SwapPair::new(v.difference(&v1), w.difference(&w1));
    let split = (d(&vw, &lambda) - d(&first, &lambda) - d(&second, &lambda)).abs();

    let log_law = (d(&vw, &(&kappa * &lambda)) - d(&vw, &kappa) - d(&vw, &lambda)).abs();
    let antisym = (d(&vw, &lambda) + d(&vw.reversed(), &lambda)).abs();
    let oracle = (m.eval(&w) - m.eval(&v)).to_f64() * lambda.to_f64().log2();
    let oracle_gap = (d(&vw, &lambda) - oracle).abs();
    let proportional = delta(&spec, &vw).unwrap().crosscheck_residual;
    let shannon_zero = delta_lambda(&EntropySpec::Variance, &vw, &lambda)
        .unwrap()
        .value
        .abs();

    vec![
        cocycle,
        split,
        log_law,
        antisym,
        oracle_gap,
        proportional,
        shannon_zero,
    ]
}

// ----------------------------------------------------------- delta-welldef

fn welldef_specs() -> Vec<(String, EntropySpec)> {
    let mut specs: Vec<(String, EntropySpec)> = builtin_specs()
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    specs.push((
        "shannon+lm".into(),
        EntropySpec::shannon_plus_lm(quarter_density()),
    ));
    specs
}

fn welldef_props() -> Vec<Property> {
    welldef_specs()
        .into_iter()
        .map(|(name, _)| {
            at_most(
                format!("same increment on two family members: {name}"),
                TOL_IDENTITY,
            )
        })
        .collect()
}

/// Two distinct members of one `F^λ_{V,W}` family for random `V`, `W`, `λ`.
pub fn two_family_members<R: Rng>(rng: &mut R) -> (SwapPair, Rat, Algebra, Algebra) {
    loop {
        let lambda = random_lambda(rng);
        let eps = epsilon(&lambda).unwrap();
        let theta = random_measure_below(rng, &eps);
        let p = random_disjoint_pair(rng, &theta);
        let first = if rng.gen_bool(0.5) {
            make_family_algebra(&p, &lambda).unwrap()
        } else {
            random_family_algebra(rng, &p, &lambda)
        };
        let second = random_family_algebra(rng, &p, &lambda);
        if first != second {
            return (p, lambda, first, second);
        }
    }
}

fn welldef_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let (p, _, a, b) = two_family_members(rng);
    let ta = transport(&a, &p).unwrap();
    let tb = transport(&b, &p).unwrap();
    welldef_specs()
        .iter()
        .map(|(_, s)| ((s.eval(&ta) - s.eval(&a)) - (s.eval(&tb) - s.eval(&b))).abs())
        .collect()
}

// -------------------------------------------------------------- extraction

fn extraction_props() -> Vec<Property> {
    vec![
        at_most("L_m grid matches m - m(Omega) P", TOL_AGGREGATE),
        at_most("extracted total mass is zero", TOL_AGGREGATE),
        at_most("extraction is linear in the spec", TOL_AGGREGATE),
        at_most("refinement 16 -> 8 is consistent", TOL_AGGREGATE),
        at_most("atom-measure-only spec extracts to zero", TOL_AGGREGATE),
    ]
}

/// Random density constant on the cells of a dyadic grid of at most 8 cells.
fn random_grid_measure<R: Rng>(rng: &mut R) -> SignedMeasure {
    let cells = 1 << rng.gen_range(0..=3);
    SignedMeasure::on_grid(
        (0..cells)
            .map(|_| Rat::frac(rng.gen_range(-4..=4), rng.gen_range(1..=2)))
            .collect(),
    )
}

fn extraction_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    // The outer trial loop already runs in parallel.
    let exec = Exec::Sequential;
    let n = 8;
    let m1 = random_grid_measure(rng);
    let m2 = random_grid_measure(rng);
    let spec1 = EntropySpec::shannon_plus_lm(m1.clone());
    let spec2 = EntropySpec::combo([
        (Rat::one(), EntropySpec::renyi(Rat::int(2)).unwrap()),
        (Rat::one(), EntropySpec::lm(m2)),
    ]);
    let (alpha, beta) = (
        Rat::frac(rng.gen_range(-3..=3), 2),
        Rat::frac(rng.gen_range(-3..=3), 3),
    );
    let mixed = EntropySpec::combo([
        (alpha.clone(), spec1.clone()),
        (beta.clone(), spec2.clone()),
    ]);

    let g1 = extract_measure_with(&spec1, n, exec).unwrap();
    let g2 = extract_measure_with(&spec2, n, exec).unwrap();
    let gm = extract_measure_with(&mixed, n, exec).unwrap();

    let shift = m1.total() / Rat::int(n as i64);
    let oracle = Algebra::equipartition(n)
        .atoms()
        .iter()
        .zip(g1.cell_values())
        .map(|(cell, v)| (v - (m1.eval(cell) - &shift).to_f64()).abs())
        .fold(0.0, f64::max);
    let linear = gm
        .cell_values()
        .iter()
        .zip(g1.cell_values().iter().zip(g2.cell_values()))
        .map(|(m, (x, y))| (m - alpha.to_f64() * x - beta.to_f64() * y).abs())
        .fold(0.0, f64::max);
    let fine = extract_measure_with(&spec1, 2 * n, exec).unwrap();
    let refine = fine
        .coarsen()
        .unwrap()
        .cell_values()
        .iter()
        .zip(g1.cell_values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let only = [
        EntropySpec::Hartley,
        EntropySpec::Variance,
        EntropySpec::MaxInfo,
    ];
    let spec0 = only[rng.gen_range(0..only.len())].clone();
    let zero = extract_measure_with(&spec0, n, exec)
        .unwrap()
        .cell_values()
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    vec![
        oracle,
        g1.total().abs().max(g2.total().abs()),
        linear,
        refine,
        zero,
    ]
}

// ----------------------------------------------------------- decomposition

fn decomposition_rows(
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<(Vec<Property>, Vec<Vec<f64>>)> {
    let props = vec![
        at_most("shannon+L_m grid matches m - m(Omega) P", TOL_AGGREGATE),
        at_most(
            "shannon+L_m residual depends on atom measures only",
            TOL_AGGREGATE,
        ),
        at_most("shannon+L_m residual is additive", TOL_AGGREGATE),
        at_most("shannon+L_m residual on halves equals 2", TOL_AGGREGATE),
        at_most("renyi(2) grid is zero", TOL_AGGREGATE),
        at_most("renyi(2) deviations", TOL_AGGREGATE),
        Property {
            name: "L_m with the zero grid is detected as atom-dependent".into(),
            bound: Bound::Above(1e-6),
        },
    ];
    let m = quarter_density();
    let spec = EntropySpec::shannon_plus_lm(m.clone());
    let n = 16;
    let report = decompose_with(&spec, n, trials, seed, exec)?;
    let shift = m.total() / Rat::int(n as i64);
    let grid_gap = Algebra::equipartition(n)
        .atoms()
        .iter()
        .zip(report.grid.cell_values())
        .map(|(cell, v)| (v - (m.eval(cell) - &shift).to_f64()).abs())
        .fold(0.0, f64::max);
    let halves = (report.residual.eval(&Algebra::equipartition(2)) - 2.0).abs();

    let renyi = decompose_with(&EntropySpec::renyi(Rat::int(2))?, 8, trials, seed, exec)?;
    let renyi_grid = renyi
        .grid
        .cell_values()
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));

    let wrong = crate::decomposition::verify_atom_dependence(
        &EntropySpec::lm(m),
        &GridMeasure::zeros(n)?,
        trials,
        seed,
    )?;
    let row = vec![
        grid_gap,
        report.atom_dependence_deviation,
        report.additivity_deviation,
        halves,
        renyi_grid,
        renyi
            .atom_dependence_deviation
            .max(renyi.additivity_deviation),
        wrong,
    ];
    Ok((props, vec![row]))
}

// ----------------------------------------------------------------- metrics

fn metric_props() -> Vec<Property> {
    [
        "bitmask DP equals brute-force matching",
        "d(a, a) = 0",
        "d is symmetric",
        "triangle inequality",
        "d = 0 implies equal atom measures",
        "D = d + |N(a) - N(b)|",
    ]
    .into_iter()
    .map(exact)
    .collect()
}

/// Maximum matching weight by enumerating every partial injection.
pub fn brute_force_matching(weights: &[Vec<Rat>]) -> Rat {
    fn go(row: usize, used: &mut Vec<bool>, weights: &[Vec<Rat>]) -> Rat {
        if row == weights.len() {
            return Rat::zero();
        }
        let mut best = go(row + 1, used, weights);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                let cand = &weights[row][j] + go(row + 1, used, weights);
                used[j] = false;
                if cand > best {
                    best = cand;
                }
            }
        }
        best
    }
    let cols = weights.first().map_or(0, Vec::len);
    go(0, &mut vec![false; cols], weights)
}

fn metric_trial(rng: &mut rand_chacha::ChaCha8Rng) -> Vec<f64> {
    let a = random_algebra(rng, 6);
    let b = if rng.gen_bool(0.2) {
        // Same atom measures with a different placement.
        let profile = AtomProfile::new(a.atom_measures()).unwrap();
        random_algebra(rng, 6).independent_with_profile(&profile)
    } else {
        random_algebra(rng, 6)
    };
    let c = random_algebra(rng, 6);
    let weights: Vec<Vec<Rat>> = a
        .atoms()
        .iter()
        .map(|x| b.atoms().iter().map(|y| x.intersect(y).measure()).collect())
        .collect();
    let dab = a.distance_d(&b);
    let gap = a.atom_count().abs_diff(b.atom_count()) as i64;
    vec![
        flag(max_weight_matching(&weights) == brute_force_matching(&weights)),
        flag(a.distance_d(&a).is_zero()),
        flag(dab == b.distance_d(&a)),
        flag(a.distance_d(&c) <= &dab + b.distance_d(&c)),
        flag(!dab.is_zero() || a.same_atom_measures(&b)),
        flag(a.distance_big_d(&b) == &dab + Rat::int(gap)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(
            run_suite("nope", 1, 0).unwrap_err(),
            Error::UnknownSuite("nope".into())
        );
        assert_eq!(run_suite("set-laws", 0, 0).unwrap_err(), Error::NoTrials);
    }

    #[test]
    fn quick_runs_pass() {
        for name in [
            "set-laws",
            "algebra-laws",
            "additivity",
            "delta-laws",
            "delta-welldef",
            "metrics",
        ] {
            let summary = run_suite(name, 10, 42).unwrap();
            assert!(summary.passed(), "{name}: {:?}", summary.failures());
        }
    }

    #[test]
    fn brute_force_small_table() {
        let w = |n| Rat::frac(n, 8);
        let table = vec![vec![w(1), w(3)], vec![w(2), w(1)], vec![w(0), w(2)]];
        assert_eq!(brute_force_matching(&table), w(5));
        assert_eq!(max_weight_matching(&table), w(5));
    }
}
