//! Acceptance criteria, one line per criterion. Oracles are computed here
//! from first principles wherever the library would otherwise be checking
//! itself.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pentropy::random::{
    random_algebra, random_independent_pair, random_measure_below, random_step_measure,
    random_subset, trial_rng,
};
use pentropy::suites::{quarter_density, run_suite, two_family_members};
use pentropy::{
    delta, delta_lambda, extract_measure, in_family, transport, Algebra, EntropySpec, MSet, Rat,
    SignedMeasure, SwapPair,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn r(n: i64, d: i64) -> Rat {
    Rat::frac(n, d)
}

fn shannon_oracle(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

fn c1_shannon_normalization() -> Outcome {
    let a = Algebra::equipartition(2);
    let got = EntropySpec::Shannon.eval(&a);
    let want = shannon_oracle(&[0.5, 0.5]);
    let dev = (got - 1.0).abs().max((want - 1.0).abs());
    outcome(dev <= 1e-12, format!("H(1/2,1/2) = {got}"))
}

fn builtin() -> Vec<(&'static str, EntropySpec)> {
    let renyi = |n, d| EntropySpec::renyi(r(n, d)).unwrap();
    let half = SignedMeasure::new(vec![r(0, 1), r(1, 2), r(1, 1)], vec![r(2, 1), r(0, 1)]).unwrap();
    vec![
        ("shannon", EntropySpec::Shannon),
        ("renyi(0)", renyi(0, 1)),
        ("renyi(1/2)", renyi(1, 2)),
        ("renyi(2)", renyi(2, 1)),
        ("hartley", EntropySpec::Hartley),
        ("min", EntropySpec::MinInfo),
        ("max", EntropySpec::MaxInfo),
        ("variance", EntropySpec::Variance),
        ("lm", EntropySpec::lm(half)),
    ]
}

// Independence checked by the product rule on every atom pair.
fn product_rule(a: &Algebra, b: &Algebra) -> bool {
    a.atoms().iter().all(|x| {
        b.atoms()
            .iter()
            .all(|y| x.intersect(y).measure() == x.measure() * y.measure())
    })
}

fn c2_additivity() -> Outcome {
    let specs = builtin();
    let mut worst = vec![0.0f64; specs.len()];
    for t in 0..200 {
        let (a, b) = random_independent_pair(&mut trial_rng(SEED, t), 8);
        if !product_rule(&a, &b) || a.atom_count() > 8 || b.atom_count() > 8 {
            return outcome(
                false,
                format!("trial {t}: generator produced a dependent or oversized pair"),
            );
        }
        let ab = a.join(&b);
        for (k, (_, s)) in specs.iter().enumerate() {
            worst[k] = worst[k].max((s.eval(&ab) - s.eval(&a) - s.eval(&b)).abs());
        }
    }
    let dev = max_abs(worst.iter().copied());
    let names: Vec<String> = specs
        .iter()
        .zip(&worst)
        .map(|((n, _), w)| format!("{n}={w:.1e}"))
        .collect();
    outcome(
        dev <= 1e-9,
        format!("max residual {dev:.2e} [{}]", names.join(", ")),
    )
}

fn c3_welldefined() -> Outcome {
    let spec = EntropySpec::shannon_plus_lm(quarter_density());
    let mut dev = 0.0f64;
    for t in 0..50 {
        let (p, lambda, a, b) = two_family_members(&mut trial_rng(SEED, t));
        let la = in_family(&a, &p).unwrap();
        let lb = in_family(&b, &p).unwrap();
        if a == b || la != Some(lambda.clone()) || lb != Some(lambda) {
            return outcome(
                false,
                format!("trial {t}: members are not two distinct family members"),
            );
        }
        let ia = spec.eval(&transport(&a, &p).unwrap()) - spec.eval(&a);
        let ib = spec.eval(&transport(&b, &p).unwrap()) - spec.eval(&b);
        dev = dev.max((ia - ib).abs());
    }
    outcome(dev <= 1e-9, format!("max |ΔA − ΔB| = {dev:.2e}"))
}

const RATIOS: [(i64, i64); 3] = [(1, 2), (2, 1), (3, 1)];

fn c4_delta_laws() -> Outcome {
    let (mut cocycle, mut split, mut log_law, mut antisym) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let omega = MSet::omega();
    for t in 0..50 {
        let mut rng = trial_rng(SEED, t);
        let spec = EntropySpec::shannon_plus_lm(random_step_measure(&mut rng));
        let d = |p: &SwapPair, l: &Rat| delta_lambda(&spec, p, l).unwrap().value;
        let theta = random_measure_below(&mut rng, &r(1, 2));
        let u = random_subset(&mut rng, &omega, &theta);
        let v = random_subset(&mut rng, &omega, &theta);
        let w = random_subset(&mut rng, &omega, &theta);
        let part = random_measure_below(&mut rng, &theta);
        let v1 = random_subset(&mut rng, &v, &part);
        let w1 = random_subset(&mut rng, &w, &part);
        let vw = SwapPair::new(v.clone(), w.clone());
        let first = SwapPair::new(v1.clone(), w1.clone());
        let second = SwapPair::new(v.difference(&v1), w.difference(&w1));
        for &(ln, ld) in &RATIOS {
            let lambda = r(ln, ld);
            let uv = SwapPair::new(u.clone(), v.clone());
            let uw = SwapPair::new(u.clone(), w.clone());
            cocycle = cocycle.max((d(&uw, &lambda) - d(&uv, &lambda) - d(&vw, &lambda)).abs());
            split = split.max((d(&vw, &lambda) - d(&first, &lambda) - d(&second, &lambda)).abs());
            antisym = antisym.max((d(&vw, &lambda) + d(&vw.reversed(), &lambda)).abs());
            for &(kn, kd) in &RATIOS {
                let kappa = r(kn, kd);
                let gap = d(&vw, &(&kappa * &lambda)) - d(&vw, &kappa) - d(&vw, &lambda);
                log_law = log_law.max(gap.abs());
            }
        }
    }
    let dev = max_abs([cocycle, split, log_law, antisym]);
    outcome(
        dev <= 1e-8,
        format!(
            "cocycle {cocycle:.1e}, split {split:.1e}, log {log_law:.1e}, antisym {antisym:.1e}"
        ),
    )
}

fn c5_proportionality() -> Outcome {
    let spec = EntropySpec::shannon_plus_lm(quarter_density());
    let omega = MSet::omega();
    let mut dev = 0.0f64;
    for t in 0..50 {
        let mut rng = trial_rng(SEED, t);
        let theta = random_measure_below(&mut rng, &r(1, 2));
        let p = SwapPair::new(
            random_subset(&mut rng, &omega, &theta),
            random_subset(&mut rng, &omega, &theta),
        );
        let d4 = delta_lambda(&spec, &p, &r(4, 1)).unwrap().value;
        let d2 = delta_lambda(&spec, &p, &r(2, 1)).unwrap().value;
        let reported = delta(&spec, &p).unwrap();
        if reported.value != d2 {
            return outcome(
                false,
                format!("trial {t}: delta() disagrees with delta_lambda(2)"),
            );
        }
        dev = dev
            .max((d4 - 2.0 * d2).abs())
            .max(reported.crosscheck_residual);
    }
    outcome(dev <= 1e-8, format!("max |Δ(4) − 2Δ(2)| = {dev:.2e}"))
}

// m(cell_j) − m(Ω)/n for density (2, 0, 1, 1) on quarters, exact.
fn quarter_oracle(n: i64) -> Vec<f64> {
    let dens = [2, 0, 1, 1];
    (0..n)
        .map(|j| {
            let q = (4 * j / n) as usize;
            (r(dens[q], n) - r(1, n)).to_f64()
        })
        .collect()
}

fn c6_extraction_oracle() -> Outcome {
    let spec = EntropySpec::shannon_plus_lm(quarter_density());
    let g = extract_measure(&spec, 16).unwrap();
    let oracle = quarter_oracle(16);
    let dev = max_abs(g.cell_values().iter().zip(&oracle).map(|(x, y)| x - y));
    outcome(
        g.n() == 16 && dev <= 1e-8,
        format!("max cell error {dev:.2e}"),
    )
}

fn c7_atom_measure_only() -> Outcome {
    let specs = [
        ("renyi(2)", EntropySpec::renyi(r(2, 1)).unwrap()),
        ("variance", EntropySpec::Variance),
        ("hartley", EntropySpec::Hartley),
        ("min", EntropySpec::MinInfo),
    ];
    let mut parts = Vec::new();
    let mut dev = 0.0f64;
    for (name, spec) in specs {
        let g = extract_measure(&spec, 8).unwrap();
        let worst = max_abs(g.cell_values().iter().copied());
        parts.push(format!("{name}={worst:.1e}"));
        dev = dev.max(worst);
    }
    outcome(
        dev <= 1e-8,
        format!("max |cell| {dev:.2e} [{}]", parts.join(", ")),
    )
}

fn c8_decomposition() -> Outcome {
    let spec = EntropySpec::shannon_plus_lm(quarter_density());
    let report = pentropy::decompose(&spec, 16, 100, SEED).unwrap();
    // Ĩ = 2·Shannon, so 2·H(1/2, 1/2) on halves.
    let halves = report.residual.eval(&Algebra::equipartition(2));
    let want = 2.0 * shannon_oracle(&[0.5, 0.5]);
    let ok = report.trials == 100
        && report.atom_dependence_deviation <= 1e-8
        && report.additivity_deviation <= 1e-8
        && (halves - want).abs() <= 1e-8;
    outcome(
        ok,
        format!(
            "atom dependence {:.1e}, additivity {:.1e}, residual on halves {halves}",
            report.atom_dependence_deviation, report.additivity_deviation
        ),
    )
}

fn c9_refinement() -> Outcome {
    let spec = EntropySpec::shannon_plus_lm(quarter_density());
    let fine = extract_measure(&spec, 32).unwrap();
    let coarse = extract_measure(&spec, 16).unwrap();
    let paired: Vec<f64> = fine.cell_values().chunks(2).map(|c| c[0] + c[1]).collect();
    let dev = max_abs(paired.iter().zip(coarse.cell_values()).map(|(x, y)| x - y));
    outcome(dev <= 1e-8, format!("max pair-sum gap {dev:.2e}"))
}

// Maximum over all partial injections rows → columns.
fn brute_matching(w: &[Vec<Rat>], row: usize, used: &mut [bool]) -> Rat {
    if row == w.len() {
        return Rat::zero();
    }
    let mut best = brute_matching(w, row + 1, used);
    for j in 0..used.len() {
        if !used[j] {
            used[j] = true;
            best = best.max(&w[row][j] + brute_matching(w, row + 1, used));
            used[j] = false;
        }
    }
    best
}

fn brute_d(a: &Algebra, b: &Algebra) -> Rat {
    let w: Vec<Vec<Rat>> = a
        .atoms()
        .iter()
        .map(|x| b.atoms().iter().map(|y| x.intersect(y).measure()).collect())
        .collect();
    Rat::one() - brute_matching(&w, 0, &mut vec![false; b.atom_count()])
}

fn c10_metric() -> Outcome {
    let mut mismatches = 0;
    let mut axiom_failures = 0;
    for t in 0..100 {
        let mut rng = trial_rng(SEED, t);
        let a = random_algebra(&mut rng, 6);
        let b = random_algebra(&mut rng, 6);
        if a.distance_d(&b) != brute_d(&a, &b) {
            mismatches += 1;
        }
    }
    for t in 0..100 {
        let mut rng = trial_rng(SEED ^ 0xd1, t);
        let (a, b, c) = (
            random_algebra(&mut rng, 6),
            random_algebra(&mut rng, 6),
            random_algebra(&mut rng, 6),
        );
        let ab = a.distance_d(&b);
        let holds = a.distance_d(&a).is_zero()
            && !ab.is_negative()
            && ab == b.distance_d(&a)
            && a.distance_d(&c) <= &ab + b.distance_d(&c);
        if !holds {
            axiom_failures += 1;
        }
    }
    outcome(
        mismatches == 0 && axiom_failures == 0,
        format!("DP/brute-force mismatches {mismatches}, axiom failures {axiom_failures}"),
    )
}

fn c11_exact_layer() -> Outcome {
    let mut failing = Vec::new();
    let mut checked = 0;
    for suite in ["set-laws", "algebra-laws"] {
        let summary = run_suite(suite, 200, SEED).unwrap();
        for p in &summary.properties {
            checked += 1;
            if p.max_deviation != 0.0 {
                failing.push(format!("{suite}/{} = {}", p.name, p.max_deviation));
            }
        }
    }
    outcome(
        failing.is_empty(),
        if failing.is_empty() {
            format!("{checked} exact properties, zero deviation")
        } else {
            failing.join("; ")
        },
    )
}

// Name, runtime limit in seconds, check.
type Criterion = (&'static str, f64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("shannon normalization", 0.1, c1_shannon_normalization),
        ("additivity of built-in entropies", 5.0, c2_additivity),
        ("delta well-definedness", 2.0, c3_welldefined),
        ("delta laws", 5.0, c4_delta_laws),
        ("delta proportionality", 2.0, c5_proportionality),
        ("extraction oracle n=16", 10.0, c6_extraction_oracle),
        (
            "atom-measure-only specs extract to zero",
            10.0,
            c7_atom_measure_only,
        ),
        ("decomposition", 15.0, c8_decomposition),
        ("grid refinement 32 -> 16", 30.0, c9_refinement),
        ("metric d", 2.0, c10_metric),
        ("exact-layer suites", 5.0, c11_exact_layer),
    ];
    let mut failed = 0;
    for (idx, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs_f64(*limit);
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {} ({:.3} s, limit {limit} s{})",
            if ok { "PASS" } else { "FAIL" },
            idx + 1,
            out.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", too slow" },
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
