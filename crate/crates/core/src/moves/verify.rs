//! Randomised checks of invariance, degree and symbol, and the linear fit of
//! pattern coefficients to move-equivalent pairs.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{random_move, random_walk_with, MoveKind};
use crate::arrowmatch::{ArrowPattern, PatternIndex};
use crate::chordalg::WeightSystem;
use crate::gaussdiag::{GaussDiagram, SingularGaussDiagram};
use crate::invariants::{theorem_terms, GaussFormula};
use crate::knotcodes::{pd_to_gauss, render_gauss, KnotTableEntry};
use crate::linalg;
use crate::rational::{self, int, Rational};

/// Per-trial seed derived from the master seed (SplitMix64 finaliser), so a
/// trial can be replayed on its own and results do not depend on scheduling.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master.wrapping_add((trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub trials: usize,
    /// Upper bound on the length of each random walk.
    pub max_steps: usize,
    pub seed: u64,
    /// Stop after the first batch of trials that contains a failure.
    pub fail_fast: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { trials: 500, max_steps: 20, seed: 0, fail_fast: false }
    }
}

/// One failed trial, with what is needed to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub knot: String,
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub invariant: String,
    /// Master seed of the run; each failure carries its own trial seed.
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    /// Suite-specific counters, e.g. moves taken per kind.
    pub stats: BTreeMap<String, u64>,
}

#[derive(Default)]
struct Outcome {
    failure: Option<Failure>,
    stats: BTreeMap<String, u64>,
}

fn start_diagrams(table: &[KnotTableEntry]) -> Vec<(String, GaussDiagram)> {
    table.iter().map(|e| (e.name.clone(), pd_to_gauss(&e.pd))).collect()
}

/// Runs trials in parallel, in batches when failing fast, and gathers the
/// outcomes in trial order.
fn run_trials(
    suite: &str,
    invariant: &str,
    opts: &SuiteOptions,
    trial: impl Fn(usize, u64) -> Outcome + Sync,
) -> VerificationReport {
    let started = Instant::now();
    let batch = if opts.fail_fast { 32 } else { opts.trials.max(1) };
    let mut failures = Vec::new();
    let mut stats = BTreeMap::new();
    let mut run = 0;
    while run < opts.trials {
        let end = (run + batch).min(opts.trials);
        let outcomes: Vec<Outcome> =
            (run..end).into_par_iter().map(|i| trial(i, trial_seed(opts.seed, i))).collect();
        for o in outcomes {
            failures.extend(o.failure);
            for (k, v) in o.stats {
                *stats.entry(k).or_insert(0) += v;
            }
        }
        run = end;
        if opts.fail_fast && !failures.is_empty() {
            break;
        }
    }
    VerificationReport {
        suite: suite.into(),
        invariant: invariant.into(),
        seed: opts.seed,
        trials: run,
        passed: failures.is_empty(),
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
        stats,
    }
}

fn count_moves(stats: &mut BTreeMap<String, u64>, moves: &[super::MoveSite]) {
    for m in moves {
        *stats.entry(format!("moves_{}", m.kind)).or_insert(0) += 1;
    }
}

/// Two independent random walks from a random table knot must give equal
/// values of `f`.
pub fn check_invariance(f: &GaussFormula, table: &[KnotTableEntry], opts: &SuiteOptions) -> VerificationReport {
    let starts = start_diagrams(table);
    run_trials("reidemeister", f.name(), opts, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, g) = starts.choose(&mut rng).expect("table is nonempty");
        let (s1, s2) = (rng.random_range(0..=opts.max_steps), rng.random_range(0..=opts.max_steps));
        let (g1, m1) = random_walk_with(g, s1, &mut rng);
        let (g2, m2) = random_walk_with(g, s2, &mut rng);
        let (v1, v2) = (f.evaluate(&g1), f.evaluate(&g2));
        let mut out = Outcome::default();
        count_moves(&mut out.stats, &m1);
        count_moves(&mut out.stats, &m2);
        if v1 != v2 {
            out.failure = Some(Failure {
                trial: i,
                seed,
                knot: name.clone(),
                input: format!("{} | {}", render_gauss(&g1), render_gauss(&g2)),
                expected: rational::to_string(&v1),
                got: rational::to_string(&v2),
            });
        }
        out
    })
}

/// A random walk from a random table knot, continued until it has at least
/// `k` crossings.
fn walked_diagram(
    starts: &[(String, GaussDiagram)],
    k: usize,
    max_steps: usize,
    rng: &mut ChaCha8Rng,
) -> (String, GaussDiagram) {
    let (name, g) = starts.choose(rng).expect("table is nonempty");
    let steps = rng.random_range(0..=max_steps);
    let (mut g, _) = random_walk_with(g, steps, rng);
    while g.n() < k {
        g = random_move(&g, rng).1;
    }
    (name.clone(), g)
}

/// `k` distinct crossings of `g`. Half of the time the choice is biased
/// towards subsets whose chords all cross some other chord, since 1T makes
/// every other subset trivially zero.
fn pick_crossings(g: &GaussDiagram, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let uniform = |rng: &mut ChaCha8Rng| {
        let mut v = rand::seq::index::sample(rng, g.n(), k).into_vec();
        v.sort_unstable();
        v
    };
    if rng.random_bool(0.5) {
        for _ in 0..64 {
            let v = uniform(rng);
            if !g.subdiagram(&v).underlying_chords().has_isolated_chord() {
                return v;
            }
        }
    }
    uniform(rng)
}

/// Collapses `k` crossings of random walked diagrams and evaluates the
/// singular extension of `f`. When `k` exceeds the largest pattern size of
/// `f` every value must vanish; otherwise the suite passes iff some value is
/// nonzero, showing the degree is not below `k`.
pub fn check_degree(
    f: &GaussFormula,
    k: usize,
    table: &[KnotTableEntry],
    opts: &SuiteOptions,
) -> VerificationReport {
    let starts = start_diagrams(table);
    let vanish = k > f.order();
    let mut report = run_trials(&format!("degree-{k}"), f.name(), opts, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, g) = walked_diagram(&starts, k, opts.max_steps, &mut rng);
        let s = SingularGaussDiagram::collapse(&g, &pick_crossings(&g, k, &mut rng));
        let value = super::eval_singular(f, &s);
        let mut out = Outcome::default();
        let key = if value.is_zero() { "zero" } else { "nonzero" };
        out.stats.insert(key.into(), 1);
        if vanish && !value.is_zero() {
            out.failure = Some(Failure {
                trial: i,
                seed,
                knot: name,
                input: s.render(),
                expected: "0".into(),
                got: rational::to_string(&value),
            });
        }
        out
    });
    if !vanish && report.stats.get("nonzero").copied().unwrap_or(0) == 0 {
        report.passed = false;
        report.failures.push(Failure {
            trial: report.trials,
            seed: opts.seed,
            knot: String::new(),
            input: format!("{} singular diagrams with {k} double points", report.trials),
            expected: "some nonzero value".into(),
            got: "all zero".into(),
        });
    }
    report
}

/// On diagrams with exactly `w.degree` double points the singular extension
/// of `f` must equal `w` on the underlying chord diagram.
pub fn check_symbol(
    f: &GaussFormula,
    w: &WeightSystem,
    table: &[KnotTableEntry],
    opts: &SuiteOptions,
) -> VerificationReport {
    let starts = start_diagrams(table);
    let k = w.degree;
    run_trials("symbol", f.name(), opts, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, g) = walked_diagram(&starts, k, opts.max_steps, &mut rng);
        let s = SingularGaussDiagram::collapse(&g, &pick_crossings(&g, k, &mut rng));
        let expected = w.value(&s.underlying_chords());
        let got = super::eval_singular(f, &s);
        let mut out = Outcome::default();
        if !expected.is_zero() {
            out.stats.insert("nonzero_weight".into(), 1);
        }
        if expected != got {
            out.failure = Some(Failure {
                trial: i,
                seed,
                knot: name,
                input: s.render(),
                expected: rational::to_string(&expected),
                got: rational::to_string(&got),
            });
        }
        out
    })
}

/// Pairs `(G, G')` where `G` is a random walk from a table knot and `G'`
/// differs from it by one more random move. Deterministic in `seed`.
pub fn sample_move_pairs(
    table: &[KnotTableEntry],
    count: usize,
    max_steps: usize,
    seed: u64,
) -> Vec<(GaussDiagram, GaussDiagram, MoveKind)> {
    let starts = start_diagrams(table);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, i));
            let (_, g) = walked_diagram(&starts, 0, max_steps, &mut rng);
            let (site, h) = random_move(&g, &mut rng);
            (g, h, site.kind)
        })
        .collect()
}

/// Basis of the coefficient vectors `c` with `Σ c_j <A_j, G> = Σ c_j <A_j, G'>`
/// on every sample pair.
pub fn fit_coefficients(patterns: &[ArrowPattern], samples: &[(GaussDiagram, GaussDiagram)]) -> Vec<Vec<Rational>> {
    let index = PatternIndex::new(patterns);
    let rows: linalg::Matrix = samples
        .par_iter()
        .map(|(g, h)| {
            let (a, b) = (index.counts(g), index.counts(h));
            a.iter().zip(&b).map(|(x, y)| int(x - y)).collect()
        })
        .collect();
    linalg::nullspace(&rows, patterns.len())
}

/// Fits coefficients over the transcribed degree-4 patterns together with
/// the patterns of `f`, on `opts.trials` move pairs, and passes iff the
/// coefficient vector of `f` lies in the fitted space.
pub fn check_fit(f: &GaussFormula, table: &[KnotTableEntry], opts: &SuiteOptions) -> VerificationReport {
    let started = Instant::now();
    let mut patterns: Vec<ArrowPattern> =
        theorem_terms().into_iter().flat_map(|t| t.patterns.terms().to_vec()).map(|(_, p)| p).collect();
    for (_, p) in f.combination().terms() {
        if !patterns.contains(p) {
            patterns.push(p.clone());
        }
    }
    let samples = sample_move_pairs(table, opts.trials, opts.max_steps, opts.seed);
    let mut stats = BTreeMap::new();
    for (_, _, kind) in &samples {
        *stats.entry(format!("moves_{kind}")).or_insert(0) += 1;
    }
    let pairs: Vec<(GaussDiagram, GaussDiagram)> = samples.into_iter().map(|(g, h, _)| (g, h)).collect();
    let space = fit_coefficients(&patterns, &pairs);
    stats.insert("patterns".into(), patterns.len() as u64);
    stats.insert("dimension".into(), space.len() as u64);
    let target: Vec<Rational> = patterns.iter().map(|p| f.coefficient(p)).collect();
    let mut failures = Vec::new();
    if !linalg::in_span(&space, &target) {
        failures.push(Failure {
            trial: pairs.len(),
            seed: opts.seed,
            knot: String::new(),
            input: target.iter().map(rational::to_string).collect::<Vec<_>>().join(" "),
            expected: "coefficient vector in the fitted space".into(),
            got: format!("fitted space of dimension {} excludes it", space.len()),
        });
    }
    VerificationReport {
        suite: "fit".into(),
        invariant: f.name().into(),
        seed: opts.seed,
        trials: pairs.len(),
        passed: failures.is_empty(),
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrowmatch::PatternCombination;
    use crate::invariants::v2_formula;
    use crate::knotcodes::builtin_table;

    fn small_opts(trials: usize) -> SuiteOptions {
        SuiteOptions { trials, max_steps: 8, seed: 5, fail_fast: false }
    }

    #[test]
    fn zero_formula_always_passes() {
        let zero = GaussFormula::new("zero", PatternCombination::default());
        let r = check_invariance(&zero, &builtin_table(), &small_opts(20));
        assert!(r.passed);
        assert_eq!(r.trials, 20);
    }

    #[test]
    fn v2_is_invariant_and_of_degree_two() {
        let table = builtin_table();
        assert!(check_invariance(&v2_formula(), &table, &small_opts(40)).passed);
        assert!(check_degree(&v2_formula(), 3, &table, &small_opts(20)).passed);
        assert!(check_degree(&v2_formula(), 2, &table, &small_opts(20)).passed);
    }

    #[test]
    fn reports_are_deterministic() {
        let table = builtin_table();
        let a = check_invariance(&v2_formula(), &table, &small_opts(10));
        let b = check_invariance(&v2_formula(), &table, &small_opts(10));
        assert_eq!(a.stats, b.stats);
        assert_eq!(sample_move_pairs(&table, 5, 5, 1), sample_move_pairs(&table, 5, 5, 1));
    }

    #[test]
    fn fit_dimensions() {
        let table = builtin_table();
        let pairs: Vec<_> = sample_move_pairs(&table, 30, 6, 2).into_iter().map(|(g, h, _)| (g, h)).collect();
        let single = ArrowPattern::parse("| H1 T2 T1 H2").unwrap();
        assert_eq!(fit_coefficients(&[single], &pairs).len(), 1);
        // the number of arrows changes under R1 and R2 moves
        let arrow = ArrowPattern::parse("T1 H1").unwrap();
        assert!(fit_coefficients(&[arrow], &pairs).is_empty());
    }

    #[test]
    fn fit_suite_accepts_v2() {
        let r = check_fit(&v2_formula(), &builtin_table(), &small_opts(60));
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.stats["patterns"], 16);
        assert_eq!(r.seed, 5);
    }

    #[test]
    fn seeds_differ_per_trial() {
        assert_ne!(trial_seed(0, 0), trial_seed(0, 1));
        assert_ne!(trial_seed(0, 0), trial_seed(1, 0));
    }
}
