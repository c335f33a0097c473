//! End-to-end acceptance checks, one test per criterion. Every numeric
//! comparison is exact; the only tolerances are the runtime budgets and the
//! inconclusive-rate bound pinned as constants below. Oracles are written
//! from scratch in this file (explicit enumeration, finite differences)
//! before the engine is consulted, so the two sides are independent.
//!
//! Run with `--nocapture` to see one PASS line per criterion.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use mixmult::hilbert::{
    fit_bhattacharya, graded_piece_length, samuel_multiplicity, FitOptions, PowerProductCache,
};
use mixmult::ideal::MonomialIdeal;
use mixmult::instance::{run_verify, InstanceDocument, VerifySpec};
use mixmult::primes::dimension;
use mixmult::sequence::find_weak_fc;
use mixmult::subquotient::MonomialSubquotient;
use mixmult::system::MultiIdealSystem;
use mixmult::verify::{
    verify_additivity, verify_chain, verify_exact_sequence, verify_recursion, verify_scaling,
    Verdict,
};
use mixmult::{corpus, VariableContext};

/// Seed and size of the shared instance corpus (small rings, up to two
/// scaling ideals, generator degrees at most four).
const CORPUS_SEED: u64 = 11;
const CORPUS_SIZE: usize = 20;

/// Runtime budgets. Exceeding one fails the criterion.
const BUDGET_SINGLE_FIT: Duration = Duration::from_secs(1);
const BUDGET_SAMUEL_GRID: Duration = Duration::from_secs(10);
const BUDGET_CORPUS_PASS: Duration = Duration::from_secs(300);

/// Highest tolerated number of inconclusive additivity runs on the corpus
/// (10% of the corpus size; inconclusive means the fit hit its offset cap).
const MAX_INCONCLUSIVE_ADDITIVITY: usize = CORPUS_SIZE / 10;

// ---------------------------------------------------------------------------
// Oracles: explicit enumeration only, no engine calls.
// ---------------------------------------------------------------------------

/// Number of monomials x^i y^j of total degree exactly `total`, counted by
/// walking the full square of candidate exponents.
fn oracle_layer_count(total: u64) -> u64 {
    let mut count = 0;
    for i in 0..=total {
        for j in 0..=total {
            if i + j == total {
                count += 1;
            }
        }
    }
    count
}

/// Standard monomials of the ideal generated by `gens` (exponent pairs)
/// inside the box [0,bx) x [0,by): pairs not divisible by any generator.
fn oracle_standard_count(gens: &[(u64, u64)], bx: u64, by: u64) -> u64 {
    let mut count = 0;
    for u in 0..bx {
        for v in 0..by {
            if !gens.iter().any(|&(a, b)| u >= a && v >= b) {
                count += 1;
            }
        }
    }
    count
}

/// Multiplicity of (x^a, y^b) on k[x,y] by brute growth: the colength of the
/// n-th power is quadratic in n, so its second difference is the normalized
/// leading coefficient. The n-th power is generated by x^(a*i) y^(b*(n-i)),
/// and every standard monomial lies below (a*n, b*n).
fn oracle_power_multiplicity(a: u64, b: u64) -> u64 {
    let colength = |n: u64| {
        let gens: Vec<(u64, u64)> = (0..=n).map(|i| (a * i, b * (n - i))).collect();
        oracle_standard_count(&gens, a * n, b * n)
    };
    colength(5) + colength(3) - 2 * colength(4)
}

// ---------------------------------------------------------------------------
// Shared fixtures.
// ---------------------------------------------------------------------------

fn corpus_docs() -> &'static Vec<InstanceDocument> {
    static DOCS: OnceLock<Vec<InstanceDocument>> = OnceLock::new();
    DOCS.get_or_init(|| {
        let cfg = corpus::CorpusConfig {
            seed: CORPUS_SEED,
            size: CORPUS_SIZE,
        };
        let outcome = corpus::run_corpus(&cfg).expect("corpus generation");
        outcome
            .rows
            .iter()
            .map(|row| InstanceDocument::from_json(&row.instance).expect("corpus instance"))
            .collect()
    })
}

fn free_pair_system() -> MultiIdealSystem {
    let ctx = VariableContext::new(vec!["x", "y"]).unwrap();
    let m = MonomialIdeal::parse(&ctx, &["x", "y"]).unwrap();
    let module = MonomialSubquotient::total_ring(ctx);
    MultiIdealSystem::new(m.clone(), vec![m], module).unwrap()
}

fn conclude(label: &str, failures: Vec<String>, started: Instant) {
    let elapsed = started.elapsed();
    if failures.is_empty() {
        println!("[acceptance] {label}: PASS ({elapsed:.2?})");
    } else {
        println!("[acceptance] {label}: FAIL ({elapsed:.2?})");
        panic!("{label}:\n{}", failures.join("\n"));
    }
}

fn push_budget(failures: &mut Vec<String>, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    if elapsed > budget {
        failures.push(format!(
            "runtime {elapsed:.2?} exceeded budget {budget:.2?}"
        ));
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

// ---------------------------------------------------------------------------
// Criteria.
// ---------------------------------------------------------------------------

/// Criterion 1: on the pair of maximal ideals over the free rank-one module,
/// every graded piece matches brute enumeration and the fitted data is
/// exactly q = 2 with both mixed values equal to one.
#[test]
fn criterion_01_closed_form_oracle() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let sys = free_pair_system();
    let mut cache = PowerProductCache::new(&sys);
    for n0 in 0..4u64 {
        for n1 in 0..4u64 {
            let brute = oracle_layer_count(n0 + n1);
            if brute != n0 + n1 + 1 {
                failures.push(format!("oracle disagrees with closed form at ({n0},{n1})"));
            }
            let got = graded_piece_length(&sys, &mut cache, &[n0, n1]).unwrap();
            if got != big(brute) {
                failures.push(format!(
                    "length at ({n0},{n1}): engine {got}, oracle {brute}"
                ));
            }
        }
    }

    let fit = fit_bhattacharya(&sys, &FitOptions::default()).unwrap();
    if fit.q != 2 {
        failures.push(format!("q = {}, expected 2", fit.q));
    }
    if fit.mixed_at(&[1, 0]) != big(1) || fit.mixed_at(&[0, 1]) != big(1) {
        failures.push(format!(
            "mixed table {:?}, expected both values 1",
            fit.mixed
        ));
    }
    if fit.tilde_e != big(2) {
        failures.push(format!("tilde_e = {}, expected 2", fit.tilde_e));
    }

    push_budget(&mut failures, started, BUDGET_SINGLE_FIT);
    conclude("criterion 01 closed-form oracle", failures, started);
}

/// Criterion 2: e((x^a, y^b); k[x,y]) = a*b for all 1 <= a,b <= 4, checked
/// against brute-force colength growth.
#[test]
fn criterion_02_samuel_grid() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let ctx = VariableContext::new(vec!["x", "y"]).unwrap();
    let module = MonomialSubquotient::total_ring(ctx.clone());
    for a in 1..=4u64 {
        for b in 1..=4u64 {
            let oracle = oracle_power_multiplicity(a, b);
            if oracle != a * b {
                failures.push(format!("oracle disagrees with a*b at ({a},{b}): {oracle}"));
            }
            let gens = [format!("x^{a}"), format!("y^{b}")];
            let j = MonomialIdeal::parse(&ctx, &[&gens[0], &gens[1]]).unwrap();
            let got = samuel_multiplicity(&j, &module, &FitOptions::default()).unwrap();
            if got != big(oracle) {
                failures.push(format!("e((x^{a},y^{b})) = {got}, oracle {oracle}"));
            }
        }
    }

    push_budget(&mut failures, started, BUDGET_SAMUEL_GRID);
    conclude("criterion 02 samuel grid", failures, started);
}

/// Criterion 3: across the corpus, the fitted total degree equals the
/// saturated module's dimension minus one, and the polynomial predicts a
/// fresh sample outside both the fit and validation windows.
#[test]
fn criterion_03_degree_law() {
    let started = Instant::now();
    let mut failures = Vec::new();

    for (i, doc) in corpus_docs().iter().enumerate() {
        let sys = doc.to_system().unwrap();
        let fit = match fit_bhattacharya(&sys, &doc.options.fit_options()) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("instance {i}: fit failed: {e}"));
                continue;
            }
        };
        let q = dimension(&sys.saturated_module().unwrap()).unwrap();
        if q < 1 {
            failures.push(format!("instance {i}: saturated dimension {q} < 1"));
            continue;
        }
        let expected = (q - 1) as u32;
        let degree = fit.polynomial.total_degree();
        if degree != Some(expected) && !(expected == 0 && degree.is_none()) {
            failures.push(format!(
                "instance {i}: degree {degree:?}, expected {expected}"
            ));
        }
        // fresh point beyond the validation window
        let side = (fit.q.max(1)) as u64;
        let point = vec![fit.offset + 2 * side; sys.d() + 1];
        let mut cache = PowerProductCache::new(&sys);
        let observed = graded_piece_length(&sys, &mut cache, &point).unwrap();
        let predicted = fit.polynomial.eval_u64(&point);
        if predicted != BigRational::from_integer(BigInt::from(observed.clone())) {
            failures.push(format!(
                "instance {i}: prediction {predicted} != observed {observed} at {point:?}"
            ));
        }
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 03 degree law", failures, started);
}

/// Criterion 4: raising the scaling ideals to powers u multiplies each mixed
/// value by the matching monomial in u, for every u in {1,2,3}^d, including
/// the predicted sum identity.
#[test]
fn criterion_04_scaling_law() {
    let started = Instant::now();
    let mut failures = Vec::new();

    for (i, doc) in corpus_docs().iter().enumerate() {
        let sys = doc.to_system().unwrap();
        let opts = doc.options.fit_options();
        let d = sys.d();
        let mut vectors = vec![Vec::new()];
        for _ in 0..d {
            vectors = vectors
                .into_iter()
                .flat_map(|v| {
                    (1..=3u64).map(move |p| {
                        let mut w = v.clone();
                        w.push(p);
                        w
                    })
                })
                .collect();
        }
        for u in vectors {
            let report = verify_scaling(&sys, &u, &opts).unwrap();
            if report.verdict != Verdict::Verified {
                failures.push(format!(
                    "instance {i}, u={u:?}: verdict {:?}",
                    report.verdict
                ));
            } else if report.witnesses["tilde_e_match"] != serde_json::json!(true) {
                failures.push(format!("instance {i}, u={u:?}: sum identity failed"));
            }
        }
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 04 scaling law", failures, started);
}

/// Criterion 5: additivity over minimal primes of maximal coheight holds on
/// the whole corpus; no violations, and the inconclusive rate stays within
/// the pinned bound.
#[test]
fn criterion_05_additivity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut inconclusive = 0usize;

    for (i, doc) in corpus_docs().iter().enumerate() {
        let sys = doc.to_system().unwrap();
        let report = verify_additivity(&sys, &doc.options.fit_options()).unwrap();
        match report.verdict {
            Verdict::Verified => {}
            Verdict::Inconclusive => inconclusive += 1,
            Verdict::Violated => failures.push(format!(
                "instance {i}: additivity violated: {}",
                report.witnesses
            )),
        }
    }
    if inconclusive > MAX_INCONCLUSIVE_ADDITIVITY {
        failures.push(format!(
            "{inconclusive} inconclusive runs exceed the bound {MAX_INCONCLUSIVE_ADDITIVITY}"
        ));
    }
    println!(
        "[acceptance] criterion 05 inconclusive rate: {inconclusive}/{}",
        corpus_docs().len()
    );

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 05 additivity", failures, started);
}

/// Criterion 6: short-exact-sequence additivity on ten seeded nested pairs,
/// covering both the equal-degree branch and the one-end-dominates branch.
#[test]
fn criterion_06_exact_sequence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(CORPUS_SEED);
    let mut shared_top = 0usize;
    let mut dominated = 0usize;

    for k in 0..10 {
        let s = rng.random_range(2..=3usize);
        let names: Vec<&str> = ["x", "y", "z"][..s].to_vec();
        let ctx = VariableContext::new(names.clone()).unwrap();
        let m = MonomialIdeal::parse(&ctx, &names).unwrap();
        let a = rng.random_range(1..=3u64);
        let b = rng.random_range(1..=3u64);
        let (l, lprime) = if k % 2 == 0 {
            // split denominator: both ends keep the top dimension
            let f = format!("x^{a}*y^{b}");
            let g = format!("x^{a}");
            (
                MonomialIdeal::parse(&ctx, &[&f]).unwrap(),
                MonomialIdeal::parse(&ctx, &[&g]).unwrap(),
            )
        } else {
            // free ambient module: the kernel keeps the top dimension alone
            let g = format!("x^{a}");
            (
                MonomialIdeal::zero(ctx.clone()),
                MonomialIdeal::parse(&ctx, &[&g]).unwrap(),
            )
        };
        let module = MonomialSubquotient::quotient_ring(l);
        let sys = MultiIdealSystem::new(m.clone(), vec![m.clone()], module).unwrap();
        let report = verify_exact_sequence(&sys, &lprime, &FitOptions::default()).unwrap();
        if report.verdict != Verdict::Verified {
            failures.push(format!("pair {k}: verdict {:?}", report.verdict));
            continue;
        }
        match report.witnesses["branch"].as_str() {
            Some("both_ends_share_top_degree") => shared_top += 1,
            Some("sub_dominates") | Some("quotient_dominates") => dominated += 1,
            other => failures.push(format!("pair {k}: unexpected branch {other:?}")),
        }
    }
    if shared_top == 0 || dominated == 0 {
        failures.push(format!(
            "branch coverage incomplete: {shared_top} shared-degree, {dominated} dominated"
        ));
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 06 exact sequence", failures, started);
}

/// Criterion 7: wherever the search finds a filter-regular candidate on the
/// corpus, the full recursion report verifies; no conclusive run may fail.
#[test]
fn criterion_07_recursion() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut found = 0usize;
    let mut verified = 0usize;

    for (i, doc) in corpus_docs().iter().enumerate() {
        let sys = doc.to_system().unwrap();
        let win = doc.options.window_options();
        let candidate = match find_weak_fc(&sys, &win).unwrap() {
            Some((cand, _)) => cand,
            None => continue,
        };
        found += 1;
        let report =
            verify_recursion(&sys, Some(candidate), 1, &doc.options.fit_options(), &win).unwrap();
        match report.verdict {
            Verdict::Verified => verified += 1,
            Verdict::Inconclusive => {}
            Verdict::Violated => failures.push(format!(
                "instance {i}: recursion violated: {}",
                report.witnesses
            )),
        }
    }
    if found == 0 {
        failures.push("no corpus instance produced a candidate".into());
    }
    if verified == 0 {
        failures.push("no conclusive recursion run verified".into());
    }
    println!("[acceptance] criterion 07 candidates: {found}, verified: {verified}");

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 07 recursion", failures, started);
}

/// Criterion 8: the worked one-ideal chain instance gives 2 = 1 + 1 exactly,
/// and five seeded one-ideal instances decompose without violation.
#[test]
fn criterion_08_chain() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let sys = free_pair_system();
    let report = verify_chain(&sys, &[0], &FitOptions::default(), &Default::default()).unwrap();
    if report.verdict != Verdict::Verified {
        failures.push(format!("worked instance: verdict {:?}", report.verdict));
    }
    if report.lhs != serde_json::json!(2) || report.rhs != serde_json::json!(2) {
        failures.push(format!("worked instance: {} vs {}", report.lhs, report.rhs));
    }

    // five seeded one-ideal rows from an extended corpus draw
    let cfg = corpus::CorpusConfig {
        seed: CORPUS_SEED,
        size: 25,
    };
    let outcome = corpus::run_corpus(&cfg).unwrap();
    let chain_rows: Vec<_> = outcome
        .rows
        .iter()
        .filter(|row| row.theorem == "chain")
        .collect();
    if chain_rows.len() != 5 {
        failures.push(format!(
            "expected 5 seeded chain rows, got {}",
            chain_rows.len()
        ));
    }
    for row in &chain_rows {
        let doc = InstanceDocument::from_json(&row.instance).unwrap();
        let spec = doc.verify.clone().unwrap_or(VerifySpec {
            theorem: "chain".into(),
            ..Default::default()
        });
        let report = run_verify(&doc, &spec).unwrap();
        if report.verdict == Verdict::Violated {
            failures.push(format!(
                "row {}: chain violated: {}",
                row.index, report.witnesses
            ));
        }
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 08 chain", failures, started);
}

/// Criterion 9: replacing the module by its scaling-torsion-free quotient
/// changes neither the dimension nor any entry of the mixed table.
#[test]
fn criterion_09_saturation_invariance() {
    let started = Instant::now();
    let mut failures = Vec::new();

    for (i, doc) in corpus_docs().iter().enumerate() {
        let sys = doc.to_system().unwrap();
        let opts = doc.options.fit_options();
        let base = fit_bhattacharya(&sys, &opts).unwrap();
        let saturated = sys.with_module(sys.saturated_module().unwrap()).unwrap();
        let again = fit_bhattacharya(&saturated, &opts).unwrap();
        if base.q != again.q {
            failures.push(format!("instance {i}: q {} vs {}", base.q, again.q));
        }
        let lhs: BTreeMap<_, _> = base.mixed.clone();
        let rhs: BTreeMap<_, _> = again.mixed.clone();
        if lhs != rhs {
            failures.push(format!("instance {i}: tables differ: {lhs:?} vs {rhs:?}"));
        }
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 09 saturation invariance", failures, started);
}

/// Criterion 10: two corpus runs with the same seed render byte-identical
/// summaries.
#[test]
fn criterion_10_determinism() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let cfg = corpus::CorpusConfig {
        seed: CORPUS_SEED,
        size: 12,
    };
    let first = corpus::run_corpus(&cfg).unwrap();
    let second = corpus::run_corpus(&cfg).unwrap();
    if first.tsv.as_bytes() != second.tsv.as_bytes() {
        failures.push("summaries differ between identically seeded runs".into());
    }

    push_budget(&mut failures, started, BUDGET_CORPUS_PASS);
    conclude("criterion 10 determinism", failures, started);
}
