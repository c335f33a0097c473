//! Seeded generation of random instances and batch verification, producing
//! a byte-stable TSV index.
//!
//! Determinism contract: every random draw happens in the planning phase,
//! in a fixed order, from one ChaCha20 stream seeded with the given seed.
//! Execution is pure, so it may run in parallel; rows are emitted in plan
//! order. The same seed and size therefore always produce identical bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, ModuleSpec, MonomialSpec, OptionsSpec, VerifySpec};
use crate::verify::Verdict;

/// Seed and row count for one corpus run.
#[derive(Debug, Clone, Copy)]
pub struct CorpusConfig {
    pub seed: u64,
    pub size: usize,
}

/// One verified row of the corpus.
#[derive(Debug, Clone)]
pub struct CorpusRow {
    pub index: usize,
    pub theorem: String,
    pub verdict: String,
    pub lhs: String,
    pub rhs: String,
    pub instance: String,
}

/// The rendered TSV plus the structured rows behind it.
#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    pub tsv: String,
    pub rows: Vec<CorpusRow>,
}

const THEOREMS: [&str; 5] = ["additivity", "scaling", "exactseq", "recursion", "chain"];

fn random_monomial(rng: &mut ChaCha20Rng, s: usize, min_deg: u64, max_deg: u64) -> Vec<u64> {
    let degree = rng.random_range(min_deg..=max_deg);
    let mut exps = vec![0u64; s];
    for _ in 0..degree {
        exps[rng.random_range(0..s)] += 1;
    }
    exps
}

fn spec(exps: Vec<u64>) -> MonomialSpec {
    MonomialSpec::Exps(exps)
}

/// Draw one instance with the planned theorem; redraws until the system is
/// non-degenerate. All randomness for the row is consumed here.
fn plan_row(rng: &mut ChaCha20Rng, index: usize) -> InstanceDocument {
    let theorem = THEOREMS[index % THEOREMS.len()];
    let names = ["x", "y", "z"];
    for attempt in 0..100 {
        let s = rng.random_range(2..=3usize);
        let d = if theorem == "chain" {
            1
        } else {
            rng.random_range(1..=2usize)
        };
        let variables: Vec<String> = names[..s].iter().map(|n| n.to_string()).collect();

        // a finite-colength ideal: one pure power per variable plus
        // sometimes an extra generator
        let mut j_gens: Vec<MonomialSpec> = (0..s)
            .map(|i| {
                let mut e = vec![0u64; s];
                e[i] = rng.random_range(1..=2);
                spec(e)
            })
            .collect();
        if rng.random_range(0..2) == 1 {
            j_gens.push(spec(random_monomial(rng, s, 2, 3)));
        }

        // scaling ideals; recursion and chain rows always get a variable
        // generator in the first ideal so candidates exist
        let mut ideals: Vec<Vec<MonomialSpec>> = Vec::new();
        for i in 0..d {
            let mut gens: Vec<MonomialSpec> = Vec::new();
            let force_variable = (theorem == "recursion" || theorem == "chain") && i == 0;
            if force_variable || rng.random_range(0..10) < 6 {
                let mut e = vec![0u64; s];
                e[rng.random_range(0..s)] = 1;
                gens.push(spec(e));
            }
            let extra = rng.random_range(1..=2usize);
            for _ in 0..extra {
                gens.push(spec(random_monomial(rng, s, 1, 4)));
            }
            ideals.push(gens);
        }

        // module denominator: possibly empty (free module); degenerate
        // draws are discarded, and the last attempt falls back to free
        let l_count = if attempt == 99 {
            0
        } else {
            rng.random_range(0..=2usize)
        };
        let l_gens: Vec<MonomialSpec> = (0..l_count)
            .map(|_| spec(random_monomial(rng, s, 1, 4)))
            .collect();

        let verify = match theorem {
            "additivity" => VerifySpec {
                theorem: theorem.into(),
                ..Default::default()
            },
            "scaling" => VerifySpec {
                theorem: theorem.into(),
                u: Some((0..d).map(|_| rng.random_range(1..=3u64)).collect()),
                ..Default::default()
            },
            "exactseq" => {
                let extra = rng.random_range(1..=2usize);
                let mut lp = l_gens.clone();
                lp.extend((0..extra).map(|_| spec(random_monomial(rng, s, 1, 3))));
                VerifySpec {
                    theorem: theorem.into(),
                    lprime: Some(lp),
                    ..Default::default()
                }
            }
            "recursion" => VerifySpec {
                theorem: theorem.into(),
                v: Some(rng.random_range(1..=2u64)),
                ..Default::default()
            },
            // chain elements are chosen deterministically at run time
            _ => VerifySpec {
                theorem: theorem.into(),
                ..Default::default()
            },
        };

        let doc = InstanceDocument {
            variables,
            j: j_gens,
            ideals,
            module: ModuleSpec {
                u: vec![MonomialSpec::Text("1".into())],
                l: l_gens,
            },
            options: OptionsSpec::default(),
            verify: Some(verify),
        };
        match doc.to_system().and_then(|sys| sys.is_degenerate()) {
            Ok(false) => return doc,
            _ => continue,
        }
    }
    unreachable!("the final attempt uses a free module, which is never degenerate")
}

fn execute_row(index: usize, doc: &InstanceDocument) -> CorpusRow {
    let spec = doc.verify.clone().unwrap_or_default();
    let instance = serde_json::to_string(doc).expect("instance documents always serialize");
    match crate::instance::run_verify(doc, &spec) {
        Ok(report) => CorpusRow {
            index,
            theorem: spec.theorem,
            verdict: match report.verdict {
                Verdict::Verified => "verified",
                Verdict::Violated => "violated",
                Verdict::Inconclusive => "inconclusive",
            }
            .to_string(),
            lhs: report.lhs.to_string(),
            rhs: report.rhs.to_string(),
            instance,
        },
        Err(e) => CorpusRow {
            index,
            theorem: spec.theorem,
            verdict: "error".to_string(),
            lhs: "null".to_string(),
            rhs: json!(e.to_string()).to_string(),
            instance,
        },
    }
}

/// Generate, verify, and render a corpus.
pub fn run_corpus(cfg: &CorpusConfig) -> Result<CorpusOutcome> {
    if cfg.size == 0 {
        return Err(Error::InvalidInput("corpus size must be positive".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let planned: Vec<InstanceDocument> = (0..cfg.size).map(|i| plan_row(&mut rng, i)).collect();
    let rows: Vec<CorpusRow> = planned
        .par_iter()
        .enumerate()
        .map(|(i, doc)| execute_row(i, doc))
        .collect();
    let mut tsv = String::new();
    tsv.push_str("# mixmult corpus\n");
    tsv.push_str(&format!("# seed {}\n", cfg.seed));
    tsv.push_str(&format!("# version {}\n", env!("CARGO_PKG_VERSION")));
    tsv.push_str("index\ttheorem\tverdict\tlhs\trhs\tinstance\n");
    for row in &rows {
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            row.index, row.theorem, row.verdict, row.lhs, row.rhs, row.instance
        ));
    }
    Ok(CorpusOutcome { tsv, rows })
}
