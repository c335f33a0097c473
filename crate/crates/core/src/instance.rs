//! The JSON instance format and the run entry points shared by the command
//! line tool and the C interface.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::context::{Ctx, VariableContext};
use crate::error::{Error, Result};
use crate::hilbert::{fit_bhattacharya, sample_lengths, FitOptions, PowerProductCache};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::primes::{build_pi, dimension, minimal_primes};
use crate::sequence::{ElementCandidate, WindowOptions};
use crate::subquotient::MonomialSubquotient;
use crate::system::MultiIdealSystem;
use crate::verify::{
    big_to_json, fit_to_json, greedy_chain, verify_additivity, verify_chain, verify_exact_sequence,
    verify_recursion, verify_scaling, VerificationReport,
};

/// One generator, either as display text (`"x^2*y"`) or as an exponent
/// vector (`[2, 1]`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialSpec {
    Text(String),
    Exps(Vec<u64>),
}

impl MonomialSpec {
    pub fn to_monomial(&self, ctx: &Ctx) -> Result<Monomial> {
        match self {
            MonomialSpec::Text(t) => Monomial::parse(ctx, t),
            MonomialSpec::Exps(e) => {
                if e.len() != ctx.len() {
                    return Err(Error::Parse(format!(
                        "exponent vector length {} does not match {} variables",
                        e.len(),
                        ctx.len()
                    )));
                }
                Ok(Monomial::from_u64s(e))
            }
        }
    }
}

fn ideal_from_specs(ctx: &Ctx, specs: &[MonomialSpec]) -> Result<MonomialIdeal> {
    let gens = specs
        .iter()
        .map(|s| s.to_monomial(ctx))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(ctx.clone(), gens)
}

/// Numerator and denominator generators of the module; defaults to the
/// full ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default = "unit_gens")]
    pub u: Vec<MonomialSpec>,
    #[serde(default)]
    pub l: Vec<MonomialSpec>,
}

fn unit_gens() -> Vec<MonomialSpec> {
    vec![MonomialSpec::Text("1".to_string())]
}

impl Default for ModuleSpec {
    fn default() -> Self {
        ModuleSpec {
            u: unit_gens(),
            l: Vec::new(),
        }
    }
}

/// Tunable knobs; all have safe defaults.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct OptionsSpec {
    /// First sampling offset for interpolation.
    pub offset: u64,
    /// Largest offset tried before reporting non-stabilization.
    pub cap: u64,
    /// Side length of the windows used by the filter-regular checks.
    pub window: u64,
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec {
            offset: 1,
            cap: 64,
            window: 3,
        }
    }
}

impl OptionsSpec {
    pub fn fit_options(&self) -> FitOptions {
        FitOptions {
            offset: self.offset,
            cap: self.cap,
        }
    }

    pub fn window_options(&self) -> WindowOptions {
        WindowOptions {
            window_len: self.window,
            window_base: None,
        }
    }
}

/// Which identity to verify, with its parameters. All fields other than
/// `theorem` are optional and only read by the verifier that needs them.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerifySpec {
    #[serde(default)]
    pub theorem: String,
    /// Scaling exponents, one per scaling ideal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<u64>>,
    /// Filter-regular candidate variable (by name) for the recursion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    /// Index of the scaling ideal the candidate belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Fold exponent for the dropped ideal in the recursion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<u64>,
    /// Intermediate denominator for the exact-sequence check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lprime: Option<Vec<MonomialSpec>>,
    /// Chain elements (variable names) for the chain decomposition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<String>>,
}

/// A complete problem instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub variables: Vec<String>,
    pub j: Vec<MonomialSpec>,
    #[serde(default)]
    pub ideals: Vec<Vec<MonomialSpec>>,
    #[serde(default)]
    pub module: ModuleSpec,
    #[serde(default)]
    pub options: OptionsSpec,
    /// Optional embedded verification request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySpec>,
}

impl InstanceDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance JSON: {e}")))
    }

    pub fn context(&self) -> Result<Ctx> {
        VariableContext::new(
            self.variables
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>(),
        )
    }

    pub fn to_system(&self) -> Result<MultiIdealSystem> {
        let ctx = self.context()?;
        let j = ideal_from_specs(&ctx, &self.j)?;
        let ideals = self
            .ideals
            .iter()
            .map(|specs| ideal_from_specs(&ctx, specs))
            .collect::<Result<Vec<_>>>()?;
        let u = ideal_from_specs(&ctx, &self.module.u)?;
        let l = ideal_from_specs(&ctx, &self.module.l)?;
        let module = MonomialSubquotient::new(u, l)?;
        MultiIdealSystem::new(j, ideals, module)
    }
}

/// Compute the full fit for an instance: dimension, polynomial, mixed
/// values, and their sum.
pub fn run_compute(doc: &InstanceDocument) -> Result<Value> {
    let sys = doc.to_system()?;
    let fit = fit_bhattacharya(&sys, &doc.options.fit_options())?;
    let mut out = match fit_to_json(&fit) {
        Value::Object(m) => m,
        _ => unreachable!("fit serializes to an object"),
    };
    out.insert("variables".into(), json!(doc.variables));
    out.insert("d".into(), json!(sys.d()));
    // the sum of the mixed values equals the multiplicity of the fiber
    // module, so it is reported under both names
    out.insert("rees_via_fiber_identity".into(), big_to_json(&fit.tilde_e));
    Ok(Value::Object(out))
}

/// Dimension and support data: minimal primes of the annihilator, and the
/// top-dimensional components of the saturated module with their lengths.
pub fn run_primes(doc: &InstanceDocument) -> Result<Value> {
    let sys = doc.to_system()?;
    let module = sys.module();
    let ann = module.annihilator();
    let primes = if module.is_zero() {
        Vec::new()
    } else {
        minimal_primes(&ann)?
    };
    let dim = dimension(module)?;
    let saturated = match build_pi(&sys) {
        Ok(components) => {
            let sat_dim = dimension(&sys.saturated_module()?)?;
            json!({
                "dimension": sat_dim,
                "components": components.iter().map(|c| json!({
                    "prime": c.prime.names(),
                    "local_length": big_to_json(&c.local_length),
                })).collect::<Vec<_>>(),
            })
        }
        Err(Error::Degenerate(_)) => json!("degenerate"),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "module_dimension": dim,
        "annihilator": ann.gen_strings(),
        "minimal_primes": primes.iter().map(|p| p.names()).collect::<Vec<_>>(),
        "saturated": saturated,
    }))
}

/// Dump raw graded-piece lengths on the cube `[offset, offset+extent)^{d+1}`.
pub fn run_hilbert(doc: &InstanceDocument, extent: u64) -> Result<Value> {
    if extent == 0 {
        return Err(Error::InvalidInput(
            "the sample extent must be positive".into(),
        ));
    }
    let sys = doc.to_system()?;
    let axes = sys.d() + 1;
    let offset = doc.options.offset;
    let points: Vec<Vec<u64>> = crate::poly::tensor_exponents(axes, extent as u32)
        .into_iter()
        .map(|e| e.into_iter().map(|v| offset + v as u64).collect())
        .collect();
    let mut cache = PowerProductCache::new(&sys);
    let lengths = sample_lengths(&sys, &mut cache, &points)?;
    let samples: Vec<Value> = points
        .iter()
        .zip(&lengths)
        .map(|(p, l)| json!({ "exponents": p, "length": big_to_json(l) }))
        .collect();
    Ok(json!({
        "offset": offset,
        "extent": extent,
        "samples": samples,
    }))
}

fn resolve_candidate(
    sys: &MultiIdealSystem,
    spec: &VerifySpec,
) -> Result<Option<ElementCandidate>> {
    match &spec.candidate {
        None => Ok(None),
        Some(name) => {
            let var = sys
                .ctx()
                .index_of(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
            let cand = ElementCandidate::new(sys, spec.index.unwrap_or(0), var)?;
            Ok(Some(cand))
        }
    }
}

/// Run one verification described by `spec` against the instance.
pub fn run_verify(doc: &InstanceDocument, spec: &VerifySpec) -> Result<VerificationReport> {
    let sys = doc.to_system()?;
    let fit = doc.options.fit_options();
    let win = doc.options.window_options();
    match spec.theorem.as_str() {
        "additivity" => verify_additivity(&sys, &fit),
        "scaling" => {
            let u = spec.u.as_ref().ok_or_else(|| {
                Error::InvalidInput("scaling verification needs exponents (u)".into())
            })?;
            verify_scaling(&sys, u, &fit)
        }
        "exactseq" => {
            let specs = spec.lprime.as_ref().ok_or_else(|| {
                Error::InvalidInput(
                    "exact-sequence verification needs an intermediate ideal (lprime)".into(),
                )
            })?;
            let ctx = doc.context()?;
            let lprime = ideal_from_specs(&ctx, specs)?;
            verify_exact_sequence(&sys, &lprime, &fit)
        }
        "recursion" => {
            let cand = resolve_candidate(&sys, spec)?;
            verify_recursion(&sys, cand, spec.v.unwrap_or(1), &fit, &win)
        }
        "chain" => {
            let vars: Vec<usize> = match &spec.chain {
                Some(names) => names
                    .iter()
                    .map(|n| {
                        sys.ctx()
                            .index_of(n)
                            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {n:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => greedy_chain(&sys, &fit, &win)?,
            };
            verify_chain(&sys, &vars, &fit, &win)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown theorem {other:?}; expected additivity, scaling, exactseq, recursion, or chain"
        ))),
    }
}

/// Resolve the effective verification request: an explicit one wins over
/// the instance's embedded request.
pub fn effective_verify_spec(
    doc: &InstanceDocument,
    explicit: Option<VerifySpec>,
) -> Result<VerifySpec> {
    match explicit {
        Some(spec) => Ok(spec),
        None => doc.verify.clone().ok_or_else(|| {
            Error::InvalidInput(
                "no verification request: pass a theorem or embed one in the instance".into(),
            )
        }),
    }
}

/// Helper shared with reports: lengths in the support table.
pub fn biguint_from_u64(v: u64) -> BigUint {
    BigUint::from(v)
}
