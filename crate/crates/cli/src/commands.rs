//! Command dispatch and report assembly.

use eids::detvar::{generic_codim, smoothability_class, StratumCheck};
use eids::invariants::{invariant_chain_with, le_greuel_check};
use eids::sections::{is_strongly_general, minimal_invariant_search, swallowtail_demo};
use eids::{DetVariety, Error, Field, Fp, Limits, Settings, SmoothabilityClass, Verdict, Q};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::descriptor::VarietyDescriptor;
use crate::status::{Failure, Status};

pub const REPORT_SCHEMA: &str = "eids.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Exact arithmetic over the rationals.
    Rational,
    /// Arithmetic modulo the prime 2^31 - 1.
    Modular,
}

/// Everything a report depends on besides the descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub retries: usize,
    pub coeff_bound: i64,
    pub mode: Mode,
    pub limits: Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = Settings::default();
        RunConfig {
            seed: s.seed,
            trials: s.trials,
            retries: s.retries,
            coeff_bound: s.coeff_bound,
            mode: Mode::Rational,
            limits: Limits::default(),
        }
    }
}

impl RunConfig {
    pub fn settings(&self) -> Settings {
        Settings {
            seed: self.seed,
            trials: self.trials,
            retries: self.retries,
            coeff_bound: self.coeff_bound,
            ..Settings::default()
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let bad = |what: &str| Err(Failure::new(Status::Usage, format!("{what} must be positive")));
        if self.trials == 0 {
            return bad("--trials");
        }
        if self.retries == 0 {
            return bad("--retries");
        }
        if self.coeff_bound <= 0 {
            return bad("--coeff-bound");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Invariants { le_greuel: bool, hyperplane: Option<String> },
    Genericity { hyperplane: Option<String>, search: bool },
    DemoSwallowtail,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Invariants { .. } => "invariants",
            Command::Genericity { .. } => "genericity",
            Command::DemoSwallowtail => "demo-swallowtail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub label: Option<String>,
    pub config: RunConfig,
    pub result: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    /// [`Status::Ok`] unless the result itself is a negative or undecided
    /// verdict.
    pub status: Status,
}

pub fn run(command: &Command, descriptor: Option<&VarietyDescriptor>, config: &RunConfig) -> Result<Outcome, Failure> {
    config.validate()?;
    let (result, status) = match (command, descriptor) {
        (Command::DemoSwallowtail, _) => {
            let r = swallowtail_demo().map_err(|e| Failure::from_error("swallowtail demo", &e))?;
            (to_value(&r), Status::Ok)
        }
        (_, None) => return Err(Failure::new(Status::Usage, format!("`{}` needs a descriptor", command.name()))),
        (command, Some(d)) => match config.mode {
            Mode::Rational => dispatch::<Q>(command, d, config)?,
            Mode::Modular => dispatch::<Fp>(command, d, config)?,
        },
    };
    let report = Report {
        schema: REPORT_SCHEMA.into(),
        command: command.name().into(),
        label: descriptor.and_then(|d| d.label.clone()),
        config: *config,
        result,
    };
    Ok(Outcome { report, status })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn dispatch<K: Field>(command: &Command, d: &VarietyDescriptor, config: &RunConfig) -> Result<(Value, Status), Failure> {
    match command {
        Command::Check => check::<K>(d, config),
        Command::Invariants { le_greuel, hyperplane } => invariants::<K>(d, config, *le_greuel, hyperplane.as_deref()),
        Command::Genericity { hyperplane, search } => genericity::<K>(d, config, hyperplane.as_deref(), *search),
        Command::DemoSwallowtail => unreachable!("handled without a descriptor"),
    }
}

#[derive(Serialize)]
struct CheckResult {
    m: usize,
    n: usize,
    t: usize,
    nvars: usize,
    determinantal: bool,
    expected_codim: usize,
    codim: i64,
    dim: Option<usize>,
    smoothability: Option<SmoothabilityClass>,
    hypersurface_type: bool,
    eids: Option<bool>,
    strata: Vec<StratumCheck>,
    /// Generators of the first non-transversality ideal meeting points
    /// other than the origin.
    witness: Option<Vec<String>>,
}

fn check<K: Field>(d: &VarietyDescriptor, config: &RunConfig) -> Result<(Value, Status), Failure> {
    let ring = d.ring(config.limits)?;
    let matrix = d.matrix_in::<K>(&ring)?;
    let (m, n, t) = (matrix.nrows(), matrix.ncols(), d.t);
    let expected_codim = generic_codim(m, n, t).map_err(|e| Failure::from_error("type", &e))?;
    let mut r = CheckResult {
        m,
        n,
        t,
        nvars: ring.nvars(),
        determinantal: false,
        expected_codim,
        codim: -1,
        dim: None,
        smoothability: None,
        hypersurface_type: eids::detvar::is_hypersurface_type(m, n, t),
        eids: None,
        strata: Vec::new(),
        witness: None,
    };
    let v = match DetVariety::build(matrix, t) {
        Ok(v) => v,
        Err(Error::NotDeterminantal { actual, .. }) => {
            r.codim = actual;
            return Ok((to_value(&r), Status::Hypothesis));
        }
        Err(e) => return Err(Failure::from_error("determinantal check", &e)),
    };
    let verdict = v.is_eids().map_err(|e| Failure::from_error("EIDS check", &e))?;
    r.determinantal = true;
    r.codim = v.codim() as i64;
    r.dim = Some(v.dim());
    r.smoothability = Some(v.smoothability_class());
    r.eids = Some(verdict.eids);
    r.strata = verdict.strata;
    r.witness = verdict.witness.map(|w| w.gens().iter().map(ToString::to_string).collect());
    Ok((to_value(&r), Status::Ok))
}

fn require_eids<K: Field>(v: &DetVariety<K>) -> Result<(), Failure> {
    let verdict = v.is_eids().map_err(|e| Failure::from_error("EIDS check", &e))?;
    if verdict.eids {
        return Ok(());
    }
    let bad = verdict.strata.iter().find(|s| !s.ok).map_or(0, |s| s.stratum);
    Err(Failure::new(Status::Hypothesis, format!("not an EIDS: stratum {bad} is not transversal near the origin")))
}

fn invariants<K: Field>(
    d: &VarietyDescriptor,
    config: &RunConfig,
    le_greuel: bool,
    hyperplane: Option<&str>,
) -> Result<(Value, Status), Failure> {
    let v = d.build::<K>(config.limits)?;
    let first = hyperplane.map(|h| d.hyperplane(v.ring(), h)).transpose()?;
    let settings = config.settings();
    let report = invariant_chain_with(&v, first.as_ref(), &settings)
        .map_err(|e| Failure::from_error("invariant chain", &e))?;
    let check = if le_greuel {
        Some(le_greuel_check(&v, first.as_ref(), &settings.child(7)).map_err(|e| Failure::from_error("Le-Greuel check", &e))?)
    } else {
        None
    };
    Ok((json!({ "invariants": report, "le_greuel": check }), Status::Ok))
}

fn genericity<K: Field>(
    d: &VarietyDescriptor,
    config: &RunConfig,
    hyperplane: Option<&str>,
    search: bool,
) -> Result<(Value, Status), Failure> {
    if hyperplane.is_none() && !search {
        return Err(Failure::new(Status::Usage, "genericity needs --hyperplane NAME or --search".into()));
    }
    let v = d.build::<K>(config.limits)?;
    require_eids(&v)?;
    let settings = config.settings();
    if let Some(h) = hyperplane {
        let p = d.hyperplane(v.ring(), h)?;
        let g = is_strongly_general(&v, &p, &settings).map_err(|e| Failure::from_error("genericity test", &e))?;
        let status = match g.verdict {
            Verdict::Inconclusive { .. } => Status::Inconclusive,
            _ => Status::Ok,
        };
        return Ok((json!({ "generality": g }), status));
    }
    let s = minimal_invariant_search(&v, &settings).map_err(|e| Failure::from_error("section search", &e))?;
    let section_class = smoothability_class(v.m(), v.n(), v.t(), v.nvars() - 1)
        .map_err(|e| Failure::from_error("section type", &e))?;
    let minimum_milnor_number = (matches!(v.dim(), 2 | 3) && section_class == SmoothabilityClass::IsolatedSmoothable)
        .then(|| s.minimum[0]);
    let status = if s.stable { Status::Ok } else { Status::Inconclusive };
    let value = json!({
        "witness": s.witness_form(),
        "minimum_milnor_number": minimum_milnor_number,
        "search": s,
    });
    Ok((value, status))
}
