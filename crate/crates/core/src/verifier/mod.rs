//! Property suites: every identity of the calculus as an executable check
//! over randomized cochains/chains or over all basis classes.
//!
//! Trials are seeded by `(seed, suite, identity, trial index)`, run in
//! parallel and merged by index, so a report depends only on the algebra and
//! the configuration.

mod bv_suite;
mod calculus;
mod chain_identities;
mod comp_module;
mod gerstenhaber;
mod operad;

use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Coefficients, HomAlgebra, SymmetricStructure};
use crate::chain::Chain;
use crate::cochain::{cochain_space_basis, normalized_cochain_basis, Cochain};
use crate::error::{Error, Result};
use crate::homology::{Engine, EngineConfig};
use crate::linalg::Vector;
use crate::rng::{small_scalar, stream};
use crate::tensor::pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Operad,
    CompModule,
    Chain,
    Calculus,
    Gerstenhaber,
    Bv,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Operad,
        Suite::CompModule,
        Suite::Chain,
        Suite::Calculus,
        Suite::Gerstenhaber,
        Suite::Bv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Operad => "operad",
            Suite::CompModule => "comp_module",
            Suite::Chain => "chain",
            Suite::Calculus => "calculus",
            Suite::Gerstenhaber => "gerstenhaber",
            Suite::Bv => "bv",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedTensor {
    pub name: String,
    pub kind: String,
    pub degree: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub detail: String,
    pub inputs: Vec<NamedTensor>,
}

impl Witness {
    pub fn new(detail: impl Into<String>) -> Self {
        Witness {
            trial: None,
            detail: detail.into(),
            inputs: Vec::new(),
        }
    }

    pub fn cochain(mut self, name: &str, f: &Cochain) -> Self {
        self.inputs.push(NamedTensor {
            name: name.into(),
            kind: format!("cochain in {}", f.target()),
            degree: f.degree(),
            coeffs: f.coeffs().to_strings(),
        });
        self
    }

    pub fn chain(mut self, name: &str, x: &Chain) -> Self {
        self.inputs.push(NamedTensor {
            name: name.into(),
            kind: "chain".into(),
            degree: x.degree(),
            coeffs: x.coeffs().to_strings(),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub status: Status,
    /// Informational checks are reported but never fail the suite.
    pub required: bool,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub algebra: String,
    pub seed: u64,
    pub trials: usize,
    pub status: Status,
    pub identities: Vec<IdentityOutcome>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn first_failure(&self) -> Option<&IdentityOutcome> {
        self.identities.iter().find(|o| o.required && o.status == Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub cochain_cap: usize,
    pub chain_cap: usize,
    pub trials: usize,
    pub perturbations: usize,
    pub seed: u64,
    /// Random coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cochain_cap: 3,
            chain_cap: 4,
            trials: 100,
            perturbations: 20,
            seed: 0,
            coeff_bound: 3,
        }
    }
}

impl VerifyConfig {
    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            cochain_cap: self.cochain_cap,
            chain_cap: self.chain_cap,
            perturbations: self.perturbations,
            seed: self.seed,
        }
    }
}

/// Outcome of one trial.
pub(crate) enum Trial {
    Pass,
    Fail(Witness),
    /// The sampled degrees admit no instance of the identity.
    NotApplicable,
}

impl Trial {
    pub(crate) fn check(ok: bool, witness: impl FnOnce() -> Witness) -> Trial {
        if ok {
            Trial::Pass
        } else {
            Trial::Fail(witness())
        }
    }
}

type Slots = Vec<OnceLock<Result<Vec<Cochain>>>>;

/// Shared state for one suite run on one algebra.
pub(crate) struct Runner<'a> {
    pub alg: &'a HomAlgebra,
    pub config: VerifyConfig,
    pub engine: Engine<'a>,
    suite: Suite,
    bases: Slots,
    normalized: Slots,
    outcomes: Mutex<Vec<IdentityOutcome>>,
}

impl<'a> Runner<'a> {
    fn new(alg: &'a HomAlgebra, suite: Suite, config: VerifyConfig) -> Self {
        let slots = || (0..config.cochain_cap + 3).map(|_| OnceLock::new()).collect();
        Runner {
            alg,
            config,
            engine: Engine::new(alg, config.engine()),
            suite,
            bases: slots(),
            normalized: slots(),
            outcomes: Mutex::new(Vec::new()),
        }
    }

    fn basis(&self, p: usize, normalized: bool) -> Result<&[Cochain]> {
        let slots = if normalized { &self.normalized } else { &self.bases };
        let slot = slots
            .get(p)
            .ok_or_else(|| Error::IndexOutOfRange(format!("random cochains are limited to degree {}", slots.len() - 1)))?;
        slot.get_or_init(|| {
            if normalized && p > 0 {
                normalized_cochain_basis(self.alg, p, Coefficients::Algebra)
            } else {
                cochain_space_basis(self.alg, p, Coefficients::Algebra)
            }
        })
        .as_ref()
        .map(Vec::as_slice)
        .map_err(Clone::clone)
    }

    pub fn random_cochain(&self, p: usize, rng: &mut ChaCha8Rng) -> Result<Cochain> {
        Ok(combine(self.alg, p, self.basis(p, false)?, rng, self.config.coeff_bound))
    }

    pub fn random_normalized_cochain(&self, p: usize, rng: &mut ChaCha8Rng) -> Result<Cochain> {
        Ok(combine(self.alg, p, self.basis(p, true)?, rng, self.config.coeff_bound))
    }

    /// Dense for small degrees, a handful of random terms otherwise.
    pub fn random_chain(&self, n: usize, rng: &mut ChaCha8Rng) -> Chain {
        let dim = self.alg.dim();
        let size = pow(dim, n + 1);
        let b = self.config.coeff_bound;
        let mut v = Vector::zeros(size);
        if size <= 32 {
            for x in &mut v.0 {
                *x = small_scalar(rng, b);
            }
        } else {
            for _ in 0..8 {
                let i = rng.gen_range(0..size);
                v.0[i] += small_scalar(rng, b);
            }
        }
        Chain::from_coeffs(dim, n, v).expect("sized above")
    }

    /// Degrees available for random cochains: `0` only when regular.
    pub fn cochain_degrees(&self) -> Vec<usize> {
        let lo = if self.alg.is_regular() { 0 } else { 1 };
        (lo..=self.config.cochain_cap).collect()
    }

    fn push(&self, o: IdentityOutcome) {
        self.outcomes.lock().expect("no poisoned lock").push(o);
    }

    pub fn skip(&self, name: &str, required: bool, reason: &str) {
        self.push(IdentityOutcome {
            name: name.into(),
            status: Status::Skipped,
            required,
            checked: 0,
            failures: 0,
            reason: Some(reason.into()),
            witness: None,
        });
    }

    /// `config.trials` random trials of one identity.
    pub fn random<F>(&self, name: &str, required: bool, check: F)
    where
        F: Fn(&mut ChaCha8Rng) -> Result<Trial> + Sync,
    {
        let label = format!("{}/{name}", self.suite);
        let seed = self.config.seed;
        let results: Vec<Result<Trial>> = (0..self.config.trials)
            .into_par_iter()
            .map(|t| check(&mut stream(seed, &label, t as u64)))
            .collect();
        self.merge(name, required, results);
    }

    /// One check per case, e.g. per tuple of basis classes.
    pub fn exhaustive<T, F>(&self, name: &str, required: bool, cases: &[T], check: F)
    where
        T: Sync,
        F: Fn(&T) -> Result<Trial> + Sync,
    {
        let results: Vec<Result<Trial>> = cases.par_iter().map(&check).collect();
        self.merge(name, required, results);
    }

    /// A single deterministic check.
    pub fn single(&self, name: &str, required: bool, check: impl FnOnce() -> Result<Trial>) {
        self.merge(name, required, vec![check()]);
    }

    fn merge(&self, name: &str, required: bool, results: Vec<Result<Trial>>) {
        let mut checked = 0;
        let mut failures = 0;
        let mut witness = None;
        for (t, r) in results.into_iter().enumerate() {
            let w = match r {
                Ok(Trial::Pass) => {
                    checked += 1;
                    continue;
                }
                Ok(Trial::NotApplicable) => continue,
                Ok(Trial::Fail(w)) => w,
                Err(e) => Witness::new(format!("{}: {e}", e.kind())),
            };
            checked += 1;
            failures += 1;
            if witness.is_none() {
                witness = Some(Witness { trial: Some(t), ..w });
            }
        }
        let (status, reason) = if failures > 0 {
            (Status::Fail, None)
        } else if checked == 0 {
            (Status::Skipped, Some("NoApplicableDegrees".to_string()))
        } else {
            (Status::Pass, None)
        };
        self.push(IdentityOutcome {
            name: name.into(),
            status,
            required,
            checked,
            failures,
            reason,
            witness,
        });
    }

    fn finish(self) -> SuiteResult {
        let identities = self.outcomes.into_inner().expect("no poisoned lock");
        let status = if identities.iter().any(|o| o.required && o.status == Status::Fail) {
            Status::Fail
        } else if identities.iter().all(|o| o.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        SuiteResult {
            suite: self.suite,
            algebra: self.alg.name().to_string(),
            seed: self.config.seed,
            trials: self.config.trials,
            status,
            identities,
        }
    }
}

fn combine(alg: &HomAlgebra, p: usize, basis: &[Cochain], rng: &mut ChaCha8Rng, bound: i64) -> Cochain {
    let mut f = Cochain::zero(alg.dim(), p, Coefficients::Algebra);
    for b in basis {
        f.axpy(&small_scalar(rng, bound), b).expect("same shape");
    }
    f
}

/// A random small-integer combination of the equivariant degree-`p` basis;
/// the same `(algebra, p, seed)` always gives the same cochain.
pub fn random_cochain(alg: &HomAlgebra, p: usize, seed: u64) -> Result<Cochain> {
    let basis = cochain_space_basis(alg, p, Coefficients::Algebra)?;
    let mut rng = stream(seed, "random_cochain", p as u64);
    Ok(combine(alg, p, &basis, &mut rng, 3))
}

/// Runs one suite. `theta` is only consulted by the BV suite, which searches
/// for a symmetric structure when none is given.
pub fn run_suite(
    suite: Suite,
    alg: &HomAlgebra,
    theta: Option<&SymmetricStructure>,
    config: VerifyConfig,
) -> SuiteResult {
    let runner = Runner::new(alg, suite, config);
    match suite {
        Suite::Operad => operad::run(&runner),
        Suite::CompModule => comp_module::run(&runner),
        Suite::Chain => chain_identities::run(&runner),
        Suite::Calculus => calculus::run(&runner),
        Suite::Gerstenhaber => gerstenhaber::run(&runner),
        Suite::Bv => bv_suite::run(&runner, theta),
    }
    runner.finish()
}

pub fn run_suites(
    suites: &[Suite],
    alg: &HomAlgebra,
    theta: Option<&SymmetricStructure>,
    config: VerifyConfig,
) -> Vec<SuiteResult> {
    suites.iter().map(|&s| run_suite(s, alg, theta, config)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageEntry {
    pub identity: &'static str,
    pub suite: Suite,
    pub required: bool,
}

/// Where each identity is checked; every identity has exactly one home.
pub fn coverage() -> Vec<CoverageEntry> {
    let mut out = Vec::new();
    for (suite, list) in [
        (Suite::Operad, operad::IDENTITIES),
        (Suite::CompModule, comp_module::IDENTITIES),
        (Suite::Chain, chain_identities::IDENTITIES),
        (Suite::Calculus, calculus::IDENTITIES),
        (Suite::Gerstenhaber, gerstenhaber::IDENTITIES),
        (Suite::Bv, bv_suite::IDENTITIES),
    ] {
        for &(identity, required) in list {
            out.push(CoverageEntry {
                identity,
                suite,
                required,
            });
        }
    }
    out
}

pub(crate) fn pick<T: Copy>(rng: &mut ChaCha8Rng, options: &[T]) -> Option<T> {
    if options.is_empty() {
        None
    } else {
        Some(options[rng.gen_range(0..options.len())])
    }
}

#[cfg(test)]
mod tests;
