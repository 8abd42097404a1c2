//! Scenario files, certificate reports, the scenario runner and the
//! independent report verifier.
//!
//! Scenarios and reports are JSON documents with a fixed field order, so a
//! run is byte-deterministic given the same scenario and seed (timing is
//! carried outside the deterministic body). Every identity a report claims
//! is re-verified before emission.

mod build;
mod tasks;
mod verify;
pub mod wire;

pub use build::{build_filtration, build_ideal, build_instance, BuiltInstance};
pub use verify::{verify_report, VerifyOutcome};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wire::{WireAlgebra, WireElement, WireMatrix, WirePoly, WireScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Lift,
    RightLift,
    Verify,
    BruteForce,
    CheckPair,
    CommutatorFiltration,
    Bezout,
    Divide,
    LfExtend,
    AbelianizeCompare,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Lift => "lift",
            Task::RightLift => "right-lift",
            Task::Verify => "verify",
            Task::BruteForce => "brute-force",
            Task::CheckPair => "check-pair",
            Task::CommutatorFiltration => "commutator-filtration",
            Task::Bezout => "bezout",
            Task::Divide => "divide",
            Task::LfExtend => "lf-extend",
            Task::AbelianizeCompare => "abelianize-compare",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    /// GF(p)<u_1..u_g> truncated below deg_cap. `presented` backs it by a
    /// normal-form engine (needed for lf tasks).
    TruncFree {
        p: u64,
        generators: usize,
        deg_cap: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        presented: Option<bool>,
    },
    /// Z/p^k as a 1-dimensional algebra with the adic chain.
    ZmodPk { p: u64, k: u32 },
    /// GF(p) as a presented pair with zero ideal.
    PrimeField { p: u64 },
    /// Scalars plus strictly upper triangular size x size matrices.
    ScalarUpper { p: u64, size: usize },
    /// Full upper triangular matrices (hypothesis-failure specimen).
    FullUpper { p: u64, size: usize },
    /// Explicit structure constants.
    Table { algebra: WireAlgebra },
    /// Explicit presentation over GF(p); relations are arrays of
    /// [coefficient, word] pairs.
    Presentation {
        p: u64,
        generators: Vec<String>,
        relations: Vec<Vec<(WireScalar, Vec<u16>)>>,
        deg_cap: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        residues: Option<Vec<WireElement>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IdealSpec {
    Generators { generators: Vec<WireElement> },
    Zero,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationSpec {
    /// The instance's natural chain (adic for Z/p^k, degree for the matrix
    /// and truncated-free families, kernel powers for presented pairs).
    Default,
    Adic,
    Degree,
    Commutator,
    /// Explicit descending chain given by generator lists.
    Chain { chain: Vec<Vec<WireElement>> },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideSpec {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// Degree cap for Bezout cofactor search (default deg f1 + deg f2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bezout_degree: Option<usize>,
    /// Candidate-space cap for brute-force search (default 10^8).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_space: Option<u128>,
    /// Element-enumeration cap for Jacobson/locality decisions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<u128>,
}

impl Caps {
    pub fn search_space(&self) -> u128 {
        self.search_space.unwrap_or(100_000_000)
    }
    pub fn enumeration(&self) -> u128 {
        self.enumeration.unwrap_or(1 << 20)
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            bezout_degree: None,
            search_space: None,
            enumeration: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LfSpec {
    /// Truncation cap of the extension (default 4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_cap: Option<usize>,
    /// Also compute the universal map back to the source through its own
    /// lifting result.
    #[serde(default)]
    pub universal_back: bool,
}

/// A scenario file. Unknown fields are schema violations.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub task: Task,
    #[serde(default)]
    pub seed: u64,
    pub instance: InstanceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationSpec>,
    /// The polynomial F for lift/verify/brute-force/lf tasks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<WirePoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_f1: Option<WirePoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_f2: Option<WirePoly>,
    /// Claimed factors for the verify task.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<(WirePoly, WirePoly)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dividend: Option<WirePoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<WirePoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<SideSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lf: Option<LfSpec>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn caps(&self) -> Caps {
        self.caps.unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Negative,
    Inconclusive,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 2,
            Status::Inconclusive => 3,
        }
    }
}

pub const INPUT_ERROR_EXIT: i32 = 4;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssertionRecord {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BezoutWire {
    pub side: SideSpec,
    pub f1: WirePoly,
    pub f2: WirePoly,
    pub g1: WirePoly,
    pub g2: WirePoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WireIteration {
    pub level: usize,
    pub factor1: WirePoly,
    pub factor2: WirePoly,
    pub defect: WirePoly,
    pub defect_in_level: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub side: SideSpec,
    pub factor1: WirePoly,
    pub factor2: WirePoly,
    pub residue_f1: WirePoly,
    pub residue_f2: WirePoly,
    pub iterations: Vec<WireIteration>,
    pub bezout: BezoutWire,
    /// Ranks of the chain ideals, largest first, ending at 0.
    pub chain_ranks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyCertificate {
    pub product_exact: bool,
    pub residues_match: bool,
    pub monic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BruteForceCertificate {
    pub count: usize,
    pub pairs: Vec<(WirePoly, WirePoly)>,
    pub residue_constrained: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesesWire {
    pub f_commutative: bool,
    pub products: bool,
    pub squares: bool,
    pub per_level: Vec<(bool, bool, bool)>,
    pub violations: Vec<String>,
    pub separated: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckPairCertificate {
    pub jacobson: String,
    pub perfect: bool,
    pub local: String,
    pub commutator_ranks: Vec<usize>,
    pub commutator_terminates_at_zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesesWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutatorCertificate {
    pub levels: Vec<Vec<WireElement>>,
    pub ranks: Vec<usize>,
    pub terminates_at_zero: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivideCertificate {
    pub quotient: WirePoly,
    pub remainder: WirePoly,
    pub ideal_membership_checked: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UniversalWire {
    pub psi_matrix: WireMatrix,
    pub source_factor1: WirePoly,
    pub source_factor2: WirePoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LfExtendCertificate {
    pub target: WireAlgebra,
    pub target_residue_matrix: WireMatrix,
    pub phi_matrix: WireMatrix,
    pub lifted1: WirePoly,
    pub lifted2: WirePoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal: Option<UniversalWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbelianizeCompareCertificate {
    pub ab_target: WireAlgebra,
    pub ab_residue_matrix: WireMatrix,
    pub phi_to_ab_matrix: WireMatrix,
    pub commutative_factor1: WirePoly,
    pub commutative_factor2: WirePoly,
    pub transported1: WirePoly,
    pub transported2: WirePoly,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Lift(LiftCertificate),
    Verify(VerifyCertificate),
    BruteForce(BruteForceCertificate),
    CheckPair(CheckPairCertificate),
    CommutatorFiltration(CommutatorCertificate),
    Bezout(BezoutWire),
    Divide(DivideCertificate),
    LfExtend(Box<LfExtendCertificate>),
    AbelianizeCompare(Box<AbelianizeCompareCertificate>),
    None,
}

/// The deterministic part of a report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportBody {
    pub format_version: u32,
    pub task: Task,
    pub seed: u64,
    pub scenario_sha256: String,
    pub outcome: Outcome,
    pub assertions: Vec<AssertionRecord>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub body: ReportBody,
    /// Wall-clock milliseconds; excluded from the determinism contract.
    pub timing_ms: u128,
}

impl Report {
    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(format!("bad report: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization never fails")
    }

    pub fn exit_code(&self) -> i32 {
        self.body.outcome.status.exit_code()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Classifies an error into a report status; `None` means the error is an
/// input/schema problem that produces no report (exit 4).
fn error_status(e: &Error) -> Option<Status> {
    match e {
        Error::HypothesesUnverified(_)
        | Error::ContainmentViolation(_)
        | Error::RelationViolation(_)
        | Error::ExtensionFailed(_)
        | Error::MorphismInvalid(_) => Some(Status::Negative),
        Error::CoprimalityInconclusive
        | Error::SearchSpaceOverCap(_)
        | Error::Undecidable(_)
        | Error::QuotientNotRepresentable(_) => Some(Status::Inconclusive),
        _ => None,
    }
}

/// Hash of the canonical serialization, so formatting of the scenario file
/// does not matter and CLI overrides are covered.
pub fn scenario_hash(scenario: &Scenario) -> String {
    let canonical = serde_json::to_string(scenario).expect("scenario serialization never fails");
    sha256_hex(canonical.as_bytes())
}

/// Runs a scenario given as JSON text. Input and schema errors come back
/// as `Err`; mathematical negatives and cap-inconclusive outcomes are
/// reported in-band with the corresponding status.
pub fn run_scenario_json(text: &str) -> Result<Report> {
    run_scenario(&Scenario::from_json(text)?)
}

pub fn run_scenario(scenario: &Scenario) -> Result<Report> {
    let started = std::time::Instant::now();
    let hash = scenario_hash(scenario);
    let run = tasks::run_task(scenario);
    let (outcome, assertions, certificate) = match run {
        Ok((outcome, assertions, certificate)) => (outcome, assertions, certificate),
        Err(e) => match error_status(&e) {
            Some(status) => (
                Outcome {
                    status,
                    detail: e.to_string(),
                },
                Vec::new(),
                Certificate::None,
            ),
            None => return Err(e),
        },
    };
    Ok(Report {
        body: ReportBody {
            format_version: 1,
            task: scenario.task,
            seed: scenario.seed,
            scenario_sha256: hash,
            outcome,
            assertions,
            certificate,
        },
        timing_ms: started.elapsed().as_millis(),
    })
}
