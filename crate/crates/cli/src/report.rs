//! The report document written by every subcommand, and its text rendering.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use unimod::arf::OddConstruction;
use unimod::classify::BasisTransform;
use unimod::intlin::{Inertia, IntMatrix};
use unimod::obstruction::ObstructionReport;
use unimod::oracle::OracleVerdict;
use unimod::spheres::{Z28, Z7};
use unimod::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Definitive,
    Unknown,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    /// SHA-256 of the input file, hex encoded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub status: Status,
    pub exit_code: i32,
    pub elapsed_ms: u64,
    pub result: CommandResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CommandResult {
    Analyze(AnalyzeResult),
    Classify(ClassifyResult),
    Arf(ArfResult),
    Lagrangian(LagrangianResult),
    Obstruction(Box<ObstructionReport>),
    Lambda(LambdaResult),
    Audit(AuditReport),
    Error(ErrorResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    pub rank: usize,
    #[serde(with = "unimod::json::int")]
    pub det: BigInt,
    pub unimodular: bool,
    pub parity: Parity,
    pub signature: i64,
    pub inertia: Inertia,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub parity: Parity,
    /// `D^n` or `H^n`.
    pub reference: String,
    pub basis: BasisTransform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArfResult {
    pub parity: Parity,
    pub invariant: String,
    pub value: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianResult {
    pub parity: Parity,
    pub xi: u8,
    pub bound: u32,
    /// Output of the basis construction, when it was attempted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructed: Option<OddConstruction>,
    pub oracle: OracleVerdict,
    /// Replay of a refutation certificate; absent for other verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: Z28,
    pub lambda: Z7,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "query", rename_all = "kebab-case")]
pub enum LambdaResult {
    Table { rows: Vec<TableRow>, image_size: usize },
    Sum { lambda: Z7, r: Z28, result: Z7 },
    Inertia { elements: Vec<Z28>, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub family: String,
    pub parity: Parity,
    pub rank: usize,
    pub gram: IntMatrix,
    pub g: Vec<u8>,
    pub xi: u8,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<unimod::oracle::RefutationCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replay_ok: Option<bool>,
    /// `β(w, w) mod 4` for the 0/1 lift `w` of the dual vector of `g`.
    pub dual_norm_mod4: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTab {
    pub parity: Parity,
    pub xi: u8,
    pub found: usize,
    pub refuted: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub max_rank: usize,
    pub bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<AuditEntry>,
    pub cross_tab: Vec<CrossTab>,
    /// Indices into `entries` with `Ξ = 0` and a refutation.
    pub discrepancies: Vec<usize>,
    /// Indices with `Ξ = 1` and a found Lagrangian.
    pub necessity_violations: Vec<usize>,
    pub replay_failures: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorResult {
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command   {}", self.command.join(" "));
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "sha256    {d}");
        }
        let status = match self.status {
            Status::Definitive => "definitive",
            Status::Unknown => "unknown",
            Status::Error => "error",
        };
        let _ = writeln!(out, "status    {status} (exit {})", self.exit_code);
        render_result(&mut out, &self.result);
        out
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn fmt_bits(v: &[u8]) -> String {
    v.iter().map(|b| char::from(b'0' + b)).collect()
}

fn fmt_columns(m: &IntMatrix) -> String {
    let cols: Vec<String> = m.columns().iter().map(|c| fmt_vec(c)).collect();
    if cols.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", cols.join(", "))
    }
}

fn render_verdict(out: &mut String, v: &OracleVerdict) {
    match v {
        OracleVerdict::Found { witness } => {
            let _ = writeln!(out, "oracle    found {}", fmt_columns(witness.matrix()));
        }
        OracleVerdict::Refuted { certificate } => {
            let kind = serde_json::to_value(certificate.kind).expect("kind serializes");
            let _ = writeln!(
                out,
                "oracle    refuted ({}), w_g = {}",
                kind.as_str().unwrap_or_default(),
                fmt_bits(&certificate.dual_vector)
            );
            for s in &certificate.subspaces {
                let basis: Vec<String> = s.basis.iter().map(|b| fmt_bits(b)).collect();
                let _ = writeln!(
                    out,
                    "          subspace <{}> residue {} norm {} mod 4",
                    basis.join(","),
                    fmt_bits(&s.residue),
                    s.norm_mod4
                );
            }
        }
        OracleVerdict::Unknown {
            candidates,
            open,
            coeff_bound,
        } => {
            let _ = writeln!(
                out,
                "oracle    unknown: {open} of {candidates} candidate subspaces open at bound {coeff_bound}"
            );
        }
    }
}

fn render_result(out: &mut String, result: &CommandResult) {
    match result {
        CommandResult::Analyze(a) => {
            let _ = writeln!(out, "rank      {}", a.rank);
            let _ = writeln!(out, "det       {}", a.det);
            let _ = writeln!(out, "unimodular {}", a.unimodular);
            let _ = writeln!(out, "parity    {}", a.parity);
            let _ = writeln!(out, "signature {}", a.signature);
            let _ = writeln!(
                out,
                "inertia   +{} -{} 0:{}",
                a.inertia.n_plus, a.inertia.n_minus, a.inertia.n_zero
            );
        }
        CommandResult::Classify(c) => {
            let _ = writeln!(out, "parity    {}", c.parity);
            let _ = writeln!(out, "reference {}", c.reference);
            let _ = writeln!(out, "basis     {}", fmt_columns(&c.basis.matrix));
        }
        CommandResult::Arf(a) => {
            let _ = writeln!(out, "parity    {}", a.parity);
            let _ = writeln!(out, "{:<9} {}", a.invariant, a.value);
        }
        CommandResult::Lagrangian(l) => {
            let _ = writeln!(out, "parity    {}", l.parity);
            let _ = writeln!(out, "xi        {}", l.xi);
            match &l.constructed {
                Some(OddConstruction::Witness(w)) => {
                    let _ = writeln!(out, "construct {}", fmt_columns(w.matrix()));
                }
                Some(OddConstruction::PairingObstruction(p)) => {
                    let _ = writeln!(
                        out,
                        "construct pairing obstruction: plus {:?} minus {:?}",
                        p.plus, p.minus
                    );
                }
                None => {}
            }
            render_verdict(out, &l.oracle);
            if let Some(ok) = l.replay_ok {
                let _ = writeln!(out, "replay    {}", if ok { "ok" } else { "FAILED" });
            }
        }
        CommandResult::Obstruction(r) => render_obstruction(out, r),
        CommandResult::Lambda(l) => match l {
            LambdaResult::Table { rows, image_size } => {
                let _ = writeln!(out, "{:>3} {:>6}", "r", "lambda");
                for row in rows {
                    let _ = writeln!(out, "{:>3} {:>6}", row.r, row.lambda);
                }
                let _ = writeln!(out, "image size {image_size}");
            }
            LambdaResult::Sum { lambda, r, result } => {
                let _ = writeln!(out, "lambda {lambda} # sigma_{r} -> {result}");
            }
            LambdaResult::Inertia { elements, order } => {
                let e: Vec<String> = elements.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "inertia group {{{}}} order {order}", e.join(", "));
            }
        },
        CommandResult::Audit(a) => render_audit(out, a),
        CommandResult::Error(e) => {
            let _ = writeln!(out, "error     {}: {}", e.error, e.message);
        }
    }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn render_obstruction(out: &mut String, r: &ObstructionReport) {
    let c = &r.conditions;
    let _ = writeln!(out, "v         {}", fmt_vec(&r.v));
    let _ = writeln!(out, "1 signature = 0   {}", c.signature_zero);
    let _ = writeln!(out, "2 beta(v,v) = 0   {}", c.norm_zero);
    let _ = writeln!(out, "3 g(v) = 0        {}", c.g_of_v_zero);
    let _ = writeln!(out, "4 xi_odd = 0      {}", flag(c.xi_odd_zero));
    let _ = writeln!(out, "beta(v,v) = Lambda        {}", flag(r.consistency.norm_equals_lambda));
    let _ = writeln!(out, "xi_odd = Lambda mod 2     {}", flag(r.consistency.xi_odd_matches_lambda));
    let _ = writeln!(out, "f epic {}, g epic {}", r.epic.f, r.epic.g);
    for a in &r.attempts {
        let result = serde_json::to_value(&a.result).expect("stage serializes");
        let _ = writeln!(
            out,
            "k = {}: quotient rank {} {}, {}",
            a.k,
            a.quotient_rank,
            a.quotient_parity,
            result["source"].as_str().unwrap_or_default()
        );
    }
    let _ = writeln!(out, "verdict   {}", r.verdict.label());
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "witness   k = {} U = {}", w.k, fmt_columns(&w.u.matrix));
    }
    if let Some(note) = &r.note {
        let _ = writeln!(out, "note      {note}");
    }
    if r.discrepancy {
        let _ = writeln!(out, "DISCREPANCY conditions 1-4 hold but every stage was refuted");
    }
}

fn render_audit(out: &mut String, a: &AuditReport) {
    let _ = writeln!(out, "max rank {} bound {}", a.max_rank, a.bound);
    let _ = writeln!(out, "{:<8} {:>2} {:>6} {:>7} {:>7}", "parity", "xi", "found", "refuted", "unknown");
    for c in &a.cross_tab {
        let _ = writeln!(
            out,
            "{:<8} {:>2} {:>6} {:>7} {:>7}",
            c.parity.to_string(),
            c.xi,
            c.found,
            c.refuted,
            c.unknown
        );
    }
    let describe = |i: &usize| {
        let e = &a.entries[*i];
        format!("{} g={}", e.family, fmt_bits(&e.g))
    };
    let _ = writeln!(out, "xi = 0, refuted: {}", a.discrepancies.len());
    for i in &a.discrepancies {
        let _ = writeln!(out, "  {} (w.w mod 4 = {})", describe(i), a.entries[*i].dual_norm_mod4);
    }
    let _ = writeln!(out, "xi = 1, found: {}", a.necessity_violations.len());
    for i in &a.necessity_violations {
        let _ = writeln!(out, "  {}", describe(i));
    }
    let _ = writeln!(out, "replay failures: {}", a.replay_failures.len());
    for i in &a.replay_failures {
        let _ = writeln!(out, "  {}", describe(i));
    }
}

