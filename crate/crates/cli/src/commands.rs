//! Subcommand bodies. Each returns a result plus whether it is definitive.

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;
use unimod::arf;
use unimod::classify;
use unimod::forms::{self, GramForm, ModTwoFunctional, Parity};
use unimod::obstruction::{self, Verdict};
use unimod::oracle::{self, OracleVerdict};
use unimod::sample;
use unimod::schema::{FormFile, ParseError};
use unimod::spheres::{self, Z28, Z7};

use crate::report::{
    AnalyzeResult, ArfResult, AuditEntry, AuditReport, ClassifyResult, CommandResult, CrossTab, LagrangianResult,
    LambdaResult, TableRow,
};

pub const EXIT_DEFINITIVE: i32 = 0;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_MISSING_FIELD: i32 = 5;
pub const EXIT_DOMAIN: i32 = 6;
pub const EXIT_SEARCH_BOUND: i32 = 7;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] unimod::Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io { .. } => EXIT_INPUT,
            CommandError::Parse(ParseError::MissingField(_)) => EXIT_MISSING_FIELD,
            CommandError::Parse(_) => EXIT_INPUT,
            CommandError::Domain(unimod::Error::Internal(_)) => EXIT_INTERNAL,
            CommandError::Domain(unimod::Error::SearchBoundExceeded { .. }) => EXIT_SEARCH_BOUND,
            CommandError::Domain(unimod::Error::NotSymmetric { .. }) => EXIT_INPUT,
            CommandError::Domain(_) => EXIT_DOMAIN,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CommandError::Io { .. } => "io",
            CommandError::Parse(ParseError::Syntax { .. }) => "parse",
            CommandError::Parse(ParseError::NotSquare { .. }) => "not-square",
            CommandError::Parse(ParseError::NotSymmetric { .. }) => "not-symmetric",
            CommandError::Parse(ParseError::Length { .. }) => "length",
            CommandError::Parse(ParseError::MissingField(_)) => "missing-field",
            CommandError::Domain(e) => match e {
                unimod::Error::NotSymmetric { .. } => "not-symmetric",
                unimod::Error::NotUnimodular { .. } => "not-unimodular",
                unimod::Error::DimensionMismatch { .. } => "dimension-mismatch",
                unimod::Error::WrongParity { .. } => "wrong-parity",
                unimod::Error::NonzeroSignature { .. } => "nonzero-signature",
                unimod::Error::OddRank { .. } => "odd-rank",
                unimod::Error::SearchBoundExceeded { .. } => "search-bound-exceeded",
                unimod::Error::InvariantNonzero => "invariant-nonzero",
                unimod::Error::PreconditionViolated(_) => "precondition-violated",
                unimod::Error::Internal(_) => "internal",
            },
        }
    }
}

pub type Outcome = Result<(CommandResult, bool), CommandError>;

/// Reads and parses a form file, returning it with the SHA-256 of its bytes.
pub fn load(path: &Path) -> Result<(FormFile, String), CommandError> {
    let bytes = std::fs::read(path).map_err(|e| CommandError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| ParseError::Syntax {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    Ok((FormFile::parse(&text)?, digest))
}

pub fn analyze(file: &FormFile) -> Outcome {
    let form = &file.form;
    let inertia = form.inertia();
    Ok((
        CommandResult::Analyze(AnalyzeResult {
            rank: form.rank(),
            det: form.determinant(),
            unimodular: form.is_unimodular(),
            parity: form.parity(),
            signature: inertia.signature(),
            inertia,
        }),
        true,
    ))
}

pub fn classify(file: &FormFile) -> Outcome {
    let form = &file.form;
    let basis = classify::reference_basis(form)?;
    let letter = match form.parity() {
        Parity::Odd => "D",
        Parity::Even => "H",
    };
    Ok((
        CommandResult::Classify(ClassifyResult {
            parity: form.parity(),
            reference: format!("{letter}^{}", form.rank() / 2),
            basis,
        }),
        true,
    ))
}

pub fn arf(file: &FormFile) -> Outcome {
    let g = file.require_g()?;
    let parity = file.form.parity();
    let value = arf::xi(&file.form, g)?;
    Ok((
        CommandResult::Arf(ArfResult {
            parity,
            invariant: match parity {
                Parity::Odd => "xi_odd".into(),
                Parity::Even => "xi_even".into(),
            },
            value,
        }),
        true,
    ))
}

pub fn lagrangian(file: &FormFile, bound: u32) -> Outcome {
    let g = file.require_g()?;
    let form = &file.form;
    let xi = arf::xi(form, g)?;
    let constructed = match (form.parity(), xi) {
        (Parity::Odd, 0) => Some(arf::lagrangian_in_kernel_odd(form, g)?),
        _ => None,
    };
    let verdict = oracle::lagrangian_oracle(form, g, bound)?;
    let replay_ok = match &verdict {
        OracleVerdict::Refuted { certificate } => Some(oracle::replay_certificate(form, g, certificate).is_ok()),
        _ => None,
    };
    if replay_ok == Some(false) {
        return Err(unimod::Error::Internal("refutation certificate failed replay".into()).into());
    }
    let definitive = !matches!(verdict, OracleVerdict::Unknown { .. });
    Ok((
        CommandResult::Lagrangian(LagrangianResult {
            parity: form.parity(),
            xi,
            bound,
            constructed,
            oracle: verdict,
            replay_ok,
        }),
        definitive,
    ))
}

pub fn obstruction(file: &FormFile, k_max: usize, bound: u32) -> Outcome {
    let data = file.obstruction_data()?;
    let report = obstruction::decide_elementary(&data, k_max, bound)?;
    let definitive = report.verdict != Verdict::Unknown;
    Ok((CommandResult::Obstruction(Box::new(report)), definitive))
}

pub enum LambdaQuery {
    Table,
    Sum { lambda: i64, r: i64 },
    Inertia,
}

pub fn lambda(query: &LambdaQuery) -> Outcome {
    let result = match *query {
        LambdaQuery::Table => {
            let rows: Vec<TableRow> = spheres::classification_table()
                .into_iter()
                .map(|(r, lambda)| TableRow { r, lambda })
                .collect();
            let image: std::collections::BTreeSet<Z7> = rows.iter().map(|row| row.lambda).collect();
            LambdaResult::Table {
                image_size: image.len(),
                rows,
            }
        }
        LambdaQuery::Sum { lambda, r } => {
            let (lambda, r) = (Z7::new(lambda), Z28::new(r));
            LambdaResult::Sum {
                lambda,
                r,
                result: spheres::lambda_connected_sum(lambda, r),
            }
        }
        LambdaQuery::Inertia => {
            let elements: Vec<Z28> = spheres::inertia_group().into_iter().collect();
            LambdaResult::Inertia {
                order: elements.len(),
                elements,
            }
        }
    };
    Ok((CommandResult::Lambda(result), true))
}

fn dual_norm_mod4(form: &GramForm, g: &ModTwoFunctional) -> Result<u8, unimod::Error> {
    let w: Vec<BigInt> = forms::mod2_dual_vector(form, g)?.into_iter().map(BigInt::from).collect();
    Ok(form.norm(&w).mod_floor(&BigInt::from(4)).to_u8().expect("residue mod 4"))
}

fn audit_entry(family: String, form: &GramForm, g: &ModTwoFunctional, bound: u32) -> Result<AuditEntry, unimod::Error> {
    let xi = arf::xi(form, g)?;
    let verdict = oracle::lagrangian_oracle(form, g, bound)?;
    let mut entry = AuditEntry {
        family,
        parity: form.parity(),
        rank: form.rank(),
        gram: form.gram().clone(),
        g: g.bits().to_vec(),
        xi,
        verdict: verdict.label().into(),
        witness: None,
        certificate: None,
        replay_ok: None,
        dual_norm_mod4: dual_norm_mod4(form, g)?,
    };
    match verdict {
        OracleVerdict::Found { witness } => entry.witness = Some(witness.matrix().clone()),
        OracleVerdict::Refuted { certificate } => {
            entry.replay_ok = Some(oracle::replay_certificate(form, g, &certificate).is_ok());
            entry.certificate = Some(certificate);
        }
        OracleVerdict::Unknown { .. } => {}
    }
    Ok(entry)
}

/// Sweeps every `g` on `D^k` and `H^k` with `2k ≤ max_rank`, plus `random`
/// conjugated instances drawn from `seed`, and cross-tabulates `Ξ` against
/// the oracle.
pub fn audit(max_rank: usize, bound: u32, random: usize, seed: Option<u64>) -> Result<AuditReport, unimod::Error> {
    let mut entries = Vec::new();
    for half in 1..=max_rank / 2 {
        for parity in [Parity::Odd, Parity::Even] {
            let form = classify::reference_form(parity, 2 * half);
            let letter = if parity == Parity::Odd { "D" } else { "H" };
            for mask in 0..1u64 << (2 * half) {
                // Bit i of the mask is coordinate i, so list g in lexicographic order.
                let bits: Vec<u8> = (0..2 * half).map(|i| ((mask >> (2 * half - 1 - i)) & 1) as u8).collect();
                let g = ModTwoFunctional::new(bits).expect("bits are 0 or 1");
                entries.push(audit_entry(format!("{letter}^{half}"), &form, &g, bound)?);
            }
        }
    }
    if random > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
        let max_half = (max_rank / 2).max(1);
        for i in 0..random {
            let parity = if i % 2 == 0 { Parity::Odd } else { Parity::Even };
            let (form, g, _) = sample::random_conjugated(&mut rng, parity, max_half);
            entries.push(audit_entry(format!("random-{i}"), &form, &g, bound)?);
        }
    }
    let mut cross_tab = Vec::new();
    for parity in [Parity::Odd, Parity::Even] {
        for xi in 0..2u8 {
            let cell = entries.iter().filter(|e| e.parity == parity && e.xi == xi);
            let count = |label: &str| cell.clone().filter(|e| e.verdict == label).count();
            cross_tab.push(CrossTab {
                parity,
                xi,
                found: count("found"),
                refuted: count("refuted"),
                unknown: count("unknown"),
            });
        }
    }
    let select = |pred: &dyn Fn(&AuditEntry) -> bool| -> Vec<usize> {
        entries.iter().enumerate().filter(|(_, e)| pred(e)).map(|(i, _)| i).collect()
    };
    let discrepancies = select(&|e| e.xi == 0 && e.verdict == "refuted");
    let necessity_violations = select(&|e| e.xi == 1 && e.verdict == "found");
    let replay_failures = select(&|e| e.replay_ok == Some(false));
    Ok(AuditReport {
        max_rank,
        bound,
        seed: if random > 0 { Some(seed.unwrap_or(0)) } else { None },
        entries,
        cross_tab,
        discrepancies,
        necessity_violations,
        replay_failures,
    })
}

/// Exit status of a finished audit: violations of proved statements are
/// internal errors, unresolved entries are unknown.
pub fn audit_exit(report: &AuditReport) -> i32 {
    if !report.necessity_violations.is_empty() || !report.replay_failures.is_empty() {
        EXIT_INTERNAL
    } else if report.entries.iter().any(|e| e.verdict == "unknown") {
        EXIT_UNKNOWN
    } else {
        EXIT_DEFINITIVE
    }
}
