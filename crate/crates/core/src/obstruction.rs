//! Elementarity of the obstruction `(V <- K -> V, β)` with `K = ker(f, g)`:
//! the four numerical conditions, stabilization, the quotient `v^⊥ / <v>`
//! by the characteristic element, and direct checks of (e1)-(e3).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arf::{self, OddConstruction};
use crate::classify::{self, BasisTransform};
use crate::error::{Error, Result};
use crate::forms::{GramForm, IntegralFunctional, ModTwoFunctional, Parity};
use crate::intlin::{self, IntMatrix, IntVector};
use crate::oracle::{self, OracleVerdict, RefutationCertificate};

/// The form on the free part of `H_4(W)` with `f`, `g` and the optional
/// numbers `σ(W, ∂W)` and `Λ(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionData {
    pub form: GramForm,
    pub f: IntegralFunctional,
    pub g: ModTwoFunctional,
    #[serde(default, with = "crate::json::opt_int", skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BigInt>,
    #[serde(rename = "Lambda", default, with = "crate::json::opt_int", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BigInt>,
}

impl ObstructionData {
    pub fn new(form: GramForm, f: IntegralFunctional, g: ModTwoFunctional) -> Self {
        ObstructionData {
            form,
            f,
            g,
            sigma: None,
            lambda: None,
        }
    }

    pub fn with_lambda(mut self, lambda: impl Into<BigInt>) -> Self {
        self.lambda = Some(lambda.into());
        self
    }

    pub fn with_sigma(mut self, sigma: impl Into<BigInt>) -> Self {
        self.sigma = Some(sigma.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub signature_zero: bool,
    pub norm_zero: bool,
    pub g_of_v_zero: bool,
    /// `None` when `Ξ_odd` is undefined because the signature is nonzero.
    pub xi_odd_zero: Option<bool>,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.signature_zero && self.norm_zero && self.g_of_v_zero && self.xi_odd_zero == Some(true)
    }

    /// Numbers (1-4) of the conditions that fail.
    pub fn failed(&self) -> Vec<u8> {
        let mut out = Vec::new();
        if !self.signature_zero {
            out.push(1);
        }
        if !self.norm_zero {
            out.push(2);
        }
        if !self.g_of_v_zero {
            out.push(3);
        }
        if self.xi_odd_zero != Some(true) {
            out.push(4);
        }
        out
    }
}

/// Checks of the data against `Λ`. `g(v) = 0` is expected regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consistency {
    pub norm_equals_lambda: Option<bool>,
    pub xi_odd_matches_lambda: Option<bool>,
    pub g_of_v_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epicness {
    pub f: bool,
    pub g: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Elementary,
    NotElementary,
    Unknown,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Elementary => "elementary",
            Verdict::NotElementary => "not-elementary",
            Verdict::Unknown => "unknown",
        }
    }
}

/// `U` inside the `k`-fold stabilization, in its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryWitness {
    pub k: usize,
    pub u: BasisTransform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum StageResult {
    Constructor,
    Oracle { verdict: String },
    Refuted { certificate: RefutationCertificate },
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageAttempt {
    pub k: usize,
    pub quotient_rank: usize,
    pub quotient_parity: Parity,
    /// Set when the basis-pairing construction could not be applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor_note: Option<String>,
    pub result: StageResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    #[serde(with = "crate::json::int_vec")]
    pub v: IntVector,
    #[serde(with = "crate::json::int")]
    pub norm: BigInt,
    pub signature: i64,
    pub g_of_v: u8,
    pub xi_odd: Option<u8>,
    pub conditions: Conditions,
    pub consistency: Consistency,
    pub epic: Epicness,
    pub verdict: Verdict,
    pub failed_conditions: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementaryWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<StageAttempt>,
    /// All four conditions hold yet every stage was refuted.
    pub discrepancy: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The unique `v` with `f(x) = β(x, v)`, i.e. `G v = f`.
pub fn characteristic_element(form: &GramForm, f: &IntegralFunctional) -> Result<IntVector> {
    if f.len() != form.rank() {
        return Err(Error::DimensionMismatch {
            expected: form.rank(),
            found: f.len(),
        });
    }
    form.require_unimodular()?;
    let rhs = IntMatrix::from_columns(form.rank(), &[f.coeffs().to_vec()]);
    let v = intlin::solve_integral(form.gram(), &rhs)
        .ok_or_else(|| Error::Internal("unimodular system has no integral solution".into()))?;
    Ok(v.column(0))
}

fn check_data(data: &ObstructionData) -> Result<()> {
    let rank = data.form.rank();
    for len in [data.f.len(), data.g.len()] {
        if len != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: len,
            });
        }
    }
    data.form.require_unimodular()?;
    if data.form.parity() != Parity::Odd {
        return Err(Error::WrongParity { expected: Parity::Odd });
    }
    Ok(())
}

/// Evaluates the four conditions and the consistency checks; the verdict is
/// `not-elementary` when a condition fails and `unknown` otherwise.
pub fn elementary_conditions(data: &ObstructionData) -> Result<ObstructionReport> {
    check_data(data)?;
    let v = characteristic_element(&data.form, &data.f)?;
    let norm = data.form.norm(&v);
    let signature = data.form.signature();
    let g_of_v = data.g.apply(&v);
    let xi_odd = if signature == 0 {
        Some(arf::xi_odd(&data.form, &data.g)?)
    } else {
        None
    };
    let conditions = Conditions {
        signature_zero: signature == 0,
        norm_zero: norm.is_zero(),
        g_of_v_zero: g_of_v == 0,
        xi_odd_zero: xi_odd.map(|x| x == 0),
    };
    let two = BigInt::from(2);
    let consistency = Consistency {
        norm_equals_lambda: data.lambda.as_ref().map(|l| *l == norm),
        xi_odd_matches_lambda: match (&data.lambda, xi_odd) {
            (Some(l), Some(x)) => Some(l.mod_floor(&two) == BigInt::from(x)),
            _ => None,
        },
        g_of_v_zero: g_of_v == 0,
    };
    let failed = conditions.failed();
    Ok(ObstructionReport {
        v,
        norm,
        signature,
        g_of_v,
        xi_odd,
        conditions,
        consistency,
        epic: Epicness {
            f: data.f.is_epic(),
            g: data.g.is_epic(),
        },
        verdict: if failed.is_empty() {
            Verdict::Unknown
        } else {
            Verdict::NotElementary
        },
        failed_conditions: failed,
        witness: None,
        attempts: Vec::new(),
        discrepancy: false,
        note: None,
    })
}

/// `v^⊥ / <v>` with the induced form and functional. `section` holds
/// representatives in ambient coordinates, one per quotient basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub form: GramForm,
    pub g: ModTwoFunctional,
    pub section: BasisTransform,
}

impl Quotient {
    /// Ambient representative of a quotient vector.
    pub fn lift(&self, x: &[BigInt]) -> IntVector {
        self.section.matrix.mul_vec(x)
    }
}

/// Integral coordinates of `x` in the columns of `k`, if `x` lies in their span.
fn coordinates_in(k: &IntMatrix, x: &[BigInt]) -> Option<IntVector> {
    let (d, u, w) = intlin::smith_normal_form(k);
    let ux = u.mul_vec(x);
    let mut y = vec![BigInt::zero(); k.cols()];
    for (i, r) in ux.iter().enumerate() {
        let di = if i < k.cols() { d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !r.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = r.div_rem(&di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(w.mul_vec(&y))
}

/// Shifts `s` by the multiple of `v` that makes it shortest.
fn reduce_modulo(s: &[BigInt], v: &[BigInt]) -> IntVector {
    let vv = intlin::dot(v, v);
    let t = (BigInt::from(2) * intlin::dot(s, v) + &vv).div_floor(&(BigInt::from(2) * &vv));
    s.iter().zip(v).map(|(a, b)| a - &t * b).collect()
}

pub fn quotient_by_characteristic(form: &GramForm, g: &ModTwoFunctional, v: &[BigInt]) -> Result<Quotient> {
    let rank = form.rank();
    if v.len() != rank || g.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            found: if v.len() != rank { v.len() } else { g.len() },
        });
    }
    form.require_unimodular()?;
    if !intlin::is_primitive(v) {
        return Err(Error::PreconditionViolated("v is not primitive".into()));
    }
    if !form.norm(v).is_zero() {
        return Err(Error::PreconditionViolated("β(v, v) is not zero".into()));
    }
    if g.apply(v) != 0 {
        return Err(Error::PreconditionViolated("g(v) is not zero".into()));
    }
    let gv = IntMatrix::from_columns(rank, &[form.pairing_with(v)]);
    let perp = intlin::left_kernel(&gv);
    let c = coordinates_in(&perp, v).ok_or_else(|| Error::Internal("v is not in its own orthogonal".into()))?;
    let b = intlin::complete_to_basis(&c).ok_or_else(|| Error::Internal("v is not primitive in v^⊥".into()))?;
    let basis = &perp * &b;
    let section: Vec<IntVector> = (1..basis.cols()).map(|j| reduce_modulo(&basis.column(j), v)).collect();
    let section = IntMatrix::from_columns(rank, &section);
    let form_bar = form.restrict(&section);
    if !form_bar.is_unimodular() {
        return Err(Error::Internal("quotient form is not unimodular".into()));
    }
    let g_bar = g.pull_back(&section);
    Ok(Quotient {
        form: form_bar,
        g: g_bar,
        section: BasisTransform::span(section),
    })
}

/// (e1) isotropic, (e2) saturated, `U ⊂ ker f_k ∩ ker g_k`, and (e3) the
/// pairing between `U` and a complement of `U` is unimodular.
pub fn verify_e_conditions(
    form: &GramForm,
    g: &ModTwoFunctional,
    f: &IntegralFunctional,
    u: &BasisTransform,
) -> bool {
    let rank = form.rank();
    let m = &u.matrix;
    if g.len() != rank || f.len() != rank || m.rows() != rank || rank % 2 == 1 || m.cols() != rank / 2 {
        return false;
    }
    if !m.congruent(form.gram()).is_zero() {
        return false;
    }
    if !arf::is_saturated(m) {
        return false;
    }
    if !m.columns().iter().all(|c| f.apply(c).is_zero() && g.apply(c) == 0) {
        return false;
    }
    // a m b = [I; 0], so the last rank - n columns of a^{-1} complete U.
    let (_, a, _) = intlin::smith_normal_form(m);
    let Some(a_inv) = intlin::unimodular_inverse(&a) else {
        return false;
    };
    let complement = a_inv.select_columns(&(m.cols()..rank).collect::<Vec<_>>());
    let pairing = &(&m.transpose() * form.gram()) * &complement;
    pairing.determinant().abs().is_one()
}

fn lift_witness(q: &Quotient, v: Option<&[BigInt]>, span: &IntMatrix) -> BasisTransform {
    let mut cols: Vec<IntVector> = v.into_iter().map(<[BigInt]>::to_vec).collect();
    cols.extend(span.columns().iter().map(|c| q.lift(c)));
    BasisTransform::span(IntMatrix::from_columns(q.section.matrix.rows(), &cols))
}

/// A Lagrangian of the quotient inside `ker g_bar` from the constructive
/// procedure, or a note on why it did not apply.
fn construct(q: &Quotient) -> std::result::Result<IntMatrix, String> {
    if q.form.rank() == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    match q.form.parity() {
        Parity::Odd => match arf::lagrangian_in_kernel_odd(&q.form, &q.g) {
            Ok(OddConstruction::Witness(w)) => Ok(w.matrix().clone()),
            Ok(OddConstruction::PairingObstruction(p)) => Err(format!(
                "pairing obstruction: plus {:?}, minus {:?}",
                p.plus, p.minus
            )),
            Err(e) => Err(e.to_string()),
        },
        Parity::Even => arf::lagrangian_in_kernel_even(&q.form, &q.g)
            .map(|w| w.matrix().clone())
            .map_err(|e| e.to_string()),
    }
}

/// Full decision: the four conditions, then for `k = 1..=k_max` a search
/// for a Lagrangian of `v^⊥/<v>` in `ker g_bar` after `k` stabilizations.
/// The first `k` that yields a verified `U` wins.
pub fn decide_elementary(data: &ObstructionData, k_max: usize, coeff_bound: u32) -> Result<ObstructionReport> {
    let mut report = elementary_conditions(data)?;
    if !report.conditions.all() {
        return Ok(report);
    }
    // For non-epic f, U = U^⊥ inside ker f = v^⊥ still holds the primitive
    // part of v, so the quotient is taken by that; v = 0 needs no quotient.
    let v0: Option<IntVector> = if report.v.iter().all(Zero::is_zero) {
        None
    } else {
        let d = intlin::vector_gcd(&report.v);
        Some(report.v.iter().map(|x| x / &d).collect())
    };
    if let Some(v0) = &v0 {
        if data.g.apply(v0) == 1 {
            report.verdict = Verdict::NotElementary;
            report.note = Some("g is nonzero on the primitive part of v".into());
            return Ok(report);
        }
    }
    let mut all_refuted = k_max > 0;
    for k in 1..=k_max {
        let st = classify::stabilize(&data.form, &data.g, &data.f, k);
        let v = v0.as_ref().map(|v0| {
            let mut v = v0.clone();
            v.extend(std::iter::repeat(BigInt::zero()).take(2 * k));
            v
        });
        let q = match &v {
            Some(v) => quotient_by_characteristic(&st.form, &st.g, v)?,
            None => Quotient {
                form: st.form.clone(),
                g: st.g.clone(),
                section: BasisTransform::span(IntMatrix::identity(st.form.rank())),
            },
        };
        let mut attempt = StageAttempt {
            k,
            quotient_rank: q.form.rank(),
            quotient_parity: q.form.parity(),
            constructor_note: None,
            result: StageResult::Constructor,
        };
        let span = match construct(&q) {
            Ok(span) => Some(span),
            Err(note) => {
                attempt.constructor_note = Some(note);
                match oracle::lagrangian_oracle(&q.form, &q.g, coeff_bound) {
                    Ok(OracleVerdict::Found { witness }) => {
                        attempt.result = StageResult::Oracle { verdict: "found".into() };
                        Some(witness.matrix().clone())
                    }
                    Ok(OracleVerdict::Refuted { certificate }) => {
                        attempt.result = StageResult::Refuted { certificate };
                        None
                    }
                    Ok(OracleVerdict::Unknown { open, candidates, .. }) => {
                        all_refuted = false;
                        attempt.result = StageResult::Unknown {
                            reason: format!("{open} of {candidates} candidate subspaces unresolved"),
                        };
                        None
                    }
                    Err(e) => {
                        all_refuted = false;
                        attempt.result = StageResult::Unknown { reason: e.to_string() };
                        None
                    }
                }
            }
        };
        report.attempts.push(attempt);
        if let Some(span) = span {
            let u = lift_witness(&q, v.as_deref(), &span);
            if !verify_e_conditions(&st.form, &st.g, &st.f, &u) {
                return Err(Error::Internal(format!("lifted witness at k = {k} fails (e1)-(e3)")));
            }
            report.verdict = Verdict::Elementary;
            report.witness = Some(ElementaryWitness { k, u });
            return Ok(report);
        }
    }
    if all_refuted {
        report.verdict = Verdict::NotElementary;
        report.discrepancy = true;
    } else {
        report.verdict = Verdict::Unknown;
    }
    Ok(report)
}
