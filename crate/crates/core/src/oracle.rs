//! Brute-force decision of "does `ker g` contain a Lagrangian", independent
//! of the Arf-type invariants.
//!
//! Any integral Lagrangian `L ⊂ ker g` reduces mod 2 to a half-dimensional
//! totally isotropic subspace containing the dual vector `w_g`. The oracle
//! enumerates all of those, discards the ones that contain a residue class
//! whose lifts all have norm ≡ 2 (mod 4), and searches bounded integral
//! lifts of the rest.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arf::{self, LagrangianWitness};
use crate::error::{Error, Result};
use crate::forms::{self, GramForm, ModTwoFunctional};
use crate::gf2;
use crate::intlin::{IntMatrix, IntVector};

/// Largest rank the oracle accepts; the mod-2 enumeration walks all of
/// `(Z/2)^rank`.
pub const MAX_ORACLE_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// No half-dimensional totally isotropic subspace contains `w_g`.
    Mod2Exhaustion,
    /// Every candidate subspace holds a residue class of norm 2 mod 4.
    Mod4Norm,
}

/// One candidate mod-2 subspace and the residue class that kills it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubspaceCertificate {
    /// Reduced echelon basis, one 0/1 vector per row.
    pub basis: Vec<Vec<u8>>,
    /// A class in the subspace; every integral lift has `β(x,x) ≡ norm_mod4`.
    pub residue: Vec<u8>,
    pub norm_mod4: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationCertificate {
    pub kind: CertificateKind,
    pub rank: usize,
    /// `w_g` reduced mod 2.
    pub dual_vector: Vec<u8>,
    pub subspaces: Vec<SubspaceCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Found {
        witness: LagrangianWitness,
    },
    Refuted {
        certificate: RefutationCertificate,
    },
    /// Some candidate subspaces survived the modular test but no lift was
    /// found within the coefficient bound.
    Unknown {
        candidates: usize,
        open: usize,
        coeff_bound: u32,
    },
}

impl OracleVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            OracleVerdict::Found { .. } => "found",
            OracleVerdict::Refuted { .. } => "refuted",
            OracleVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn check_preconditions(form: &GramForm, g: &ModTwoFunctional) -> Result<()> {
    if g.len() != form.rank() {
        return Err(Error::DimensionMismatch {
            expected: form.rank(),
            found: g.len(),
        });
    }
    form.require_unimodular()?;
    let signature = form.signature();
    if signature != 0 {
        return Err(Error::NonzeroSignature { signature });
    }
    if form.rank() > MAX_ORACLE_RANK {
        return Err(Error::PreconditionViolated(format!(
            "oracle supports rank at most {MAX_ORACLE_RANK}, got {}",
            form.rank()
        )));
    }
    Ok(())
}

/// Integral norm of the 0/1 lift of a packed class, reduced mod 4.
fn lift_norm_mod4(form: &GramForm, class: u64) -> u8 {
    let lift: IntVector = gf2::unpack(class, form.rank()).into_iter().map(BigInt::from).collect();
    let r = form.norm(&lift) % BigInt::from(4);
    let r = if r < BigInt::zero() { r + 4 } else { r };
    r.to_u8().expect("residue mod 4")
}

/// All half-dimensional totally isotropic subspaces of the mod-2 reduction
/// that contain `w`, grown one vector at a time from `span{w}`.
fn isotropic_subspaces_containing(gram: &[u64], rank: usize, w: u64) -> Vec<Vec<u64>> {
    let half = rank / 2;
    let isotropic_vectors: Vec<u64> = (1..(1u64 << rank))
        .filter(|&x| gf2::bilinear(gram, x, x) == 0)
        .collect();
    let start = if w == 0 {
        Vec::new()
    } else if gf2::bilinear(gram, w, w) == 0 {
        vec![w]
    } else {
        return Vec::new();
    };
    let mut level: BTreeSet<Vec<u64>> = BTreeSet::new();
    level.insert(gf2::reduced_basis(&start));
    while level.iter().next().is_some_and(|b| b.len() < half) {
        let mut next = BTreeSet::new();
        for basis in &level {
            for &x in &isotropic_vectors {
                if gf2::in_span(basis, x) || basis.iter().any(|&b| gf2::bilinear(gram, x, b) == 1) {
                    continue;
                }
                let mut grown = basis.clone();
                grown.push(x);
                next.insert(gf2::reduced_basis(&grown));
            }
        }
        level = next;
    }
    level.into_iter().filter(|b| b.len() == half).collect()
}

/// Lifts of one residue class, isotropic, inside the coefficient box, with
/// first nonzero coordinate positive; ordered by largest coordinate then
/// lexicographically.
fn isotropic_lifts(gram: &[i128], rank: usize, class: u64, bound: i64) -> Vec<Vec<i64>> {
    let choices: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let odd = (class >> i) & 1 == 1;
            (-bound..=bound).filter(|v| (v.rem_euclid(2) == 1) == odd).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; rank];
    fn rec(i: usize, choices: &[Vec<i64>], gram: &[i128], x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = x.len();
        if i == n {
            let first = x.iter().find(|&&v| v != 0);
            if first.map_or(true, |&v| v < 0) {
                return;
            }
            if small_bilinear(gram, x, x) == 0 {
                out.push(x.clone());
            }
            return;
        }
        for &v in &choices[i] {
            x[i] = v;
            rec(i + 1, choices, gram, x, out);
        }
    }
    rec(0, &choices, gram, &mut x, &mut out);
    out.sort_by(|a, b| {
        let ma = a.iter().map(|v| v.abs()).max();
        let mb = b.iter().map(|v| v.abs()).max();
        ma.cmp(&mb).then_with(|| a.cmp(b))
    });
    out
}

fn small_bilinear(gram: &[i128], x: &[i64], y: &[i64]) -> i128 {
    let n = x.len();
    let mut acc = 0i128;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let mut row = 0i128;
        for j in 0..n {
            row += gram[i * n + j] * i128::from(y[j]);
        }
        acc += i128::from(x[i]) * row;
    }
    acc
}

fn witness_key(cols: &[Vec<i64>]) -> (i64, Vec<i64>) {
    let max = cols.iter().flatten().map(|v| v.abs()).max().unwrap_or(0);
    (max, cols.iter().flatten().copied().collect())
}

/// First saturated choice of pairwise orthogonal lifts, one per basis class.
fn search_lift(
    form: &GramForm,
    gram: &[i128],
    classes: &[u64],
    bound: i64,
    cache: &mut HashMap<u64, Vec<Vec<i64>>>,
) -> Option<Vec<Vec<i64>>> {
    let rank = form.rank();
    let lists: Vec<Vec<Vec<i64>>> = classes
        .iter()
        .map(|&c| {
            cache
                .entry(c)
                .or_insert_with(|| isotropic_lifts(gram, rank, c, bound))
                .clone()
        })
        .collect();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    fn dfs(
        level: usize,
        lists: &[Vec<Vec<i64>>],
        gram: &[i128],
        chosen: &mut Vec<Vec<i64>>,
        rank: usize,
    ) -> bool {
        if level == lists.len() {
            let cols: Vec<IntVector> = chosen
                .iter()
                .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            return arf::is_saturated(&IntMatrix::from_columns(rank, &cols));
        }
        for cand in &lists[level] {
            if chosen.iter().any(|c| small_bilinear(gram, c, cand) != 0) {
                continue;
            }
            chosen.push(cand.clone());
            if dfs(level + 1, lists, gram, chosen, rank) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if dfs(0, &lists, gram, &mut chosen, rank) {
        Some(chosen)
    } else {
        None
    }
}

/// Decides whether `ker g` contains a Lagrangian of `(V, β)`.
///
/// `Found` witnesses always pass [`arf::verify_lagrangian`]; `Refuted`
/// certificates replay through [`replay_certificate`] without any integral
/// search. Among witnesses from different mod-2 subspaces the one with the
/// smallest largest coordinate, then lexicographically least, is returned.
pub fn lagrangian_oracle(form: &GramForm, g: &ModTwoFunctional, coeff_bound: u32) -> Result<OracleVerdict> {
    check_preconditions(form, g)?;
    let rank = form.rank();
    let gram2 = gf2::reduce_matrix(form.gram());
    let w_bits = forms::mod2_dual_vector(form, g)?;
    let w = gf2::pack(&w_bits);
    let subspaces = isotropic_subspaces_containing(&gram2, rank, w);

    let mut dead = Vec::new();
    let mut live = Vec::new();
    for basis in &subspaces {
        let elements = gf2::span_elements(basis);
        let mut order = vec![w];
        order.extend(elements.iter().copied().filter(|&e| e != w));
        let killer = order.into_iter().find(|&e| lift_norm_mod4(form, e) == 2);
        match killer {
            Some(e) => dead.push(SubspaceCertificate {
                basis: basis.iter().map(|&b| gf2::unpack(b, rank)).collect(),
                residue: gf2::unpack(e, rank),
                norm_mod4: 2,
            }),
            None => live.push(basis.clone()),
        }
    }

    if live.is_empty() {
        let kind = if subspaces.is_empty() {
            CertificateKind::Mod2Exhaustion
        } else {
            CertificateKind::Mod4Norm
        };
        return Ok(OracleVerdict::Refuted {
            certificate: RefutationCertificate {
                kind,
                rank,
                dual_vector: w_bits,
                subspaces: dead,
            },
        });
    }

    let gram: Option<Vec<i128>> = (0..rank * rank)
        .map(|k| form.gram().get(k / rank, k % rank).to_i64().map(i128::from))
        .collect();
    let Some(gram) = gram else {
        return Err(Error::PreconditionViolated("oracle needs Gram entries within 64 bits".into()));
    };
    let bound = i64::from(coeff_bound);
    let mut cache = HashMap::new();
    let mut best: Option<((i64, Vec<i64>), Vec<Vec<i64>>)> = None;
    let mut open = 0;
    for basis in &live {
        match search_lift(form, &gram, basis, bound, &mut cache) {
            Some(cols) => {
                let key = witness_key(&cols);
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, cols));
                }
            }
            None => open += 1,
        }
    }
    match best {
        Some((_, cols)) => {
            let cols: Vec<IntVector> = cols
                .iter()
                .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let witness = LagrangianWitness::from_columns(rank, &cols);
            if !arf::verify_lagrangian(form, g, witness.matrix()) {
                return Err(Error::Internal("oracle witness failed verification".into()));
            }
            Ok(OracleVerdict::Found { witness })
        }
        None => Ok(OracleVerdict::Unknown {
            candidates: subspaces.len(),
            open,
            coeff_bound,
        }),
    }
}

/// Every half-dimensional totally isotropic subspace containing `w`, found
/// by walking all reduced echelon matrices. Shares nothing with the oracle's
/// incremental enumeration.
fn echelon_enumeration(gram: &[u64], rank: usize, w: u64) -> BTreeSet<Vec<u64>> {
    let half = rank / 2;
    let mut out = BTreeSet::new();
    let mut pivots = Vec::with_capacity(half);
    fn choose(start: usize, rank: usize, half: usize, pivots: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pivots.len() == half {
            f(pivots);
            return;
        }
        for p in start..rank {
            pivots.push(p);
            choose(p + 1, rank, half, pivots, f);
            pivots.pop();
        }
    }
    choose(0, rank, half, &mut pivots, &mut |pivots: &[usize]| {
        // Free positions of row r: non-pivot columns after its pivot.
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..rank).filter(|q| !pivots.contains(q)).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        for assignment in 0u64..(1u64 << total) {
            let mut bit = 0;
            let rows: Vec<u64> = pivots
                .iter()
                .zip(&free)
                .map(|(&p, fr)| {
                    let mut row = 1u64 << p;
                    for &q in fr {
                        if (assignment >> bit) & 1 == 1 {
                            row |= 1 << q;
                        }
                        bit += 1;
                    }
                    row
                })
                .collect();
            let isotropic = rows
                .iter()
                .enumerate()
                .all(|(i, &a)| rows[i..].iter().all(|&b| gf2::bilinear(gram, a, b) == 0));
            if isotropic && gf2::in_span(&rows, w) {
                out.insert(rows);
            }
        }
    });
    out
}

/// Re-derives a refutation from the certificate by modular arithmetic only.
/// Returns the first failed check.
pub fn replay_certificate(
    form: &GramForm,
    g: &ModTwoFunctional,
    cert: &RefutationCertificate,
) -> std::result::Result<(), String> {
    let rank = form.rank();
    if cert.rank != rank || g.len() != rank || rank % 2 == 1 {
        return Err("rank mismatch".into());
    }
    if rank > MAX_ORACLE_RANK {
        return Err("rank too large to replay".into());
    }
    if !form.is_unimodular() {
        return Err("form is not unimodular".into());
    }
    if cert.dual_vector.len() != rank || cert.dual_vector.iter().any(|&b| b > 1) {
        return Err("malformed dual vector".into());
    }
    let gram2 = gf2::reduce_matrix(form.gram());
    let w = gf2::pack(&cert.dual_vector);
    // G w ≡ g (mod 2), coordinate by coordinate.
    for (i, &row) in gram2.iter().enumerate() {
        if gf2::parity(row & w) != g.bits()[i] {
            return Err(format!("dual vector does not represent g at coordinate {i}"));
        }
    }
    let half = rank / 2;
    let mut listed = BTreeSet::new();
    for (k, sub) in cert.subspaces.iter().enumerate() {
        if sub.basis.len() != half || sub.basis.iter().any(|b| b.len() != rank || b.iter().any(|&x| x > 1)) {
            return Err(format!("subspace {k} is malformed"));
        }
        let packed: Vec<u64> = sub.basis.iter().map(|b| gf2::pack(b)).collect();
        let reduced = gf2::reduced_basis(&packed);
        if reduced.len() != half {
            return Err(format!("subspace {k} basis is dependent"));
        }
        for (i, &a) in packed.iter().enumerate() {
            for &b in &packed[i..] {
                if gf2::bilinear(&gram2, a, b) != 0 {
                    return Err(format!("subspace {k} is not totally isotropic"));
                }
            }
        }
        if !gf2::in_span(&reduced, w) {
            return Err(format!("subspace {k} does not contain the dual vector"));
        }
        if sub.residue.len() != rank || sub.residue.iter().any(|&x| x > 1) {
            return Err(format!("subspace {k} residue is malformed"));
        }
        let residue = gf2::pack(&sub.residue);
        if !gf2::in_span(&reduced, residue) {
            return Err(format!("subspace {k} residue lies outside the subspace"));
        }
        if sub.norm_mod4 != 2 || lift_norm_mod4(form, residue) != 2 {
            return Err(format!("subspace {k} residue does not have norm 2 mod 4"));
        }
        if !listed.insert(reduced) {
            return Err(format!("subspace {k} is listed twice"));
        }
    }
    let expected = match cert.kind {
        CertificateKind::Mod2Exhaustion => listed.is_empty(),
        CertificateKind::Mod4Norm => !listed.is_empty(),
    };
    if !expected {
        return Err("certificate kind does not match its subspace list".into());
    }
    if echelon_enumeration(&gram2, rank, w) != listed {
        return Err("subspace list is not the complete set of candidates".into());
    }
    Ok(())
}
