//! Constructive classification of indefinite unimodular forms of signature
//! zero: explicit bases realizing `D^n` (odd) or `H^n` (even).

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{GramForm, IntegralFunctional, ModTwoFunctional, Parity};
use crate::intlin::{self, IntMatrix, IntVector};

/// Default cap for the expanding-box vector search.
pub const DEFAULT_SEARCH_CAP: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformRole {
    FullBasis,
    SublatticeSpan,
}

/// Integer matrix whose columns are basis vectors, written in the
/// coordinates of the ambient form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisTransform {
    pub matrix: IntMatrix,
    pub role: TransformRole,
}

impl BasisTransform {
    pub fn full(matrix: IntMatrix) -> Self {
        BasisTransform {
            matrix,
            role: TransformRole::FullBasis,
        }
    }

    pub fn span(matrix: IntMatrix) -> Self {
        BasisTransform {
            matrix,
            role: TransformRole::SublatticeSpan,
        }
    }

    pub fn columns(&self) -> Vec<IntVector> {
        self.matrix.columns()
    }

    /// Full bases must be unimodular; spans must have full column rank.
    pub fn is_well_formed(&self) -> bool {
        match self.role {
            TransformRole::FullBasis => self.matrix.is_unimodular(),
            TransformRole::SublatticeSpan => intlin::rank(&self.matrix) == self.matrix.cols(),
        }
    }
}

/// Gram matrix with machine-sized entries for the inner search loop.
enum Evaluator<'a> {
    Small { n: usize, g: Vec<i128> },
    Big(&'a GramForm),
}

impl<'a> Evaluator<'a> {
    fn new(form: &'a GramForm) -> Self {
        let n = form.rank();
        let small: Option<Vec<i128>> = (0..n * n)
            .map(|k| form.gram().get(k / n, k % n).to_i64().map(i128::from))
            .collect();
        match small {
            Some(g) => Evaluator::Small { n, g },
            None => Evaluator::Big(form),
        }
    }

    fn norm_is(&self, x: &[i64], target: i64) -> bool {
        match self {
            Evaluator::Small { n, g } => {
                let mut acc: i128 = 0;
                for i in 0..*n {
                    if x[i] == 0 {
                        continue;
                    }
                    let xi = i128::from(x[i]);
                    acc += xi * xi * g[i * n + i];
                    let mut row: i128 = 0;
                    for j in i + 1..*n {
                        row += g[i * n + j] * i128::from(x[j]);
                    }
                    acc += 2 * xi * row;
                }
                acc == i128::from(target)
            }
            Evaluator::Big(form) => form.norm(&to_big(x)) == BigInt::from(target),
        }
    }
}

fn to_big(x: &[i64]) -> IntVector {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

fn gcd_i64(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Visits, in a fixed order, every vector whose largest coordinate has
/// absolute value exactly `shell` and whose first nonzero coordinate is
/// positive. Order: by coordinate sum of absolute values, then
/// lexicographically with coordinate values ranked 1, -1, 2, -2, ..., 0.
fn visit_shell<F>(n: usize, shell: i64, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let mut values: Vec<i64> = (1..=shell).flat_map(|v| [v, -v]).collect();
    values.push(0);
    let mut x = vec![0i64; n];
    for l1 in shell..=shell * n as i64 {
        rec(0, l1, false, false, shell, &values, &mut x, visit)?;
    }
    ControlFlow::Continue(())
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(
    pos: usize,
    remaining: i64,
    hit_max: bool,
    started: bool,
    shell: i64,
    values: &[i64],
    x: &mut Vec<i64>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let n = x.len();
    if pos == n {
        if remaining == 0 && hit_max {
            return visit(x);
        }
        return ControlFlow::Continue(());
    }
    let slots = (n - pos) as i64;
    if remaining > slots * shell || (!hit_max && remaining < shell) {
        return ControlFlow::Continue(());
    }
    for &v in values {
        if !started && v < 0 {
            continue;
        }
        let a = v.abs();
        if a > remaining {
            continue;
        }
        x[pos] = v;
        rec(
            pos + 1,
            remaining - a,
            hit_max || a == shell,
            started || v != 0,
            shell,
            values,
            x,
            visit,
        )?;
    }
    x[pos] = 0;
    ControlFlow::Continue(())
}

/// Scans shells `from..=to` for a primitive vector of norm `target`
/// satisfying `accept`.
fn search_shells<P>(form: &GramForm, target: i64, from: u32, to: u32, accept: P) -> Option<IntVector>
where
    P: Fn(&[i64]) -> bool,
{
    let n = form.rank();
    if n == 0 {
        return None;
    }
    let eval = Evaluator::new(form);
    let mut found = None;
    for shell in from.max(1)..=to {
        let flow = visit_shell(n, i64::from(shell), &mut |x: &[i64]| {
            if eval.norm_is(x, target) && gcd_i64(x) == 1 && accept(x) {
                found = Some(to_big(x));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() {
            return found;
        }
    }
    None
}

/// Bound doubling 1, 2, 4, ... up to `cap`; the shell order makes the
/// witness identical to a single scan of the final box.
fn search_doubling<P>(form: &GramForm, target: i64, cap: u32, accept: P) -> Result<IntVector>
where
    P: Fn(&[i64]) -> bool,
{
    let mut done = 0u32;
    let mut bound = 1u32;
    loop {
        let upper = bound.min(cap);
        if let Some(x) = search_shells(form, target, done + 1, upper, &accept) {
            return Ok(x);
        }
        done = upper;
        if upper >= cap {
            return Err(Error::SearchBoundExceeded { cap });
        }
        bound = bound.saturating_mul(2);
    }
}

/// A primitive vector `x` with `β(x,x) = target` inside `[-bound, bound]^rank`,
/// or `None` if the box holds none. Deterministic: the first hit in
/// shell order wins.
pub fn find_vector_of_norm(form: &GramForm, target: i64, bound: u32) -> Option<IntVector> {
    search_shells(form, target, 1, bound, |_| true)
}

fn check_signature_zero(form: &GramForm, parity: Parity) -> Result<()> {
    form.require_unimodular()?;
    if form.parity() != parity {
        return Err(Error::WrongParity { expected: parity });
    }
    let signature = form.signature();
    if signature != 0 {
        return Err(Error::NonzeroSignature { signature });
    }
    Ok(())
}

/// Pairwise Euclidean size reduction of the columns of `k`. Keeps the
/// column span; only shortens the basis so later searches stay small.
fn size_reduce(k: &IntMatrix) -> IntMatrix {
    let mut cols = k.columns();
    let sq = |v: &IntVector| intlin::dot(v, v);
    loop {
        let mut changed = false;
        for i in 0..cols.len() {
            for j in 0..cols.len() {
                if i == j {
                    continue;
                }
                let nj = sq(&cols[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = intlin::dot(&cols[i], &cols[j]);
                let mu = (BigInt::from(2) * &num + &nj).div_floor(&(BigInt::from(2) * &nj));
                if mu.is_zero() {
                    continue;
                }
                let cand: IntVector = cols[i].iter().zip(&cols[j]).map(|(a, b)| a - &mu * b).collect();
                if sq(&cand) < sq(&cols[i]) {
                    cols[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    IntMatrix::from_columns(k.rows(), &cols)
}

/// Integer `t` minimizing `|a - 2tb + t^2 c|`, the diagonal entry after
/// `x_i <- x_i - t x_j`.
fn best_shift(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let mut cands: Vec<BigInt> = Vec::new();
    let mut near = |num: &BigInt, den: &BigInt| {
        let f = num.div_floor(den);
        for d in -1..=2 {
            cands.push(&f + d);
        }
    };
    if c.is_zero() {
        if !b.is_zero() {
            near(a, &(BigInt::from(2) * b));
        }
    } else {
        near(b, c);
        let disc = b * b - a * c;
        if !disc.is_negative() {
            let r = disc.sqrt();
            near(&(b + &r), c);
            near(&(b - &r), c);
        }
    }
    let q = |t: &BigInt| (a - BigInt::from(2) * t * b + t * t * c).abs();
    cands
        .into_iter()
        .min_by(|s, t| q(s).cmp(&q(t)).then_with(|| s.abs().cmp(&t.abs())).then_with(|| s.cmp(t)))
        .unwrap_or_else(BigInt::zero)
}

/// Greedy reduction of the diagonal of `k^T G k`: each step replaces a
/// column by `x_i - t x_j` when that strictly lowers `|β(x_i, x_i)|`.
fn gram_reduce(form: &GramForm, k: &IntMatrix) -> IntMatrix {
    let mut cols = k.columns();
    let n = cols.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let a = form.norm(&cols[i]);
                let b = form.evaluate(&cols[i], &cols[j]).expect("same length");
                let c = form.norm(&cols[j]);
                let t = best_shift(&a, &b, &c);
                if t.is_zero() {
                    continue;
                }
                let cand: IntVector = cols[i].iter().zip(&cols[j]).map(|(x, y)| x - &t * y).collect();
                if form.norm(&cand).abs() < a.abs() {
                    cols[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    IntMatrix::from_columns(k.rows(), &cols)
}

/// Basis of the orthogonal complement of the columns of `span` under `form`.
fn orthogonal_complement(form: &GramForm, span: &[IntVector]) -> IntMatrix {
    let pairings: Vec<IntVector> = span.iter().map(|x| form.pairing_with(x)).collect();
    let m = IntMatrix::from_columns(form.rank(), &pairings);
    let kernel = intlin::left_kernel(&m);
    // Canonical basis of the kernel first, so coordinate summands come out as unit vectors.
    let (h, _) = intlin::hermite_normal_form(&kernel.transpose());
    gram_reduce(form, &size_reduce(&h.transpose()))
}

pub fn standard_orthogonal_basis(form: &GramForm) -> Result<BasisTransform> {
    standard_orthogonal_basis_with_cap(form, DEFAULT_SEARCH_CAP)
}

/// Basis `T` with `T^T G T = diag(1,...,1,-1,...,-1)`. Splits off a norm ±1
/// vector at a time; the vector is chosen non-characteristic so the
/// complement stays odd, and its sign keeps the complement indefinite.
pub fn standard_orthogonal_basis_with_cap(form: &GramForm, cap: u32) -> Result<BasisTransform> {
    check_signature_zero(form, Parity::Odd)?;
    let rank = form.rank();
    let mut basis = IntMatrix::identity(rank);
    let mut current = form.clone();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    while current.rank() > 0 {
        let inertia = current.inertia();
        let target = if inertia.n_plus >= inertia.n_minus && inertia.n_plus > 0 { 1 } else { -1 };
        let last = current.rank() == 1;
        let x = search_doubling(&current, target, cap, |x| last || !current.is_characteristic(&to_big(x)))?;
        let u = basis.mul_vec(&x);
        if target == 1 {
            positive.push(u);
        } else {
            negative.push(u);
        }
        let k = orthogonal_complement(&current, &[x]);
        basis = &basis * &k;
        current = current.restrict(&k);
    }
    positive.extend(negative);
    let t = IntMatrix::from_columns(rank, &positive);
    if t.congruent(form.gram()) != *GramForm::standard_odd(rank / 2).gram() {
        return Err(Error::Internal("standard orthogonal basis failed re-multiplication".into()));
    }
    Ok(BasisTransform::full(t))
}

pub fn hyperbolic_basis(form: &GramForm) -> Result<BasisTransform> {
    hyperbolic_basis_with_cap(form, DEFAULT_SEARCH_CAP)
}

/// Basis `T` with `T^T G T` block-diagonal in copies of `[[0,1],[1,0]]`.
pub fn hyperbolic_basis_with_cap(form: &GramForm, cap: u32) -> Result<BasisTransform> {
    check_signature_zero(form, Parity::Even)?;
    let rank = form.rank();
    let mut basis = IntMatrix::identity(rank);
    let mut current = form.clone();
    let mut cols = Vec::with_capacity(rank);
    while current.rank() > 0 {
        let u = search_doubling(&current, 0, cap, |_| true)?;
        let pairing = current.pairing_with(&u);
        let (g, y) = intlin::bezout_coefficients(&pairing);
        if !g.is_one() {
            return Err(Error::Internal("isotropic vector pairs non-primitively".into()));
        }
        // β(u, y) = 1; shift y by a multiple of u to make it isotropic.
        let half = current.norm(&y) / BigInt::from(2);
        let w: IntVector = y.iter().zip(&u).map(|(a, b)| a - &half * b).collect();
        cols.push(basis.mul_vec(&u));
        cols.push(basis.mul_vec(&w));
        let k = orthogonal_complement(&current, &[u, w]);
        basis = &basis * &k;
        current = current.restrict(&k);
    }
    let t = IntMatrix::from_columns(rank, &cols);
    if t.congruent(form.gram()) != *GramForm::hyperbolic(rank / 2).gram() {
        return Err(Error::Internal("hyperbolic basis failed re-multiplication".into()));
    }
    Ok(BasisTransform::full(t))
}

/// Reference basis for either parity.
pub fn reference_basis(form: &GramForm) -> Result<BasisTransform> {
    match form.parity() {
        Parity::Odd => standard_orthogonal_basis(form),
        Parity::Even => hyperbolic_basis(form),
    }
}

/// The reference form `D^n` or `H^n` of matching parity and rank.
pub fn reference_form(parity: Parity, rank: usize) -> GramForm {
    match parity {
        Parity::Odd => GramForm::standard_odd(rank / 2),
        Parity::Even => GramForm::hyperbolic(rank / 2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizedTriple {
    pub form: GramForm,
    pub g: ModTwoFunctional,
    pub f: IntegralFunctional,
}

/// `β ⊕ H^k`, with both functionals extended by zero.
pub fn stabilize(form: &GramForm, g: &ModTwoFunctional, f: &IntegralFunctional, k: usize) -> StabilizedTriple {
    StabilizedTriple {
        form: form.direct_sum(&GramForm::hyperbolic(k)),
        g: g.direct_sum(&ModTwoFunctional::zero(2 * k)),
        f: f.direct_sum(&IntegralFunctional::zero(2 * k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn find_vector_examples() {
        let d = GramForm::standard_odd(1);
        let h = GramForm::hyperbolic(1);
        assert_eq!(find_vector_of_norm(&d, 1, 1), Some(v(&[1, 0])));
        assert_eq!(find_vector_of_norm(&h, 0, 1), Some(v(&[1, 0])));
        let definite = GramForm::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(find_vector_of_norm(&definite, 0, 6), None);
    }

    #[test]
    fn shell_enumeration_counts() {
        // Shell r in dimension n holds ((2r+1)^n - (2r-1)^n) / 2 sign-normalized vectors.
        for n in 1..=3usize {
            for r in 1..=3i64 {
                let mut count = 0;
                let _ = visit_shell(n, r, &mut |_| {
                    count += 1;
                    ControlFlow::Continue(())
                });
                let expect = ((2 * r + 1).pow(n as u32) - (2 * r - 1).pow(n as u32)) / 2;
                assert_eq!(count, expect, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn standard_basis_of_d_is_identity() {
        let t = standard_orthogonal_basis(&GramForm::standard_odd(1)).unwrap();
        assert_eq!(t.matrix, IntMatrix::identity(2));
    }

    #[test]
    fn hyperbolic_basis_of_h_is_identity() {
        for n in 1..=2 {
            let t = hyperbolic_basis(&GramForm::hyperbolic(n)).unwrap();
            assert_eq!(t.matrix, IntMatrix::identity(2 * n));
        }
    }

    #[test]
    fn d_plus_h_basis() {
        let dh = GramForm::standard_odd(1).direct_sum(&GramForm::hyperbolic(1));
        // Columns u1 = e1, u2 = f1+e2+f2, v1 = f1+e2, v2 = f1+f2 in order (e1, f1, e2, f2).
        let known = IntMatrix::from_columns(
            4,
            &[v(&[1, 0, 0, 0]), v(&[0, 1, 1, 1]), v(&[0, 1, 1, 0]), v(&[0, 1, 0, 1])],
        );
        assert_eq!(known.congruent(dh.gram()), *GramForm::standard_odd(2).gram());
        assert!(known.is_unimodular());
        let t = standard_orthogonal_basis(&dh).unwrap();
        assert_eq!(t.matrix.congruent(dh.gram()), *GramForm::standard_odd(2).gram());
        assert!(t.is_well_formed());
    }

    #[test]
    fn precondition_errors() {
        let h = GramForm::hyperbolic(1);
        assert_eq!(
            standard_orthogonal_basis(&h),
            Err(Error::WrongParity { expected: Parity::Odd })
        );
        let d = GramForm::standard_odd(1);
        assert_eq!(hyperbolic_basis(&d), Err(Error::WrongParity { expected: Parity::Even }));
        let pos = GramForm::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            standard_orthogonal_basis(&pos),
            Err(Error::NonzeroSignature { signature: 2 })
        );
        let degenerate = GramForm::from_rows(&[vec![1, 0], vec![0, 3]]).unwrap();
        assert!(matches!(standard_orthogonal_basis(&degenerate), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn stabilize_appends_hyperbolic_blocks() {
        let d = GramForm::standard_odd(1);
        let g = ModTwoFunctional::new(vec![1, 0]).unwrap();
        let f = IntegralFunctional::from_i64(&[0, 1]);
        let s = stabilize(&d, &g, &f, 1);
        assert_eq!(s.form.rank(), 4);
        assert_eq!(s.g.bits(), &[1, 0, 0, 0]);
        assert_eq!(s.f, IntegralFunctional::from_i64(&[0, 1, 0, 0]));
        let s0 = stabilize(&d, &g, &f, 0);
        assert_eq!((s0.form, s0.g, s0.f), (d, g, f));
    }
}
