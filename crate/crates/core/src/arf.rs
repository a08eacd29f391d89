//! Arf-type invariants of a triple `(V, β, g)` and the constructive
//! Lagrangians inside `ker g`.
//!
//! `Ξ_odd` sums `g` over a standard orthogonal basis, `Ξ_even` sums
//! `g(e_i) g(f_i)` over a hyperbolic basis. Both values are reduced mod 2.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::classify::{self, BasisTransform};
use crate::error::{Error, Result};
use crate::forms::{GramForm, ModTwoFunctional, Parity};
use crate::intlin::{self, IntMatrix, IntVector};

fn check_lengths(form: &GramForm, g: &ModTwoFunctional) -> Result<()> {
    if g.len() != form.rank() {
        return Err(Error::DimensionMismatch {
            expected: form.rank(),
            found: g.len(),
        });
    }
    Ok(())
}

/// `Σ g(e_i) + Σ g(f_i)` over a standard orthogonal basis.
pub fn xi_odd(form: &GramForm, g: &ModTwoFunctional) -> Result<u8> {
    check_lengths(form, g)?;
    let t = classify::standard_orthogonal_basis(form)?;
    Ok(xi_odd_in_basis(g, &t.matrix))
}

pub(crate) fn xi_odd_in_basis(g: &ModTwoFunctional, t: &IntMatrix) -> u8 {
    g.pull_back(t).bits().iter().fold(0, |acc, b| acc ^ b)
}

/// `Σ g(e_i) g(f_i)` over a hyperbolic basis.
pub fn xi_even(form: &GramForm, g: &ModTwoFunctional) -> Result<u8> {
    check_lengths(form, g)?;
    let t = classify::hyperbolic_basis(form)?;
    Ok(xi_even_in_basis(g, &t.matrix))
}

pub(crate) fn xi_even_in_basis(g: &ModTwoFunctional, t: &IntMatrix) -> u8 {
    let vals = g.pull_back(t);
    vals.bits().chunks(2).fold(0, |acc, p| acc ^ (p[0] & p[1]))
}

/// The invariant matching the parity of `form`.
pub fn xi(form: &GramForm, g: &ModTwoFunctional) -> Result<u8> {
    match form.parity() {
        Parity::Odd => xi_odd(form, g),
        Parity::Even => xi_even(form, g),
    }
}

/// Columns spanning a candidate Lagrangian, in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianWitness {
    pub span: BasisTransform,
}

impl LagrangianWitness {
    pub fn from_columns(rank: usize, cols: &[IntVector]) -> Self {
        LagrangianWitness {
            span: BasisTransform::span(IntMatrix::from_columns(rank, cols)),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.span.matrix
    }
}

/// The pairing step of the odd construction needs, inside each g-value
/// block, as many norm +1 as norm -1 basis vectors. Counts are
/// `[g = 0, g = 1]` for each sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingObstruction {
    pub plus: [usize; 2],
    pub minus: [usize; 2],
    pub basis: BasisTransform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum OddConstruction {
    Witness(LagrangianWitness),
    PairingObstruction(PairingObstruction),
}

fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn verified(form: &GramForm, g: &ModTwoFunctional, cols: &[IntVector]) -> Result<LagrangianWitness> {
    let w = LagrangianWitness::from_columns(form.rank(), cols);
    if !verify_lagrangian(form, g, w.matrix()) {
        return Err(Error::Internal("constructed Lagrangian failed verification".into()));
    }
    Ok(w)
}

/// Hyperbolic planes with `g(e) g(f) = 1` are taken in pairs and replaced by
/// `e_a + e_b`, `f_a - f_b`; every other plane contributes whichever of
/// `e`, `f` has `g = 0`.
pub fn lagrangian_in_kernel_even(form: &GramForm, g: &ModTwoFunctional) -> Result<LagrangianWitness> {
    check_lengths(form, g)?;
    let t = classify::hyperbolic_basis(form)?;
    let vals = g.pull_back(&t.matrix);
    let cols = t.matrix.columns();
    let n = cols.len() / 2;
    let mut both: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (ge, gf) = (vals.bits()[2 * i], vals.bits()[2 * i + 1]);
        if ge & gf == 1 {
            both.push(i);
        } else if ge == 0 {
            out.push(cols[2 * i].clone());
        } else {
            out.push(cols[2 * i + 1].clone());
        }
    }
    if both.len() % 2 == 1 {
        return Err(Error::InvariantNonzero);
    }
    let mut paired = Vec::with_capacity(n);
    for pair in both.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        paired.push(add(&cols[2 * a], &cols[2 * b]));
        paired.push(sub(&cols[2 * a + 1], &cols[2 * b + 1]));
    }
    paired.extend(out);
    verified(form, g, &paired)
}

/// Pairs basis vectors of equal `g` value and opposite norm `ε, ε'`, and
/// replaces each pair by `e - ε ε' e'`. Reports a [`PairingObstruction`]
/// when the computed basis admits no such pairing; no basis re-selection is
/// attempted.
pub fn lagrangian_in_kernel_odd(form: &GramForm, g: &ModTwoFunctional) -> Result<OddConstruction> {
    check_lengths(form, g)?;
    let t = classify::standard_orthogonal_basis(form)?;
    if xi_odd_in_basis(g, &t.matrix) == 1 {
        return Err(Error::InvariantNonzero);
    }
    let vals = g.pull_back(&t.matrix);
    let cols = t.matrix.columns();
    let n = cols.len() / 2;
    // e_i have norm +1, f_i = cols[n + i] have norm -1.
    let mut plus: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut minus: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for i in 0..n {
        plus[vals.bits()[i] as usize].push(i);
        minus[vals.bits()[n + i] as usize].push(n + i);
    }
    if (0..2).any(|b| plus[b].len() != minus[b].len()) {
        return Ok(OddConstruction::PairingObstruction(PairingObstruction {
            plus: [plus[0].len(), plus[1].len()],
            minus: [minus[0].len(), minus[1].len()],
            basis: t,
        }));
    }
    let mut pairs: Vec<(usize, usize)> = (0..2)
        .flat_map(|b| plus[b].iter().copied().zip(minus[b].iter().copied()).collect::<Vec<_>>())
        .collect();
    pairs.sort_unstable();
    // ε_p ε_m = -1, so e_p - ε_p ε_m e_m = e_p + e_m.
    let out: Vec<IntVector> = pairs.iter().map(|&(p, m)| add(&cols[p], &cols[m])).collect();
    verified(form, g, &out).map(OddConstruction::Witness)
}

/// True iff the columns of `span` form a Lagrangian in `ker g`: half rank,
/// isotropic, saturated (all elementary divisors 1), and killed by `g`.
pub fn verify_lagrangian(form: &GramForm, g: &ModTwoFunctional, span: &IntMatrix) -> bool {
    let rank = form.rank();
    if span.rows() != rank || g.len() != rank || rank % 2 == 1 || span.cols() != rank / 2 {
        return false;
    }
    if !span.congruent(form.gram()).is_zero() {
        return false;
    }
    if !is_saturated(span) {
        return false;
    }
    span.columns().iter().all(|c| g.apply(c) == 0)
}

/// Full column rank with every elementary divisor equal to one.
pub fn is_saturated(span: &IntMatrix) -> bool {
    if span.cols() > span.rows() {
        return false;
    }
    intlin::elementary_divisors(span).iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn g(bits: &[u8]) -> ModTwoFunctional {
        ModTwoFunctional::new(bits.to_vec()).unwrap()
    }

    fn span(rows: usize, cols: &[&[i64]]) -> IntMatrix {
        let cols: Vec<IntVector> = cols.iter().map(|c| v(c)).collect();
        IntMatrix::from_columns(rows, &cols)
    }

    #[test]
    fn xi_values() {
        let d = GramForm::standard_odd(1);
        let d2 = GramForm::standard_odd(2);
        let h = GramForm::hyperbolic(1);
        let h2 = GramForm::hyperbolic(2);
        assert_eq!(xi_odd(&d, &g(&[1, 0])).unwrap(), 1);
        assert_eq!(xi_odd(&d2, &g(&[1, 1, 0, 0])).unwrap(), 0);
        assert_eq!(xi_even(&h, &g(&[1, 1])).unwrap(), 1);
        assert_eq!(xi_even(&h, &g(&[1, 0])).unwrap(), 0);
        assert_eq!(xi_even(&h2, &g(&[1, 1, 1, 1])).unwrap(), 0);
        assert_eq!(xi(&h, &g(&[1, 1])).unwrap(), 1);
        assert!(matches!(
            xi_odd(&d, &g(&[1, 0, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn xi_odd_ignores_even_summand() {
        let form = GramForm::standard_odd(1).direct_sum(&GramForm::hyperbolic(1));
        for mask in 0..16u64 {
            let bits = ModTwoFunctional::from_mask(mask, 4);
            let head = ModTwoFunctional::new(bits.bits()[..2].to_vec()).unwrap();
            let d = GramForm::standard_odd(1);
            assert_eq!(xi_odd(&form, &bits).unwrap(), xi_odd(&d, &head).unwrap());
        }
    }

    #[test]
    fn even_constructor_examples() {
        let h = GramForm::hyperbolic(1);
        let w = lagrangian_in_kernel_even(&h, &g(&[0, 0])).unwrap();
        assert_eq!(w.matrix().columns(), vec![v(&[1, 0])]);
        let w = lagrangian_in_kernel_even(&h, &g(&[1, 0])).unwrap();
        assert_eq!(w.matrix().columns(), vec![v(&[0, 1])]);
        assert_eq!(lagrangian_in_kernel_even(&h, &g(&[1, 1])), Err(Error::InvariantNonzero));

        let h2 = GramForm::hyperbolic(2);
        let w = lagrangian_in_kernel_even(&h2, &g(&[1, 1, 1, 1])).unwrap();
        assert_eq!(w.matrix().columns(), vec![v(&[1, 0, 1, 0]), v(&[0, 1, 0, -1])]);
    }

    #[test]
    fn odd_constructor_examples() {
        let d = GramForm::standard_odd(1);
        let OddConstruction::Witness(w) = lagrangian_in_kernel_odd(&d, &g(&[0, 0])).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.matrix().columns(), vec![v(&[1, 1])]);
        assert_eq!(lagrangian_in_kernel_odd(&d, &g(&[0, 1])), Err(Error::InvariantNonzero));

        let d2 = GramForm::standard_odd(2);
        let OddConstruction::Witness(w) = lagrangian_in_kernel_odd(&d2, &g(&[1, 0, 1, 0])).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.matrix().columns(), vec![v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1])]);

        let OddConstruction::PairingObstruction(ob) = lagrangian_in_kernel_odd(&d2, &g(&[1, 1, 0, 0])).unwrap() else {
            panic!("expected a pairing obstruction");
        };
        assert_eq!(ob.plus, [0, 2]);
        assert_eq!(ob.minus, [2, 0]);
    }

    #[test]
    fn verify_examples() {
        let d = GramForm::standard_odd(1);
        assert!(verify_lagrangian(&d, &g(&[0, 0]), &span(2, &[&[1, -1]])));
        assert!(!verify_lagrangian(&d, &g(&[0, 0]), &span(2, &[&[2, -2]])));

        let d2 = GramForm::standard_odd(2);
        let unsaturated = span(4, &[&[1, 1, 1, 1], &[1, -1, 1, -1]]);
        assert!(unsaturated.congruent(d2.gram()).is_zero());
        assert!(!verify_lagrangian(&d2, &g(&[1, 1, 0, 0]), &unsaturated));

        let h = GramForm::hyperbolic(1);
        assert!(!verify_lagrangian(&h, &g(&[1, 0]), &span(2, &[&[1, 0]])));
        assert!(verify_lagrangian(&h, &g(&[0, 1]), &span(2, &[&[1, 0]])));
    }
}
