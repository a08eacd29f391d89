//! Symmetric bilinear forms on `Z^n` and the functionals paired with them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::intlin::{self, Inertia, IntMatrix, IntVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// A symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GramForm {
    gram: IntMatrix,
}

impl<'de> Deserialize<'de> for GramForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GramForm::new(IntMatrix::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for GramForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramForm({:?})", self.gram)
    }
}

impl GramForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(GramForm { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// `<1>^n ⊕ <-1>^n`, basis order e_1..e_n, f_1..f_n.
    pub fn standard_odd(n: usize) -> Self {
        let entries: Vec<i64> = std::iter::repeat(1).take(n).chain(std::iter::repeat(-1).take(n)).collect();
        GramForm {
            gram: IntMatrix::diagonal(&entries),
        }
    }

    /// `n` hyperbolic planes, basis order e_1, f_1, e_2, f_2, ...
    pub fn hyperbolic(n: usize) -> Self {
        let mut g = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            g.set(2 * i, 2 * i + 1, BigInt::one());
            g.set(2 * i + 1, 2 * i, BigInt::one());
        }
        GramForm { gram: g }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntMatrix {
        self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn require_unimodular(&self) -> Result<()> {
        let det = self.determinant();
        if det.abs().is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular { det })
        }
    }

    /// Even iff every diagonal entry is even, since
    /// `β(x,x) = Σ x_i² G_ii + 2 Σ_{i<j} x_i x_j G_ij`.
    pub fn parity(&self) -> Parity {
        if (0..self.rank()).all(|i| self.gram.get(i, i).is_even()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn inertia(&self) -> Inertia {
        intlin::signature_of_symmetric(&self.gram).expect("GramForm is symmetric by construction")
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }

    pub fn direct_sum(&self, other: &GramForm) -> GramForm {
        GramForm {
            gram: IntMatrix::block_diag(&self.gram, &other.gram),
        }
    }

    /// `x^T G y`.
    pub fn evaluate(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        for v in [x, y] {
            if v.len() != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    found: v.len(),
                });
            }
        }
        Ok(intlin::dot(x, &self.gram.mul_vec(y)))
    }

    /// `x^T G x`; panics on a length mismatch.
    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.evaluate(x, x).expect("vector length matches rank")
    }

    /// Gram matrix of the columns of `t`, i.e. `t^T G t`.
    pub fn restrict(&self, t: &IntMatrix) -> GramForm {
        GramForm {
            gram: t.congruent(&self.gram),
        }
    }

    /// The pairing `x ↦ β(x, v)` as a coefficient vector, `G v`.
    pub fn pairing_with(&self, v: &[BigInt]) -> IntVector {
        self.gram.mul_vec(v)
    }

    /// Whether `x` is characteristic: `β(x, y) ≡ β(y, y) (mod 2)` for all `y`.
    pub fn is_characteristic(&self, x: &[BigInt]) -> bool {
        let gx = self.gram.mul_vec(x);
        (0..self.rank()).all(|i| gx[i].is_odd() == self.gram.get(i, i).is_odd())
    }
}

/// A homomorphism `Z^n → Z/2`, `g(x) = Σ bits_i x_i mod 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ModTwoFunctional {
    bits: Vec<u8>,
}

impl<'de> Deserialize<'de> for ModTwoFunctional {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        ModTwoFunctional::new(bits).map_err(serde::de::Error::custom)
    }
}

impl ModTwoFunctional {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(i) = bits.iter().position(|&b| b > 1) {
            return Err(Error::PreconditionViolated(format!(
                "mod-2 functional entry {i} is {}, expected 0 or 1",
                bits[i]
            )));
        }
        Ok(ModTwoFunctional { bits })
    }

    pub fn zero(n: usize) -> Self {
        ModTwoFunctional { bits: vec![0; n] }
    }

    /// Functional whose bits are the low `n` bits of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        ModTwoFunctional {
            bits: gf2::unpack(mask, n),
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_epic(&self) -> bool {
        self.bits.contains(&1)
    }

    pub fn apply(&self, x: &[BigInt]) -> u8 {
        assert_eq!(x.len(), self.bits.len(), "vector length does not match functional");
        self.bits
            .iter()
            .zip(x)
            .filter(|(&b, x)| b == 1 && x.is_odd())
            .count() as u8
            & 1
    }

    pub fn direct_sum(&self, other: &ModTwoFunctional) -> ModTwoFunctional {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        ModTwoFunctional { bits }
    }

    /// Values on the columns of `t`: the functional in the coordinates `t` defines.
    pub fn pull_back(&self, t: &IntMatrix) -> ModTwoFunctional {
        ModTwoFunctional {
            bits: t.columns().iter().map(|c| self.apply(c)).collect(),
        }
    }
}

/// A homomorphism `Z^n → Z`, `f(x) = Σ coeffs_i x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegralFunctional {
    #[serde(with = "crate::json::int_vec")]
    coeffs: IntVector,
}

impl IntegralFunctional {
    pub fn new(coeffs: IntVector) -> Self {
        IntegralFunctional { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegralFunctional {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        IntegralFunctional {
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_epic(&self) -> bool {
        intlin::vector_gcd(&self.coeffs).is_one()
    }

    pub fn apply(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.coeffs.len(), "vector length does not match functional");
        intlin::dot(&self.coeffs, x)
    }

    pub fn direct_sum(&self, other: &IntegralFunctional) -> IntegralFunctional {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend_from_slice(&other.coeffs);
        IntegralFunctional { coeffs }
    }

    pub fn pull_back(&self, t: &IntMatrix) -> IntegralFunctional {
        IntegralFunctional {
            coeffs: t.columns().iter().map(|c| self.apply(c)).collect(),
        }
    }
}

/// The vector `w_g`, unique mod 2, with `g(x) ≡ β(x, w_g) (mod 2)`.
pub fn mod2_dual_vector(form: &GramForm, g: &ModTwoFunctional) -> Result<Vec<u8>> {
    if g.len() != form.rank() {
        return Err(Error::DimensionMismatch {
            expected: form.rank(),
            found: g.len(),
        });
    }
    form.require_unimodular()?;
    let rows: Vec<Vec<u8>> = form
        .gram()
        .to_rows()
        .iter()
        .map(|r| gf2::reduce_vector(r))
        .collect();
    gf2::solve(&rows, g.bits())
        .ok_or_else(|| Error::Internal("unimodular form is singular mod 2".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn d() -> GramForm {
        GramForm::standard_odd(1)
    }

    fn h() -> GramForm {
        GramForm::hyperbolic(1)
    }

    #[test]
    fn parity_examples() {
        assert_eq!(d().parity(), Parity::Odd);
        assert_eq!(h().parity(), Parity::Even);
        assert_eq!(d().direct_sum(&h()).parity(), Parity::Odd);
    }

    #[test]
    fn direct_sum_examples() {
        let dh = d().direct_sum(&h());
        assert_eq!(dh.rank(), 4);
        assert_eq!(dh.signature(), 0);
        let hh = h().direct_sum(&h());
        assert_eq!(hh, GramForm::hyperbolic(2));
        assert_eq!(hh.parity(), Parity::Even);
        let g = ModTwoFunctional::new(vec![1, 0]).unwrap();
        let g2 = ModTwoFunctional::new(vec![0, 1]).unwrap();
        assert_eq!(g.direct_sum(&g2).bits(), &[1, 0, 0, 1]);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(h().evaluate(&v(&[1, 1]), &v(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(d().evaluate(&v(&[1, 1]), &v(&[1, -1])).unwrap(), BigInt::from(2));
        assert!(d().evaluate(&v(&[0, 0]), &v(&[3, -7])).unwrap().is_zero());
        assert_eq!(
            d().evaluate(&v(&[1]), &v(&[1, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn dual_vector_examples() {
        let d2 = GramForm::standard_odd(2);
        let g = ModTwoFunctional::new(vec![1, 1, 0, 0]).unwrap();
        assert_eq!(mod2_dual_vector(&d2, &g).unwrap(), vec![1, 1, 0, 0]);
        let g = ModTwoFunctional::new(vec![1, 1]).unwrap();
        let w = mod2_dual_vector(&h(), &g).unwrap();
        assert_eq!(w, vec![1, 1]);
        // check on basis vectors: β(e_i, w) ≡ g(e_i)
        let wl: IntVector = w.iter().map(|&b| BigInt::from(b)).collect();
        for i in 0..2 {
            let mut e = v(&[0, 0]);
            e[i] = BigInt::one();
            assert_eq!(gf2::reduce(&h().evaluate(&e, &wl).unwrap()), g.apply(&e));
        }
        assert_eq!(mod2_dual_vector(&d2, &ModTwoFunctional::zero(4)).unwrap(), vec![0; 4]);
        let not_unimodular = GramForm::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            mod2_dual_vector(&not_unimodular, &ModTwoFunctional::zero(2)),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn rejects_asymmetric_gram() {
        assert_eq!(
            GramForm::from_rows(&[vec![1, 2], vec![3, 4]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn functional_epic() {
        assert!(!ModTwoFunctional::zero(3).is_epic());
        assert!(IntegralFunctional::from_i64(&[2, 3]).is_epic());
        assert!(!IntegralFunctional::from_i64(&[2, 4]).is_epic());
        assert!(ModTwoFunctional::new(vec![0, 2]).is_err());
    }

    #[test]
    fn characteristic_vectors() {
        let d2 = GramForm::standard_odd(2);
        assert!(d2.is_characteristic(&v(&[1, 1, 1, 1])));
        assert!(!d2.is_characteristic(&v(&[1, 0, 0, 0])));
        assert!(h().is_characteristic(&v(&[0, 0])));
    }
}
