//! Random unimodular changes of basis and conjugated reference triples.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::classify;
use crate::forms::{GramForm, ModTwoFunctional, Parity};
use crate::intlin::{self, IntMatrix, IntVector};

/// Entry bound for [`random_unimodular`].
pub const ENTRY_BOUND: i64 = 3;

fn max_abs(m: &IntMatrix) -> i64 {
    (0..m.rows())
        .flat_map(|i| m.row(i).iter())
        .map(|x| x.abs().to_i64().unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0)
}

/// A random `n × n` integer matrix of determinant ±1 with entries in
/// `[-3, 3]`, built from elementary column operations. Operations that
/// would push an entry out of range are skipped.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    let steps = 4 * n * n;
    for _ in 0..steps {
        let op = rng.gen_range(0..3);
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut next = m.clone();
        match op {
            0 if i != j => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                for r in 0..n {
                    let x = next.get(r, i) + BigInt::from(c) * next.get(r, j);
                    next.set(r, i, x);
                }
            }
            1 if i != j => {
                for r in 0..n {
                    let (a, b) = (next.get(r, i).clone(), next.get(r, j).clone());
                    next.set(r, i, b);
                    next.set(r, j, a);
                }
            }
            2 => {
                for r in 0..n {
                    let x = -next.get(r, i);
                    next.set(r, i, x);
                }
            }
            _ => continue,
        }
        if max_abs(&next) <= ENTRY_BOUND {
            m = next;
        }
    }
    m
}

/// `(U^T G U, g ∘ U)`: the same triple written in the basis given by the
/// columns of `U`.
pub fn conjugate(form: &GramForm, g: &ModTwoFunctional, u: &IntMatrix) -> (GramForm, ModTwoFunctional) {
    (form.restrict(u), g.pull_back(u))
}

pub fn random_functional<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ModTwoFunctional {
    ModTwoFunctional::new((0..n).map(|_| rng.gen_range(0..2u8)).collect()).expect("bits are 0 or 1")
}

/// A conjugated reference form of the given parity with `1 ≤ half ≤ max_half`,
/// a random functional, and the change of basis used.
pub fn random_conjugated<R: Rng + ?Sized>(
    rng: &mut R,
    parity: Parity,
    max_half: usize,
) -> (GramForm, ModTwoFunctional, IntMatrix) {
    let half = rng.gen_range(1..=max_half);
    let reference = classify::reference_form(parity, 2 * half);
    let g = random_functional(rng, 2 * half);
    let u = random_unimodular(rng, 2 * half);
    let (form, g) = conjugate(&reference, &g, &u);
    (form, g, u)
}

/// Conjugated `D^n` (optionally plus `H`) with a primitive isotropic `v` and
/// a functional vanishing on `v`.
pub fn random_isotropic_triple<R: Rng + ?Sized>(rng: &mut R) -> (GramForm, ModTwoFunctional, IntVector) {
    let n = rng.gen_range(1..=2usize);
    let mut reference = GramForm::standard_odd(n);
    if rng.gen_bool(0.5) {
        reference = reference.direct_sum(&GramForm::hyperbolic(1));
    }
    let rank = reference.rank();
    let mut v = vec![BigInt::zero(); rank];
    loop {
        for i in 0..n {
            let c = rng.gen_range(-2i64..=2);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            v[i] = BigInt::from(c);
            v[n + i] = BigInt::from(c * s);
        }
        if rank > 2 * n {
            v[2 * n] = BigInt::from(rng.gen_range(-2i64..=2));
        }
        if intlin::is_primitive(&v) {
            break;
        }
    }
    let u = random_unimodular(rng, rank);
    let u_inv = intlin::unimodular_inverse(&u).unwrap();
    let form = reference.restrict(&u);
    let v = u_inv.mul_vec(&v);
    let mut bits = random_functional(rng, rank).bits().to_vec();
    if ModTwoFunctional::new(bits.clone()).unwrap().apply(&v) == 1 {
        let odd = v.iter().position(|x| x.bit(0)).expect("primitive vector has an odd entry");
        bits[odd] ^= 1;
    }
    (form, ModTwoFunctional::new(bits).unwrap(), v)
}
