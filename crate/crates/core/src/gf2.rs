//! Linear algebra over the two-element field.
//!
//! Vectors of length at most 64 are packed into a `u64`, coordinate `i` in
//! bit `i`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::intlin::IntMatrix;

pub const MAX_PACKED: usize = 64;

pub fn pack(bits: &[u8]) -> u64 {
    assert!(bits.len() <= MAX_PACKED);
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b & 1) << i))
}

pub fn unpack(mask: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

pub fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

pub fn reduce(x: &BigInt) -> u8 {
    u8::from(x.is_odd())
}

pub fn reduce_vector(v: &[BigInt]) -> Vec<u8> {
    v.iter().map(reduce).collect()
}

/// Rows of a square integer matrix reduced mod 2 and packed.
pub fn reduce_matrix(m: &IntMatrix) -> Vec<u64> {
    (0..m.rows())
        .map(|i| pack(&reduce_vector(m.row(i))))
        .collect()
}

/// `x^T G y` mod 2 for a packed Gram matrix.
pub fn bilinear(gram: &[u64], x: u64, y: u64) -> u8 {
    let mut acc = 0u8;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        acc ^= parity(gram[i] & y);
        rest &= rest - 1;
    }
    acc
}

/// Solves `m * x = rhs` over the two-element field; `m` is given by rows of
/// 0/1 entries. Returns one solution, or `None` if the system is inconsistent.
pub fn solve(m: &[Vec<u8>], rhs: &[u8]) -> Option<Vec<u8>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r: Vec<u8> = r.iter().map(|x| x & 1).collect();
            r.push(b & 1);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..cols {
        let Some(r) = (p..rows).find(|&r| a[r][c] == 1) else {
            continue;
        };
        a.swap(p, r);
        for r in 0..rows {
            if r != p && a[r][c] == 1 {
                let src = a[p].clone();
                for (x, y) in a[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        p += 1;
        if p == rows {
            break;
        }
    }
    if a[p..].iter().any(|r| r[cols] == 1) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols];
    }
    Some(x)
}

/// Reduced row echelon basis of the span of `vectors`. Two families span the
/// same subspace iff their reduced bases are equal. Pivots are taken at the
/// lowest set bit, and the result is sorted by pivot.
pub fn reduced_basis(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            if x & (b & b.wrapping_neg()) != 0 {
                x ^= b;
            }
        }
        if x == 0 {
            continue;
        }
        let pivot = x & x.wrapping_neg();
        for b in &mut basis {
            if *b & pivot != 0 {
                *b ^= x;
            }
        }
        basis.push(x);
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

pub fn in_span(reduced: &[u64], x: u64) -> bool {
    let mut x = x;
    for &b in reduced {
        if x & (b & b.wrapping_neg()) != 0 {
            x ^= b;
        }
    }
    x == 0
}

/// All `2^k` elements of the span of a basis, in binary-counter order.
pub fn span_elements(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let extra: Vec<u64> = out.iter().map(|x| x ^ b).collect();
        out.extend(extra);
    }
    out
}
