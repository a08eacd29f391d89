//! λ-invariant arithmetic for manifolds with the homology of `G_3(Wu)` and
//! the 28 oriented homotopy 7-spheres `Σ_r`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of the group of homotopy 7-spheres.
pub const SPHERE_COUNT: u8 = 28;
pub const LAMBDA_MODULUS: u8 = 7;

macro_rules! residue {
    ($name:ident, $m:expr) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(u8);

        impl $name {
            pub const MODULUS: u8 = $m;

            pub fn new(x: i64) -> Self {
                $name(x.rem_euclid(i64::from($m)) as u8)
            }

            pub fn from_big(x: &BigInt) -> Self {
                let r = x.mod_floor(&BigInt::from($m));
                $name(r.to_u8().expect("residue fits in u8"))
            }

            pub fn value(self) -> u8 {
                self.0
            }

            pub fn all() -> impl Iterator<Item = $name> {
                (0..$m).map($name)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let x = u8::deserialize(d)?;
                if x >= $m {
                    return Err(serde::de::Error::custom(format!("residue {x} out of range 0..{}", $m)));
                }
                Ok($name(x))
            }
        }
    };
}

residue!(Z7, 7);
residue!(Z28, 28);

/// `Σ_r`; `r = 0` is the standard sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopySphere {
    pub r: Z28,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub lambda: Z7,
    pub label: String,
}

impl ManifoldDescriptor {
    pub fn new(lambda: Z7, label: impl Into<String>) -> Self {
        ManifoldDescriptor {
            lambda,
            label: label.into(),
        }
    }
}

/// Signature and `Λ` of a coboundary `V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryRecord {
    #[serde(with = "crate::json::int")]
    pub sigma: BigInt,
    #[serde(rename = "Lambda", with = "crate::json::int")]
    pub lambda: BigInt,
}

impl CoboundaryRecord {
    pub fn new(sigma: impl Into<BigInt>, lambda: impl Into<BigInt>) -> Self {
        CoboundaryRecord {
            sigma: sigma.into(),
            lambda: lambda.into(),
        }
    }

    fn require_signature_zero(&self) -> Result<()> {
        if self.sigma.is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroSignature {
                signature: self.sigma.to_i64().unwrap_or(i64::MAX),
            })
        }
    }
}

/// `λ(M # Σ_r) = λ(M) - 3r mod 7`.
pub fn lambda_connected_sum(lambda: Z7, r: Z28) -> Z7 {
    Z7::new(i64::from(lambda.value()) - 3 * i64::from(r.value()))
}

/// `r ↦ λ(M_0 # Σ_r)` for the base manifold with `λ = 0`.
pub fn classification_table() -> Vec<(Z28, Z7)> {
    Z28::all().map(|r| (r, lambda_connected_sum(Z7::new(0), r))).collect()
}

/// `{r : 3r ≡ 0 mod 7}`.
pub fn inertia_group() -> BTreeSet<Z28> {
    Z28::all()
        .filter(|&r| lambda_connected_sum(Z7::new(0), r).value() == 0)
        .collect()
}

pub fn are_diffeomorphic(m1: &ManifoldDescriptor, m2: &ManifoldDescriptor) -> bool {
    m1.lambda == m2.lambda
}

/// `Λ(V) mod 7` for a signature-zero coboundary.
pub fn lambda_from_coboundary(rec: &CoboundaryRecord) -> Result<Z7> {
    rec.require_signature_zero()?;
    Ok(Z7::from_big(&rec.lambda))
}

/// Coboundary of `M # Σ_r` built from `V` and `W_r`: signature stays 0 and
/// `Λ` grows by `32r`.
pub fn coboundary_after_sum(rec: &CoboundaryRecord, r: Z28) -> Result<CoboundaryRecord> {
    rec.require_signature_zero()?;
    Ok(CoboundaryRecord::new(
        BigInt::zero(),
        &rec.lambda + BigInt::from(32) * BigInt::from(r.value()),
    ))
}

/// Two signature-zero coboundaries of the same manifold must agree mod 7.
pub fn check_well_definedness(rec1: &CoboundaryRecord, rec2: &CoboundaryRecord) -> Result<bool> {
    rec1.require_signature_zero()?;
    rec2.require_signature_zero()?;
    Ok((&rec1.lambda - &rec2.lambda).is_multiple_of(&BigInt::from(7)))
}

/// `λ(-M) = -λ(M)`.
pub fn reverse_orientation(m: &ManifoldDescriptor) -> ManifoldDescriptor {
    ManifoldDescriptor {
        lambda: Z7::new(-i64::from(m.lambda.value())),
        label: format!("-({})", m.label),
    }
}
