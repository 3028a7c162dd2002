//! Coefficient scalars for Schubert expansions.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Num, One, Zero};
use serde::{Deserialize, Serialize};

/// Exact nonnegative integer coefficients. Fixed-width implementations report overflow instead
/// of wrapping or saturating.
pub trait Coefficient:
    Clone
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + Num
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + Into<BigUint>
    + Send
    + Sync
    + 'static
{
    /// `self += c * k`, or `None` on overflow.
    fn add_scaled(&mut self, c: &Self, k: u32) -> Option<()> {
        let p = c.checked_mul(&Self::from_u32(k)?)?;
        *self = self.checked_add(&p)?;
        Some(())
    }

    fn is_exactly_one(&self) -> bool {
        self.is_one()
    }
}

impl Coefficient for u64 {
    #[inline]
    fn add_scaled(&mut self, c: &Self, k: u32) -> Option<()> {
        *self = u64::checked_add(*self, u64::checked_mul(*c, k as u64)?)?;
        Some(())
    }
}

impl Coefficient for u128 {
    #[inline]
    fn add_scaled(&mut self, c: &Self, k: u32) -> Option<()> {
        *self = u128::checked_add(*self, u128::checked_mul(*c, k as u128)?)?;
        Some(())
    }
}

impl Coefficient for BigUint {
    #[inline]
    fn add_scaled(&mut self, c: &Self, k: u32) -> Option<()> {
        // k is a structure constant (at most 6), so repeated addition avoids a temporary.
        for _ in 0..k {
            *self += c;
        }
        Some(())
    }
}

/// Which coefficient type a computation runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    ArbitraryPrecision,
    Checked64,
    Checked128,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "arbitrary" | "arbitrary-precision" | "big" => Ok(Backend::ArbitraryPrecision),
            "u64" | "checked64" | "checked-64" => Ok(Backend::Checked64),
            "u128" | "checked128" | "checked-128" => Ok(Backend::Checked128),
            other => Err(format!("unknown coefficient backend {other:?}")),
        }
    }
}
