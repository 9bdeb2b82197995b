use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficient ring of every matrix and complex in the crate.
///
/// Entries over `Prime(p)` are canonical residues in `[0, p)`; over
/// `Rationals` they are reduced fractions with positive denominator; over
/// `Integers` they are arbitrary-precision integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Prime(u64),
    Rationals,
    Integers,
}

impl Domain {
    /// Prime field `F_p`. Rejects composites and moduli above `u32::MAX`
    /// (products of two residues must fit in a `u64`).
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Domain::Prime(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Domain::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Prime(p) => *p,
            _ => 0,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(p) => write!(f, "Fp:{p}"),
            Domain::Rationals => f.write_str("Q"),
            Domain::Integers => f.write_str("Z"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(Domain::Rationals),
            "Z" => Ok(Domain::Integers),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .ok_or_else(|| Error::Parse(format!("unknown coefficient domain {other:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in {other:?}")))?;
                Domain::prime(p)
            }
        }
    }
}
