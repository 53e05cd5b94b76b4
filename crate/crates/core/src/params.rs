use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coprimality hypothesis a parameter pair satisfies.
///
/// `Strong` means gcd(r, 2p) = 1 and is what the single-product identities
/// need. `Weak` means only gcd(r, p) = 1, enough for the squared product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Weak,
    Strong,
}

/// The modulus `p` and residue `r` shared by every Fine product, together
/// with the strongest hypothesis level the pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FineParams {
    p: u32,
    r: u32,
    level: Level,
}

impl FineParams {
    /// Validates `0 < r < p` and gcd(r, p) = 1, then records the strongest level.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        check_range(p, r)?;
        let level = if r.gcd(&(2 * p)) == 1 {
            Level::Strong
        } else if r.gcd(&p) == 1 {
            Level::Weak
        } else {
            return Err(Error::InvalidParams(format!(
                "gcd(r, p) = gcd({r}, {p}) = {} != 1",
                r.gcd(&p)
            )));
        };
        Ok(Self { p, r, level })
    }

    pub fn strong(p: u32, r: u32) -> Result<Self> {
        Self::new(p, r)?.require(Level::Strong)
    }

    pub fn weak(p: u32, r: u32) -> Result<Self> {
        Self::new(p, r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Returns `self` if it satisfies at least `level`.
    pub fn require(self, level: Level) -> Result<Self> {
        if self.level >= level {
            Ok(self)
        } else {
            Err(Error::InvalidParams(format!(
                "(p, r) = ({}, {}) needs gcd(r, 2p) = 1 but gcd = {}",
                self.p,
                self.r,
                self.r.gcd(&(2 * self.p))
            )))
        }
    }

    /// All valid pairs with `2 <= p <= p_max`, ordered by `(p, r)`.
    pub fn grid(p_max: u32) -> Vec<FineParams> {
        (2..=p_max)
            .flat_map(|p| (1..p).filter_map(move |r| FineParams::new(p, r).ok()))
            .collect()
    }
}

impl fmt::Display for FineParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, r={})", self.p, self.r)
    }
}

pub(crate) fn check_range(p: u32, r: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("p = {p} must be at least 2")));
    }
    if r == 0 || r >= p {
        return Err(Error::InvalidParams(format!("need 0 < r < p, got r = {r}, p = {p}")));
    }
    // Keeps 2pn + r(p - r) and p*n - r^2 comfortably inside i64 for n <= 10^6.
    if p > 1 << 20 {
        return Err(Error::InvalidParams(format!("p = {p} is too large")));
    }
    Ok(())
}
