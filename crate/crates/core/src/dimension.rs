use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ambient dimension `n` of the unit ball `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!(
                "dimension must be at least 2, got {n}"
            )));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }

    /// Fails with a domain error naming `what` unless `n >= min`.
    pub fn require_at_least(self, min: u32, what: &str) -> Result<Self> {
        if self.0 < min {
            return Err(Error::domain(format!(
                "{what} requires n >= {min}, got n = {}",
                self.0
            )));
        }
        Ok(self)
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
