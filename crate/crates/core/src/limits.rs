use std::env;

use crate::error::{Error, Result};

/// Size guards for the exponential paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_k: i64,
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 6,
            max_k: 16,
            node_budget: 10_000_000,
        }
    }
}

impl Limits {
    /// Defaults overridden by `PMKIT_MAX_ELEMENTS`, `PMKIT_MAX_K` and
    /// `PMKIT_BUDGET`.
    pub fn from_env() -> Result<Self> {
        fn var<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
            match env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::InvalidParams(format!("{name}={v:?} is not a number"))),
                Err(_) => Ok(None),
            }
        }
        let d = Limits::default();
        Ok(Limits {
            max_elements: var("PMKIT_MAX_ELEMENTS")?.unwrap_or(d.max_elements),
            max_k: var("PMKIT_MAX_K")?.unwrap_or(d.max_k),
            node_budget: var("PMKIT_BUDGET")?.unwrap_or(d.node_budget),
        })
    }

    pub fn check(&self, elements: usize, k: i64) -> Result<()> {
        if elements > self.max_elements {
            return Err(Error::TooManyElements {
                got: elements,
                limit: self.max_elements,
            });
        }
        if k > self.max_k {
            return Err(Error::KTooLarge {
                got: k,
                limit: self.max_k,
            });
        }
        Ok(())
    }
}
