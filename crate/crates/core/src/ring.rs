//! Polynomial ring contexts and resource limits.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::monomial::{MonomialOrder, MAX_VARS};

/// Caps on Groebner-basis computations. Exceeding any of them is a hard
/// [`AlgebraError::ResourceLimit`] failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_basis_size: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis_size: 20_000, max_degree: 256, max_pairs: 2_000_000 }
    }
}

impl Limits {
    pub const ENV_MAX_BASIS: &'static str = "EIDS_MAX_BASIS";
    pub const ENV_MAX_DEGREE: &'static str = "EIDS_MAX_DEGREE";
    pub const ENV_MAX_PAIRS: &'static str = "EIDS_MAX_PAIRS";

    /// Defaults overridden by `EIDS_MAX_BASIS`, `EIDS_MAX_DEGREE` and
    /// `EIDS_MAX_PAIRS` when set.
    pub fn from_env() -> Result<Limits, String> {
        fn read<T: std::str::FromStr>(name: &str, default: T) -> Result<T, String> {
            match std::env::var(name) {
                Ok(v) => v.trim().parse().map_err(|_| format!("{name}: cannot parse `{v}`")),
                Err(_) => Ok(default),
            }
        }
        let d = Limits::default();
        let limits = Limits {
            max_basis_size: read(Self::ENV_MAX_BASIS, d.max_basis_size)?,
            max_degree: read(Self::ENV_MAX_DEGREE, d.max_degree)?,
            max_pairs: read(Self::ENV_MAX_PAIRS, d.max_pairs)?,
        };
        if limits.max_basis_size == 0 || limits.max_degree == 0 || limits.max_pairs == 0 {
            return Err("resource caps must be positive".into());
        }
        Ok(limits)
    }
}

/// Ordered variables, a monomial order and the limits that apply to every
/// computation in the ring.
#[derive(Debug, Clone)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>, AlgebraError> {
        Self::with_limits(vars, order, Limits::default())
    }

    pub fn with_limits<S: AsRef<str>>(
        vars: &[S],
        order: MonomialOrder,
        limits: Limits,
    ) -> Result<Arc<Ring>, AlgebraError> {
        if vars.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(vars.len()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::UnknownVariable(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { vars, order, limits }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars: self.vars.clone(), order, limits: self.limits })
    }

    /// Same variables and order, different limits.
    pub fn with_caps(&self, limits: Limits) -> Arc<Ring> {
        Arc::new(Ring { vars: self.vars.clone(), order: self.order, limits })
    }

    /// New ring with `extra` variables placed in front of the existing ones.
    pub fn prepend(&self, extra: &[&str], order: MonomialOrder) -> Result<Arc<Ring>, AlgebraError> {
        let mut vars: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        for v in &self.vars {
            let mut name = v.clone();
            while vars.contains(&name) {
                name.push('\'');
            }
            vars.push(name);
        }
        Self::with_limits(&vars, order, self.limits)
    }

    /// New ring with `extra` variables appended.
    pub fn append(&self, extra: &[&str]) -> Result<Arc<Ring>, AlgebraError> {
        let mut vars = self.vars.clone();
        for e in extra {
            let mut name = e.to_string();
            while vars.contains(&name) {
                name.push('\'');
            }
            vars.push(name);
        }
        Self::with_limits(&vars, self.order, self.limits)
    }

    /// Ring without the variable at `index`.
    pub fn remove(&self, index: usize) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        vars.remove(index);
        Arc::new(Ring { vars, order: self.order, limits: self.limits })
    }
}
