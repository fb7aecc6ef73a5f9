//! Substitution of variables by polynomials, by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::ring::Ring;

/// Assignment `variable name -> polynomial in the target ring`. Source
/// variables without an assignment map to the target variable of the same
/// name.
#[derive(Clone, Debug)]
pub struct Substitution<K: Field> {
    target: Arc<Ring>,
    map: BTreeMap<String, Poly<K>>,
}

impl<K: Field> Substitution<K> {
    pub fn new(target: &Arc<Ring>) -> Self {
        Substitution { target: target.clone(), map: BTreeMap::new() }
    }

    pub fn assign(mut self, var: &str, image: Poly<K>) -> Result<Self, AlgebraError> {
        if !image.is_zero() && **image.ring() != *self.target {
            return Err(AlgebraError::RingMismatch);
        }
        self.map.insert(var.to_string(), image);
        Ok(self)
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    /// Images of the variables of `source`, in order.
    pub fn images(&self, source: &Ring) -> Result<Vec<Poly<K>>, AlgebraError> {
        for name in self.map.keys() {
            source.index_of(name)?;
        }
        source
            .vars()
            .iter()
            .map(|v| match self.map.get(v) {
                Some(p) => Ok(if p.is_zero() { Poly::zero(&self.target) } else { p.clone() }),
                None => self.target.index_of(v).map(|j| Poly::var(&self.target, j)),
            })
            .collect()
    }
}

/// Objects that variables can be substituted into.
pub trait Substitute<K: Field>: Sized {
    fn substitute(&self, s: &Substitution<K>) -> Result<Self, AlgebraError>;
}

impl<K: Field> Substitute<K> for Poly<K> {
    fn substitute(&self, s: &Substitution<K>) -> Result<Self, AlgebraError> {
        let images = s.images(self.ring())?;
        Ok(self.compose(s.target(), &images))
    }
}

impl<K: Field> Substitute<K> for Ideal<K> {
    fn substitute(&self, s: &Substitution<K>) -> Result<Self, AlgebraError> {
        let images = s.images(self.ring())?;
        let gens = self.gens().iter().map(|g| g.compose(s.target(), &images)).collect();
        Ok(Ideal::new(s.target(), gens))
    }
}

impl<K: Field> Substitute<K> for PolyMatrix<K> {
    fn substitute(&self, s: &Substitution<K>) -> Result<Self, AlgebraError> {
        let images = s.images(self.ring())?;
        Ok(self.compose(s.target(), &images))
    }
}
