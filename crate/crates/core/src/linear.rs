//! Linear forms through the origin (hyperplanes `ker p`).

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::AlgebraError;
use crate::field::{Field, Q};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::random::nonzero_int;
use crate::ring::Ring;

/// A nonzero linear form without constant term; one coefficient per ring
/// variable.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearForm {
    ring: Arc<Ring>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly::<Q>().expect("rational coefficients"))
    }
}

impl LinearForm {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<BigRational>) -> Result<Self, AlgebraError> {
        if coeffs.len() != ring.nvars() {
            return Err(AlgebraError::NotLinear(format!(
                "{} coefficients for {} variables",
                coeffs.len(),
                ring.nvars()
            )));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(AlgebraError::NotLinear("zero form".into()));
        }
        Ok(LinearForm { ring: ring.clone(), coeffs })
    }

    pub fn from_ints(ring: &Arc<Ring>, coeffs: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(ring, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Accepts exactly the homogeneous polynomials of degree one.
    pub fn from_poly(f: &Poly<Q>) -> Result<Self, AlgebraError> {
        if f.is_zero() || f.degree() != 1 || !f.is_homogeneous() {
            return Err(AlgebraError::NotLinear(f.to_string()));
        }
        let ring = f.ring();
        let mut coeffs = vec![BigRational::zero(); ring.nvars()];
        for (m, c) in f.terms() {
            let i = (0..ring.nvars()).find(|&i| m.exp(i) == 1).expect("degree one");
            coeffs[i] = c.0.clone();
        }
        Self::new(ring, coeffs)
    }

    pub fn parse(ring: &Arc<Ring>, src: &str) -> Result<Self, AlgebraError> {
        Self::from_poly(&parse_poly(ring, src)?)
    }

    /// Random form with nonzero integer coefficients in `[-bound, bound]`.
    pub fn random<R: Rng>(ring: &Arc<Ring>, rng: &mut R, bound: i64) -> Self {
        let coeffs: Vec<i64> = (0..ring.nvars()).map(|_| nonzero_int(rng, bound)).collect();
        Self::from_ints(ring, &coeffs).expect("nonzero coefficients")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_poly<K: Field>(&self) -> Result<Poly<K>, AlgebraError> {
        self.to_poly_in(&self.ring)
    }

    /// The form in another ring with the same variables (e.g. another order).
    pub fn to_poly_in<K: Field>(&self, ring: &Arc<Ring>) -> Result<Poly<K>, AlgebraError> {
        let mut acc = Poly::zero(ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ring.index_of(self.ring.var_name(i))?;
                acc = acc.add(&Poly::var(ring, idx).scale(&K::from_rational(c)?));
            }
        }
        Ok(acc)
    }

    /// Coefficients as field elements, in ring order.
    pub fn coeffs_in<K: Field>(&self) -> Result<Vec<K>, AlgebraError> {
        self.coeffs.iter().map(K::from_rational).collect()
    }

    pub fn scaled(&self, c: &BigRational) -> Result<Self, AlgebraError> {
        Self::new(&self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Index of the last variable with a nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form")
    }

    /// The solved form `x_pivot = -(1/a_pivot) * sum_{i != pivot} a_i x_i`,
    /// as coefficients on the remaining variables (in order).
    pub fn solved_for_pivot(&self) -> (usize, Vec<BigRational>) {
        let j = self.pivot();
        let a = &self.coeffs[j];
        let minus_inv = -(BigRational::one() / a);
        let rest = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, c)| c * &minus_inv)
            .collect();
        (j, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::random::rng;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "z", "w", "v"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn validates_degree_and_constant_term() {
        let r = ring();
        assert!(LinearForm::parse(&r, "w - z").is_ok());
        assert!(matches!(LinearForm::parse(&r, "w - 1"), Err(AlgebraError::NotLinear(_))));
        assert!(matches!(LinearForm::parse(&r, "x^2"), Err(AlgebraError::NotLinear(_))));
        assert!(matches!(LinearForm::parse(&r, "0"), Err(AlgebraError::NotLinear(_))));
        assert!(LinearForm::from_ints(&r, &[0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn pivot_is_last_nonzero_variable() {
        let r = ring();
        let p = LinearForm::parse(&r, "w - z").unwrap();
        let (j, rest) = p.solved_for_pivot();
        assert_eq!(j, 3);
        // w = z
        let one = BigRational::one();
        assert_eq!(rest[2], one);
        assert!(rest.iter().enumerate().all(|(i, c)| i == 2 || c.is_zero()));
        assert_eq!(LinearForm::parse(&r, "x - v").unwrap().pivot(), 4);
    }

    #[test]
    fn random_forms_are_reproducible() {
        let r = ring();
        let a = LinearForm::random(&r, &mut rng(3, 0), 7);
        let b = LinearForm::random(&r, &mut rng(3, 0), 7);
        assert_eq!(a, b);
        assert!(a.coeffs().iter().all(|c| !c.is_zero()));
        assert_eq!(LinearForm::parse(&r, &a.to_string()).unwrap(), a);
    }
}
