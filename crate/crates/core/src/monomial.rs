//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, AlgebraError> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(exps.len()));
        }
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
            m.deg += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` set iff the variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = other.exps[i] - self.exps[i];
        }
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].min(other.exps[i]);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent vector with one entry changed.
    pub fn with_exp(&self, i: usize, e: u32) -> Result<Monomial, AlgebraError> {
        let mut m = *self;
        let e16 = u16::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = e16;
        Ok(m)
    }

    /// Reindex variables: variable `i` of `self` becomes variable `map[i]`.
    pub fn permuted(&self, map: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &j) in map.iter().enumerate() {
            m.exps[j] = self.exps[i];
        }
        m.deg = self.deg;
        m
    }
}

/// Monomial orders supported by the Groebner engine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    DegRevLex,
    /// Pure lexicographic.
    Lex,
    /// Product of two graded reverse lexicographic orders; the first `block`
    /// variables are eliminated.
    Elimination { block: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => grevlex(a, b, 0, nvars, a.deg, b.deg),
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination { block } => {
                let da: u32 = a.exps[..block].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..block].iter().map(|&e| e as u32).sum();
                match grevlex(a, b, 0, block, da, db) {
                    Ordering::Equal => grevlex(a, b, block, nvars, a.deg - da, b.deg - db),
                    o => o,
                }
            }
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > x*y > y^2 > x*z in (x, y, z)
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block_variables() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1]), 3), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }
}
