//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::Ring;

/// A polynomial over `K`. Terms are kept sorted in decreasing monomial order
/// and never carry a zero coefficient.
#[derive(Clone)]
pub struct Poly<K: Field> {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl<K: Field> Eq for Poly<K> {}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<K: Field> Poly<K> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: K) -> Self {
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Poly { ring: ring.clone(), terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, K::one())
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, K::from_i64(c))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Poly { ring: ring.clone(), terms: vec![(Monomial::var(i), K::one())] }
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: K) -> Self {
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Poly { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, K)>) -> Self {
        let order = ring.order();
        let n = ring.nvars();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0, n));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { ring: ring.clone(), terms: out }
    }

    /// Assumes `terms` is already sorted, combined and free of zeros.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_term(&self) -> K {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => K::zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree() as i64).max().unwrap_or(-1)
    }

    /// Lowest total degree among the terms; `-1` for zero.
    pub fn low_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree() as i64).min().unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.low_degree()
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// The lowest-degree homogeneous part (the tangent-cone form of a
    /// hypersurface through the origin).
    pub fn lowest_part(&self) -> Self {
        match self.low_degree() {
            -1 => self.clone(),
            d => self.homogeneous_part(d as u32),
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.ring.order().cmp(a, b, self.ring.nvars())
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, c: &K, m: &Monomial, other: &Self) -> Self {
        self.check_ring(other);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let terms = merge_scaled(&self.terms, c, m, &other.terms, |a, b| self.cmp_mono(a, b));
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&K::one(), &Monomial::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&K::one().neg(), &Monomial::one(), other)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &K, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let nm = m.with_exp(var, e - 1).expect("exponent decreases");
                terms.push((nm, c.mul(&K::from_i64(e as i64))));
            }
        }
        // lowering one exponent can reorder terms under non-graded orders
        Self::from_terms(&self.ring, terms)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Evaluate the variables at polynomials of another ring:
    /// variable `i` is replaced by `images[i]`.
    pub fn compose(&self, target: &Arc<Ring>, images: &[Poly<K>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let n = self.ring.nvars();
        // cache powers per variable
        let mut powers: Vec<Vec<Poly<K>>> = (0..n).map(|i| vec![Poly::one(target), images[i].clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Same polynomial viewed in a ring with the same variables but possibly
    /// another order or limits.
    pub fn reorder(&self, ring: &Arc<Ring>) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Self::from_terms(ring, self.terms.clone())
    }

    /// Move into `ring`, sending variable `i` to variable `map[i]`.
    pub fn reindex(&self, ring: &Arc<Ring>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(map), c.clone())).collect();
        Self::from_terms(ring, terms)
    }

    /// Drop the first `offset` variables; `None` if one of them occurs.
    pub fn restrict(&self, ring: &Arc<Ring>, offset: usize) -> Option<Self> {
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if (0..offset).any(|i| m.exp(i) > 0) {
                return None;
            }
            let exps: Vec<u32> = (0..n).map(|i| m.exp(i + offset)).collect();
            terms.push((Monomial::from_exponents(&exps).ok()?, c.clone()));
        }
        Some(Self::from_terms(ring, terms))
    }

    pub fn map_coeffs<L: Field>(&self, ring: &Arc<Ring>, f: impl Fn(&K) -> L) -> Poly<L> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        Poly::from_terms(ring, terms)
    }

    pub fn try_map_coeffs<L: Field>(
        &self,
        ring: &Arc<Ring>,
        f: impl Fn(&K) -> Result<L, AlgebraError>,
    ) -> Result<Poly<L>, AlgebraError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, f(c)?));
        }
        Ok(Poly::from_terms(ring, terms))
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mask = self.terms.iter().fold(0u32, |acc, (m, _)| acc | m.support_mask());
        (0..self.ring.nvars()).filter(|i| mask & (1 << i) != 0).collect()
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            if !m.divides(t) {
                return None;
            }
            terms.push((m.quotient_of(t), c.clone()));
        }
        Some(Self::from_terms(&self.ring, terms))
    }
}

/// Merge `a + c * m * b` where both inputs are sorted decreasingly.
pub(crate) fn merge_scaled<K: Field>(
    a: &[(Monomial, K)],
    c: &K,
    m: &Monomial,
    b: &[(Monomial, K)],
    cmp: impl Fn(&Monomial, &Monomial) -> Ordering,
) -> Vec<(Monomial, K)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<Monomial> = None;
    while i < a.len() || j < b.len() {
        let bm = if j < b.len() {
            *pending.get_or_insert_with(|| b[j].0.mul(m))
        } else {
            Monomial::one()
        };
        let ord = if i >= a.len() {
            Ordering::Less
        } else if j >= b.len() {
            Ordering::Greater
        } else {
            cmp(&a[i].0, &bm)
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, b[j].1.mul(c)));
                j += 1;
                pending = None;
            }
            Ordering::Equal => {
                let s = a[i].1.add(&b[j].1.mul(c));
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
                pending = None;
            }
        }
    }
    out
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.ring.nvars();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for i in 0..n {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<K: Field> std::ops::Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        Poly::add(self, rhs)
    }
}

impl<K: Field> std::ops::Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        Poly::sub(self, rhs)
    }
}

impl<K: Field> std::ops::Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        Poly::mul(self, rhs)
    }
}

impl<K: Field> std::ops::Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::neg(self)
    }
}
