//! Ideals with write-once cached Groebner bases, and the ideal-theoretic
//! primitives built on them: dimension, quotient counting, intersection,
//! ideal quotients, saturation and local multiplicities at the origin.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::AlgebraError;
use crate::field::Field;
use crate::groebner::{divide_exact, groebner_basis, normal_form};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// Upper bound on enumerated standard monomials.
const MAX_STANDARD_MONOMIALS: usize = 5_000_000;

#[derive(Clone)]
pub struct Ideal<K: Field> {
    ring: Arc<Ring>,
    gens: Vec<Poly<K>>,
    gb: OnceLock<Vec<Poly<K>>>,
    dim: OnceLock<i64>,
}

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl<K: Field> fmt::Display for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl<K: Field> Ideal<K> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly<K>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new(), dim: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![Poly::one(ring)])
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, Vec::new())
    }

    /// The maximal ideal of the origin.
    pub fn origin(ring: &Arc<Ring>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect())
    }

    fn from_basis(ring: &Arc<Ring>, basis: Vec<Poly<K>>) -> Self {
        let ideal = Self::new(ring, basis.clone());
        let _ = ideal.gb.set(basis);
        ideal
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<K>] {
        &self.gens
    }

    /// Reduced Groebner basis in the ring's order (computed once).
    pub fn groebner_basis(&self) -> Result<&[Poly<K>], AlgebraError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.ring, &self.gens)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// The same ideal in another monomial order, with its basis computed.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ideal<K>, AlgebraError> {
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.reorder(&ring)).collect();
        let ideal = Ideal::new(&ring, gens);
        ideal.groebner_basis()?;
        Ok(ideal)
    }

    /// Ideal with the same generators in a ring with the same variables.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Ideal<K> {
        Ideal::new(ring, self.gens.iter().map(|g| g.reorder(ring)).collect())
    }

    pub fn is_unit(&self) -> Result<bool, AlgebraError> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn normal_form(&self, f: &Poly<K>) -> Result<Poly<K>, AlgebraError> {
        Ok(normal_form(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Poly<K>) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool, AlgebraError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals (comparison of reduced bases).
    pub fn same_ideal(&self, other: &Ideal<K>) -> Result<bool, AlgebraError> {
        Ok(self.groebner_basis()? == other.in_ring(&self.ring).groebner_basis()?)
    }

    fn leading_masks(&self) -> Result<Vec<u32>, AlgebraError> {
        Ok(self.groebner_basis()?.iter().map(|g| g.leading_monomial().unwrap().support_mask()).collect())
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    ///
    /// Largest set of variables containing the support of no leading monomial.
    pub fn dimension(&self) -> Result<i64, AlgebraError> {
        if let Some(&d) = self.dim.get() {
            return Ok(d);
        }
        let d = if self.is_unit()? {
            -1
        } else {
            let masks = self.leading_masks()?;
            let n = self.ring.nvars();
            let mut best = 0u32;
            for s in 0u32..(1u32 << n) {
                let size = s.count_ones();
                if size <= best {
                    continue;
                }
                if masks.iter().all(|&m| m & !s != 0) {
                    best = size;
                }
            }
            best as i64
        };
        let _ = self.dim.set(d);
        Ok(d)
    }

    /// Vector-space dimension of the quotient ring (number of standard
    /// monomials). Equals the number of solutions counted with multiplicity.
    pub fn quotient_count(&self) -> Result<usize, AlgebraError> {
        let d = self.dimension()?;
        if d > 0 {
            return Err(AlgebraError::NotZeroDimensional(d));
        }
        if d < 0 {
            return Ok(0);
        }
        let lms: Vec<Monomial> = self.groebner_basis()?.iter().map(|g| *g.leading_monomial().unwrap()).collect();
        let n = self.ring.nvars();
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut stack = vec![Monomial::one()];
        seen.insert(Monomial::one());
        while let Some(m) = stack.pop() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(i));
                if standard(&next) && seen.insert(next) {
                    if seen.len() > MAX_STANDARD_MONOMIALS {
                        return Err(AlgebraError::ResourceLimit("too many standard monomials".into()));
                    }
                    stack.push(next);
                }
            }
        }
        Ok(seen.len())
    }

    pub fn sum(&self, other: &Ideal<K>) -> Ideal<K> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| g.reorder(&self.ring)));
        Ideal::new(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[Poly<K>]) -> Ideal<K> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<K>) -> Ideal<K> {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(&g.reorder(&self.ring)));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Eliminate the variables `vars` (indices); the result lives in the ring
    /// obtained by deleting them.
    pub fn eliminate(&self, vars: &[usize]) -> Result<(Arc<Ring>, Ideal<K>), AlgebraError> {
        let n = self.ring.nvars();
        let k = vars.len();
        // move eliminated variables to the front
        let mut map = vec![0usize; n];
        let mut front = 0;
        let mut back = k;
        for i in 0..n {
            if vars.contains(&i) {
                map[i] = front;
                front += 1;
            } else {
                map[i] = back;
                back += 1;
            }
        }
        let mut names: Vec<String> = vec![String::new(); n];
        for i in 0..n {
            names[map[i]] = self.ring.var_name(i).to_string();
        }
        let elim_ring = Ring::with_limits(&names, MonomialOrder::Elimination { block: k }, self.ring.limits())?;
        let gens: Vec<Poly<K>> = self.gens.iter().map(|g| g.reindex(&elim_ring, &map)).collect();
        let basis = groebner_basis(&elim_ring, &gens)?;
        let kept_names: Vec<String> = names[k..].to_vec();
        let sub = Ring::with_limits(&kept_names, self.ring.order(), self.ring.limits())?;
        let out: Vec<Poly<K>> = basis.iter().filter_map(|g| g.restrict(&sub, k)).collect();
        Ok((sub.clone(), Ideal::new(&sub, out)))
    }

    /// Eliminate an auxiliary first variable from an ideal of `aux` and map
    /// back into `self.ring`.
    fn eliminate_aux(&self, aux: &Arc<Ring>, gens: Vec<Poly<K>>) -> Result<Ideal<K>, AlgebraError> {
        self.eliminate_block(aux, gens, 1)
    }

    /// Eliminate the first `k` variables of `aux`.
    fn eliminate_block(&self, aux: &Arc<Ring>, gens: Vec<Poly<K>>, k: usize) -> Result<Ideal<K>, AlgebraError> {
        let basis = groebner_basis(aux, &gens)?;
        let out: Vec<Poly<K>> = basis.iter().filter_map(|g| g.restrict(&self.ring, k)).collect();
        if out.iter().any(|g| g.is_constant()) {
            return Ok(Ideal::unit(&self.ring));
        }
        // elimination bases restrict to Groebner bases of the elimination
        // ideal in the induced (graded reverse lexicographic) order
        if self.ring.order() == MonomialOrder::DegRevLex {
            let out = out.into_iter().map(|g| g.reorder(&self.ring).monic()).collect();
            return Ok(Ideal::from_basis_unchecked(&self.ring, out));
        }
        Ok(Ideal::new(&self.ring, out))
    }

    fn from_basis_unchecked(ring: &Arc<Ring>, basis: Vec<Poly<K>>) -> Self {
        // the restricted elimination basis is a Groebner basis but may not be
        // reduced; reduce it once so cached bases stay canonical
        Self::from_basis(ring, crate::groebner::minimal_reduced(ring, basis))
    }

    fn aux_ring(&self) -> Result<Arc<Ring>, AlgebraError> {
        self.ring.prepend(&["_aux"], MonomialOrder::Elimination { block: 1 })
    }

    fn lift(&self, aux: &Arc<Ring>, f: &Poly<K>) -> Poly<K> {
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        f.reindex(aux, &map)
    }

    pub fn intersection(&self, other: &Ideal<K>) -> Result<Ideal<K>, AlgebraError> {
        if self.is_unit()? {
            return Ok(other.in_ring(&self.ring));
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let aux = self.aux_ring()?;
        let t = Poly::var(&aux, 0);
        let one_minus_t = Poly::one(&aux).sub(&t);
        let mut gens = Vec::new();
        for f in self.groebner_basis()? {
            gens.push(t.mul(&self.lift(&aux, f)));
        }
        for g in other.in_ring(&self.ring).groebner_basis()? {
            gens.push(one_minus_t.mul(&self.lift(&aux, g)));
        }
        self.eliminate_aux(&aux, gens)
    }

    /// `I : g`.
    pub fn quotient_by_poly(&self, g: &Poly<K>) -> Result<Ideal<K>, AlgebraError> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let g = g.reorder(&self.ring);
        let principal = Ideal::new(&self.ring, vec![g.clone()]);
        let cap = self.intersection(&principal)?;
        let mut gens = Vec::with_capacity(cap.gens.len());
        for h in cap.groebner_basis()? {
            gens.push(divide_exact(h, &g).expect("intersection with <g> is divisible by g"));
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal<K>) -> Result<Ideal<K>, AlgebraError> {
        let other = other.in_ring(&self.ring);
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc: Option<Ideal<K>> = None;
        for g in other.groebner_basis()? {
            let q = self.quotient_by_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// `I : g^inf` via an auxiliary variable `u` and the relation `1 - u*g`.
    pub fn saturate_poly(&self, g: &Poly<K>) -> Result<Ideal<K>, AlgebraError> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_constant() || self.is_unit()? {
            return Ok(self.clone());
        }
        let aux = self.aux_ring()?;
        let u = Poly::var(&aux, 0);
        let mut gens: Vec<Poly<K>> = self.groebner_basis()?.iter().map(|f| self.lift(&aux, f)).collect();
        gens.push(Poly::one(&aux).sub(&u.mul(&self.lift(&aux, &g.reorder(&self.ring)))));
        self.eliminate_aux(&aux, gens)
    }

    /// `I : J^inf` as the intersection of `I : g^inf` over a Groebner basis
    /// of `J`.
    pub fn saturate_by_generators(&self, other: &Ideal<K>) -> Result<Ideal<K>, AlgebraError> {
        let other = other.in_ring(&self.ring);
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        if other.is_unit()? || self.is_unit()? {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal<K>> = None;
        for g in other.groebner_basis()? {
            let s = self.saturate_poly(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersection(&s)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// `I : J^inf`, the ideal of the closure of `V(I) \ V(J)` (up to embedded
    /// structure), with one elimination: `(I[z] : h^inf) ∩ k[x]` for
    /// `h = g_1 + z g_2 + ... + z^(k-1) g_k` over a Groebner basis of `J`.
    /// `h` lies in an extended prime `P[z]` exactly when `J ⊆ P`, so the
    /// contraction removes the same primary components as `I : J^inf`.
    pub fn saturate(&self, other: &Ideal<K>) -> Result<Ideal<K>, AlgebraError> {
        let other = other.in_ring(&self.ring);
        if other.is_zero_ideal() {
            return Ok(Ideal::unit(&self.ring));
        }
        if other.is_unit()? || self.is_unit()? {
            return Ok(self.clone());
        }
        let js = other.groebner_basis()?.to_vec();
        if js.len() == 1 {
            return self.saturate_poly(&js[0]);
        }
        let aux = self.ring.prepend(&["_aux", "_z"], MonomialOrder::Elimination { block: 2 })?;
        let map: Vec<usize> = (2..self.ring.nvars() + 2).collect();
        let u = Poly::var(&aux, 0);
        let z = Poly::var(&aux, 1);
        let mut h = Poly::zero(&aux);
        let mut zk = Poly::one(&aux);
        for g in &js {
            h = h.add(&zk.mul(&g.reindex(&aux, &map)));
            zk = zk.mul(&z);
        }
        let mut gens: Vec<Poly<K>> = self.groebner_basis()?.iter().map(|f| f.reindex(&aux, &map)).collect();
        gens.push(Poly::one(&aux).sub(&u.mul(&h)));
        self.eliminate_block(&aux, gens, 2)
    }

    /// `I : J^inf` by repeated ideal quotients until the ideal stabilizes.
    pub fn saturate_iterated(&self, other: &Ideal<K>) -> Result<Ideal<K>, AlgebraError> {
        let mut current = self.clone();
        loop {
            let next = current.quotient(other)?;
            if next.same_ideal(&current)? {
                return Ok(next);
            }
            current = next;
        }
    }

    /// Whether the origin is a solution.
    pub fn vanishes_at_origin(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    /// Multiplicity of the origin-primary component; zero when the origin
    /// is not a solution.
    ///
    /// Uses `len(R/(I + m^k))`, which is non-decreasing in `k` and constant
    /// from the first `k` where two consecutive values agree (Nakayama); the
    /// stable value is the local length. For globally zero-dimensional ideals
    /// it agrees with `quotient_count(I) - quotient_count(I : m^inf)`.
    /// Positive-dimensional ideals are accepted when their germ at the origin
    /// is zero-dimensional.
    pub fn local_count_at_origin(&self) -> Result<usize, AlgebraError> {
        if !self.vanishes_at_origin() {
            return Ok(0);
        }
        let d = self.dimension()?;
        let total = if d <= 0 {
            Some(self.quotient_count()?)
        } else if self.germ_in_origin()? {
            None
        } else {
            return Err(AlgebraError::NotZeroDimensional(d));
        };
        if total == Some(0) {
            return Ok(0);
        }
        let basis = self.groebner_basis()?.to_vec();
        let mut prev = self.truncated_count(&basis, 1)?;
        let mut k = 1;
        loop {
            let next = self.truncated_count(&basis, k + 1)?;
            if next == prev {
                return Ok(prev);
            }
            if let Some(total) = total {
                if next >= total {
                    return Ok(total.min(next));
                }
            }
            prev = next;
            k += 1;
        }
    }

    /// Whether the germ of the zero set at the origin is contained in `{0}`
    /// (far-away solutions are ignored). The germ has positive dimension iff
    /// the origin lies in `V(I : x_i^inf)` for some variable `x_i`.
    pub fn germ_in_origin(&self) -> Result<bool, AlgebraError> {
        if !self.vanishes_at_origin() || self.zero_set_in_origin()? {
            return Ok(true);
        }
        for i in 0..self.ring.nvars() {
            if self.saturate_poly(&Poly::var(&self.ring, i))?.vanishes_at_origin() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn truncated_count(&self, basis: &[Poly<K>], k: u32) -> Result<usize, AlgebraError> {
        let mut gens = basis.to_vec();
        gens.extend(monomials_of_degree(&self.ring, k).into_iter());
        Ideal::new(&self.ring, gens).quotient_count()
    }

    /// Whether the zero set is contained in `{0}` (the empty set included):
    /// dimension at most zero and every variable nilpotent modulo the ideal.
    pub fn zero_set_in_origin(&self) -> Result<bool, AlgebraError> {
        let d = self.dimension()?;
        if d < 0 {
            return Ok(true);
        }
        if d > 0 {
            return Ok(false);
        }
        let q = self.quotient_count()?;
        let basis = self.groebner_basis()?;
        for i in 0..self.ring.nvars() {
            let x = Poly::var(&self.ring, i);
            let mut r = Poly::one(&self.ring);
            for _ in 0..q {
                r = normal_form(&r.mul(&x), basis);
                if r.is_zero() {
                    break;
                }
            }
            if !r.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All monomials of total degree `k`.
pub fn monomials_of_degree<K: Field>(ring: &Arc<Ring>, k: u32) -> Vec<Poly<K>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec<K: Field>(ring: &Arc<Ring>, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Poly<K>>) {
        let n = exps.len();
        if i == n - 1 {
            exps[i] = left;
            out.push(Poly::term(ring, Monomial::from_exponents(exps).unwrap(), K::one()));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(ring, i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if k == 0 {
            out.push(Poly::one(ring));
        }
        return out;
    }
    rec(ring, 0, k, &mut exps, &mut out);
    out
}

/// Greatest common divisor (monic) via `lcm = generator of <f> ∩ <g>`.
pub fn poly_gcd<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>, AlgebraError> {
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Poly::one(f.ring()));
    }
    let ring = f.ring();
    let cap = Ideal::new(ring, vec![f.clone()]).intersection(&Ideal::new(ring, vec![g.clone()]))?;
    let basis = cap.groebner_basis()?;
    debug_assert_eq!(basis.len(), 1, "intersection of principal ideals is principal");
    let lcm = &basis[0];
    Ok(divide_exact(&f.mul(g), lcm).expect("lcm divides the product").monic())
}

/// Squarefreeness test: `gcd(f, df/dx_1, ..., df/dx_n)` is constant.
pub fn is_reduced_principal<K: Field>(f: &Poly<K>) -> Result<bool, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut g = f.clone();
    for i in 0..f.ring().nvars() {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, &f.derivative(i))?;
    }
    Ok(g.is_constant())
}

/// Jacobian ideal of `f`.
pub fn jacobian_ideal<K: Field>(f: &Poly<K>) -> Ideal<K> {
    let ring = f.ring();
    Ideal::new(ring, (0..ring.nvars()).map(|i| f.derivative(i)).collect())
}

/// Milnor number of a hypersurface with isolated critical points: the
/// colength of the Jacobian ideal (all critical points counted).
pub fn milnor_number_isolated_hypersurface<K: Field>(f: &Poly<K>) -> Result<usize, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let jac = jacobian_ideal(f);
    let d = jac.dimension()?;
    if d > 0 {
        return Err(AlgebraError::NotIsolated(d));
    }
    jac.quotient_count()
}

/// Milnor number at the origin only.
pub fn local_milnor_number<K: Field>(f: &Poly<K>) -> Result<usize, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let jac = jacobian_ideal(f);
    let d = jac.dimension()?;
    if d > 0 {
        return Err(AlgebraError::NotIsolated(d));
    }
    jac.local_count_at_origin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::parse::parse_poly;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal<Q> {
        let r = Ring::new(vars, MonomialOrder::DegRevLex).unwrap();
        Ideal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect())
    }

    fn basis_strings(i: &Ideal<Q>) -> Vec<String> {
        i.groebner_basis().unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(ideal(&["x", "y", "z"], &["x"]).dimension().unwrap(), 2);
        assert_eq!(ideal(&["x", "y"], &["1"]).dimension().unwrap(), -1);
        assert_eq!(ideal(&["x", "y"], &[]).dimension().unwrap(), 2);
        assert_eq!(ideal(&["x", "y", "z"], &["x*y", "x*z"]).dimension().unwrap(), 2);
    }

    #[test]
    fn quotient_count_examples() {
        assert_eq!(ideal(&["x", "y"], &["x^2", "y"]).quotient_count().unwrap(), 2);
        assert_eq!(ideal(&["x", "y"], &["x^2 + y^2 - 1", "x - y"]).quotient_count().unwrap(), 2);
        assert_eq!(ideal(&["x"], &["x^2*(x - 1)"]).quotient_count().unwrap(), 3);
        assert!(matches!(
            ideal(&["x", "y"], &["x"]).quotient_count(),
            Err(AlgebraError::NotZeroDimensional(1))
        ));
    }

    #[test]
    fn saturation_examples() {
        let s = ideal(&["x", "y"], &["x*y"]).saturate(&ideal(&["x", "y"], &["x"])).unwrap();
        assert_eq!(basis_strings(&s), vec!["y"]);
        let s = ideal(&["x"], &["x^2*(x - 1)"]).saturate(&ideal(&["x"], &["x"])).unwrap();
        assert_eq!(basis_strings(&s), vec!["x - 1"]);
        let i = ideal(&["x", "y"], &["x^2", "y - x"]);
        let s = i.saturate(&ideal(&["x", "y"], &["1"])).unwrap();
        assert!(s.same_ideal(&i).unwrap());
    }

    #[test]
    fn iterated_quotient_agrees_with_saturation() {
        let i = ideal(&["x", "y"], &["x^3*y", "x*y^2*(y - 1)"]);
        let j = ideal(&["x", "y"], &["x", "y"]);
        let a = i.saturate(&j).unwrap();
        let b = i.saturate_iterated(&j).unwrap();
        assert!(a.same_ideal(&b).unwrap());
        let c = i.saturate_by_generators(&j).unwrap();
        assert!(a.same_ideal(&c).unwrap());
    }

    #[test]
    fn combined_saturation_keeps_components_off_the_smaller_locus() {
        // components: the line x = 0, the point (1, 1), an embedded point at 0
        let i = ideal(&["x", "y"], &["x^2*(x - 1)", "x*y*(y - 1)", "x^2*y"]);
        for j in [&["x", "y"][..], &["x"], &["y", "x*y - x"], &["x - 1", "y - 1"]] {
            let j = ideal(&["x", "y"], j);
            let a = i.saturate(&j).unwrap();
            assert!(a.same_ideal(&i.saturate_by_generators(&j).unwrap()).unwrap(), "{j}");
            assert!(a.same_ideal(&i.saturate_iterated(&j).unwrap()).unwrap(), "{j}");
        }
    }

    #[test]
    fn local_count_examples() {
        assert_eq!(ideal(&["x"], &["x^2*(x - 1)"]).local_count_at_origin().unwrap(), 2);
        assert_eq!(ideal(&["x"], &["x - 1"]).local_count_at_origin().unwrap(), 0);
        assert_eq!(ideal(&["x", "y"], &["x^2", "x*y", "y^2"]).local_count_at_origin().unwrap(), 3);
        // Milnor algebra of x^3 + y^3 at the origin
        assert_eq!(ideal(&["x", "y"], &["x^2", "y^2"]).local_count_at_origin().unwrap(), 4);
    }

    #[test]
    fn zero_set_in_origin() {
        assert!(ideal(&["x", "y"], &["x^2", "y^3"]).zero_set_in_origin().unwrap());
        assert!(ideal(&["x", "y"], &["1"]).zero_set_in_origin().unwrap());
        assert!(!ideal(&["x", "y"], &["x^2", "y*(y - 1)"]).zero_set_in_origin().unwrap());
        assert!(!ideal(&["x", "y"], &["x"]).zero_set_in_origin().unwrap());
    }

    #[test]
    fn germ_tests_ignore_far_away_solutions() {
        assert!(!ideal(&["x", "y"], &["x*(y - 1)"]).germ_in_origin().unwrap());
        let far_line = ideal(&["x", "y"], &["x*(x - 1)", "y*(x - 1)"]);
        assert!(!far_line.zero_set_in_origin().unwrap());
        assert!(far_line.germ_in_origin().unwrap());
        assert_eq!(far_line.local_count_at_origin().unwrap(), 1);
        assert!(ideal(&["x", "y"], &["x", "y*(y - 1)"]).germ_in_origin().unwrap());
        assert!(ideal(&["x", "y"], &["x - 1"]).germ_in_origin().unwrap());
        assert!(matches!(
            ideal(&["x", "y"], &["x*y"]).local_count_at_origin(),
            Err(AlgebraError::NotZeroDimensional(1))
        ));
    }

    #[test]
    fn intersection_and_quotient() {
        let a = ideal(&["x", "y"], &["x"]);
        let b = ideal(&["x", "y"], &["y"]);
        assert_eq!(basis_strings(&a.intersection(&b).unwrap()), vec!["x*y"]);
        let q = ideal(&["x", "y"], &["x*y", "x^2"]).quotient_by_poly(&parse_poly(a.ring(), "x").unwrap()).unwrap();
        assert_eq!(basis_strings(&q), vec!["x", "y"]);
    }

    #[test]
    fn gcd_and_reducedness() {
        let r = Ring::new(&["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert_eq!(poly_gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")).unwrap(), p("x + y"));
        assert!(is_reduced_principal(&p("x^2 + y^3")).unwrap());
        assert!(!is_reduced_principal(&p("x^2*(27*x^2 + 4*y^3)")).unwrap());
        assert!(is_reduced_principal(&p("(x - y)*(x + y)")).unwrap());
        assert!(is_reduced_principal(&p("7")).unwrap());
        assert_eq!(is_reduced_principal(&p("0")), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn milnor_numbers() {
        let r = Ring::new(&["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert_eq!(milnor_number_isolated_hypersurface(&p("x^2 + y^2")).unwrap(), 1);
        assert_eq!(milnor_number_isolated_hypersurface(&p("x^2 + y^3")).unwrap(), 2);
        assert_eq!(milnor_number_isolated_hypersurface(&p("x^3 + y^3")).unwrap(), 4);
        assert!(matches!(milnor_number_isolated_hypersurface(&p("x^2")), Err(AlgebraError::NotIsolated(1))));
        // x^3 - 3x has two Morse points away from 0
        assert_eq!(local_milnor_number(&p("x^3 - 3*x + y^2")).unwrap(), 0);
    }
}
