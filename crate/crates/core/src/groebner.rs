//! Buchberger's algorithm with the Gebauer-Moeller pair criteria and the
//! sugar selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{merge_scaled, Poly};
use crate::ring::Ring;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    coprime: bool,
}

struct Engine<'r, K: Field> {
    ring: &'r Arc<Ring>,
    polys: Vec<Poly<K>>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    processed: usize,
}

impl<'r, K: Field> Engine<'r, K> {
    fn new(ring: &'r Arc<Ring>) -> Self {
        Engine {
            ring,
            polys: Vec::new(),
            lms: Vec::new(),
            masks: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            processed: 0,
        }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.ring.order().cmp(a, b, self.ring.nvars())
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.active
            .iter()
            .copied()
            .find(|&g| self.masks[g] & !mask == 0 && self.lms[g].divides(m))
    }

    /// Reduce until the leading monomial is irreducible; tracks sugar.
    fn top_reduce(&self, mut f: Poly<K>, mut sugar: u32) -> (Poly<K>, u32) {
        while let Some(lm) = f.leading_monomial().copied() {
            let Some(g) = self.find_reducer(&lm) else { break };
            let q = self.lms[g].quotient_of(&lm);
            let c = f.leading_coeff().expect("nonzero").neg();
            let g_poly = &self.polys[g];
            let terms = merge_scaled(&f.terms()[1..], &c, &q, &g_poly.terms()[1..], |a, b| self.cmp(a, b));
            f = Poly::from_sorted(self.ring, terms);
            sugar = sugar.max(q.degree() + self.sugar[g]);
        }
        (f, sugar)
    }

    fn insert(&mut self, f: Poly<K>, sugar: u32) -> Result<(), AlgebraError> {
        let limits = self.ring.limits();
        if f.degree() > limits.max_degree as i64 {
            return Err(AlgebraError::ResourceLimit(format!(
                "basis element of degree {} exceeds max degree {}",
                f.degree(),
                limits.max_degree
            )));
        }
        if self.polys.len() >= limits.max_basis_size {
            return Err(AlgebraError::ResourceLimit(format!(
                "basis size exceeds {}",
                limits.max_basis_size
            )));
        }
        let f = f.monic();
        let lm = *f.leading_monomial().expect("nonzero");
        let h = self.polys.len();
        self.polys.push(f);
        self.lms.push(lm);
        self.masks.push(lm.support_mask());
        self.sugar.push(sugar);
        self.update(h);
        Ok(())
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.lms[i], &self.lms[j]);
        let lcm = a.lcm(b);
        let sugar = (self.sugar[i] + lcm.degree() - a.degree()).max(self.sugar[j] + lcm.degree() - b.degree());
        Pair { i, j, lcm, sugar, coprime: a.is_coprime(b) }
    }

    fn update(&mut self, h: usize) {
        let lm_h = self.lms[h];
        let mut candidates: Vec<Pair> = self.active.iter().map(|&g| self.make_pair(g, h)).collect();
        let mut kept: Vec<Pair> = Vec::with_capacity(candidates.len());
        while let Some(p) = candidates.pop() {
            let dominated = !p.coprime
                && (candidates.iter().any(|q| q.lcm.divides(&p.lcm)) || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !p.coprime);

        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm) && lms[p.i].lcm(&lm_h) != p.lcm && lms[p.j].lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(h);
    }

    /// Index of the pair to process next: smallest sugar, then smallest lcm.
    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Poly<K> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let qf = self.lms[p.i].quotient_of(&p.lcm);
        let qg = self.lms[p.j].quotient_of(&p.lcm);
        let minus_one = K::one().neg();
        let a = f.mul_term(&K::one(), &qf);
        // leading terms cancel; skip them
        let terms = merge_scaled(&a.terms()[1..], &minus_one, &qg, &g.terms()[1..], |x, y| self.cmp(x, y));
        Poly::from_sorted(self.ring, terms)
    }

    fn run(&mut self, gens: &[Poly<K>]) -> Result<bool, AlgebraError> {
        let mut input: Vec<Poly<K>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        input.sort_by(|a, b| self.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        for g in input {
            let d = g.degree() as u32;
            let (r, s) = self.top_reduce(g, d);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return Ok(true);
            }
            self.insert(r, s)?;
        }
        let max_pairs = self.ring.limits().max_pairs;
        while let Some(p) = self.select() {
            self.processed += 1;
            if self.processed > max_pairs {
                return Err(AlgebraError::ResourceLimit(format!("more than {max_pairs} critical pairs")));
            }
            let s = self.spoly(&p);
            let (r, sugar) = self.top_reduce(s, p.sugar);
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return Ok(true);
            }
            self.insert(r, sugar)?;
        }
        Ok(false)
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` in `ring`'s order.
/// The unit ideal yields `[1]`, the zero ideal an empty basis.
pub fn groebner_basis<K: Field>(ring: &Arc<Ring>, gens: &[Poly<K>]) -> Result<Vec<Poly<K>>, AlgebraError> {
    for g in gens {
        if !g.is_zero() && **g.ring() != **ring {
            return Err(AlgebraError::RingMismatch);
        }
    }
    if let Some(result) = K::groebner_basis_hook(ring, gens) {
        return result;
    }
    rational_groebner_basis(ring, gens)
}

/// Buchberger's algorithm run directly in the coefficient field.
pub(crate) fn rational_groebner_basis<K: Field>(
    ring: &Arc<Ring>,
    gens: &[Poly<K>],
) -> Result<Vec<Poly<K>>, AlgebraError> {
    let mut engine = Engine::new(ring);
    if engine.run(gens)? {
        return Ok(vec![Poly::one(ring)]);
    }
    let basis: Vec<Poly<K>> = engine.active.iter().map(|&g| engine.polys[g].clone()).collect();
    Ok(interreduce(ring, basis))
}

/// Critical pairs of `basis` (monic, no leading monomial dividing another)
/// that survive the Gebauer-Moeller criteria: `basis` is a Groebner basis iff
/// each of their S-polynomials reduces to zero.
pub(crate) fn critical_pairs<K: Field>(ring: &Arc<Ring>, basis: &[Poly<K>]) -> Result<Vec<(usize, usize)>, AlgebraError> {
    let mut engine = Engine::new(ring);
    for f in basis {
        let d = f.degree() as u32;
        engine.insert(f.clone(), d)?;
    }
    let mut out = Vec::new();
    while let Some(p) = engine.select() {
        out.push((p.i, p.j));
    }
    Ok(out)
}

/// Reduced Groebner basis from any Groebner basis.
pub(crate) fn minimal_reduced<K: Field>(ring: &Arc<Ring>, basis: Vec<Poly<K>>) -> Vec<Poly<K>> {
    let order = ring.order();
    let n = ring.nvars();
    let mut basis: Vec<Poly<K>> = basis.into_iter().filter(|f| !f.is_zero()).collect();
    if basis.iter().any(|f| f.is_constant()) {
        return vec![Poly::one(ring)];
    }
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap(), n));
    let mut minimal: Vec<Poly<K>> = Vec::new();
    for f in basis {
        let lm = f.leading_monomial().unwrap();
        if !minimal.iter().any(|g| g.leading_monomial().unwrap().divides(lm)) {
            minimal.push(f);
        }
    }
    interreduce(ring, minimal)
}

/// Tail-reduce a minimal basis and sort it decreasingly by leading monomial.
fn interreduce<K: Field>(ring: &Arc<Ring>, mut basis: Vec<Poly<K>>) -> Vec<Poly<K>> {
    let order = ring.order();
    let n = ring.nvars();
    basis.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap(), n));
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<&Poly<K>> = basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
        out.push(normal_form_refs(&basis[i], &others).monic());
    }
    out
}

/// Complete reduction of `f` modulo `basis` (any finite list of nonzero
/// polynomials). Zero iff `f` lies in the ideal when `basis` is a Groebner basis.
pub fn normal_form<K: Field>(f: &Poly<K>, basis: &[Poly<K>]) -> Poly<K> {
    let refs: Vec<&Poly<K>> = basis.iter().collect();
    normal_form_refs(f, &refs)
}

fn normal_form_refs<K: Field>(f: &Poly<K>, basis: &[&Poly<K>]) -> Poly<K> {
    let ring = f.ring().clone();
    let order = ring.order();
    let n = ring.nvars();
    let keys: Vec<(Monomial, u32)> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| {
            let lm = *b.leading_monomial().unwrap();
            (lm, lm.support_mask())
        })
        .collect();
    let polys: Vec<&Poly<K>> = basis.iter().copied().filter(|b| !b.is_zero()).collect();
    let mut terms: Vec<(Monomial, K)> = f.terms().to_vec();
    let mut i = 0;
    while i < terms.len() {
        let m = terms[i].0;
        let mask = m.support_mask();
        let found = keys.iter().position(|(lm, lmask)| lmask & !mask == 0 && lm.divides(&m));
        match found {
            Some(k) => {
                let g = polys[k];
                let q = keys[k].0.quotient_of(&m);
                let c = terms[i].1.div(g.leading_coeff().unwrap()).neg();
                let tail = merge_scaled(&terms[i + 1..], &c, &q, &g.terms()[1..], |a, b| order.cmp(a, b, n));
                terms.truncate(i);
                terms.extend(tail);
            }
            None => i += 1,
        }
    }
    Poly::from_sorted(&ring, terms)
}

/// Exact division `f / g`; `None` when `g` does not divide `f`.
pub fn divide_exact<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Option<Poly<K>> {
    if g.is_zero() {
        return None;
    }
    let ring = f.ring().clone();
    let order = ring.order();
    let n = ring.nvars();
    let glm = *g.leading_monomial().unwrap();
    let glc_inv = g.leading_coeff().unwrap().inv();
    let mut rest: Vec<(Monomial, K)> = f.terms().to_vec();
    let mut quotient: Vec<(Monomial, K)> = Vec::new();
    while let Some((m, c)) = rest.first().cloned() {
        if !glm.divides(&m) {
            return None;
        }
        let q = glm.quotient_of(&m);
        let qc = c.mul(&glc_inv);
        rest = merge_scaled(&rest[1..], &qc.neg(), &q, &g.terms()[1..], |a, b| order.cmp(a, b, n));
        quotient.push((q, qc));
    }
    Some(Poly::from_terms(&ring, quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};
    use crate::monomial::MonomialOrder;
    use crate::parse::{parse_poly, parse_poly_in};

    fn gb(vars: &[&str], gens: &[&str]) -> Vec<String> {
        let r = Ring::new(vars, MonomialOrder::DegRevLex).unwrap();
        let g: Vec<Poly<Q>> = gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        groebner_basis(&r, &g).unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        assert_eq!(gb(&["x", "y"], &["x", "y"]), vec!["x", "y"]);
        assert_eq!(gb(&["x", "y"], &["x - y", "x + y"]), vec!["x", "y"]);
        assert_eq!(gb(&["x", "y"], &["x", "x - 1"]), vec!["1"]);
        assert!(gb(&["x"], &["0"]).is_empty());
    }

    #[test]
    fn twisted_cubic() {
        let basis = gb(&["x", "y", "z", "w"], &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn cyclic3_matches_modular() {
        let gens = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"];
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::DegRevLex).unwrap();
        let gq: Vec<Poly<Q>> = gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let gp: Vec<Poly<Fp>> = gens.iter().map(|s| parse_poly_in(&r, s).unwrap()).collect();
        let bq = groebner_basis(&r, &gq).unwrap();
        let bp = groebner_basis(&r, &gp).unwrap();
        let lq: Vec<_> = bq.iter().map(|p| *p.leading_monomial().unwrap()).collect();
        let lp: Vec<_> = bp.iter().map(|p| *p.leading_monomial().unwrap()).collect();
        assert_eq!(lq, lp);
        // every generator reduces to zero
        for g in &gq {
            assert!(normal_form(g, &bq).is_zero());
        }
    }

    #[test]
    fn lex_elimination() {
        let r = Ring::new(&["t", "x", "y"], MonomialOrder::Elimination { block: 1 }).unwrap();
        let g: Vec<Poly<Q>> = ["x - t^2", "y - t^3"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let basis = groebner_basis(&r, &g).unwrap();
        let free: Vec<String> = basis.iter().filter(|p| p.degree_in(0) == 0).map(|p| p.to_string()).collect();
        assert_eq!(free, vec!["x^3 - y^2"]);
    }

    #[test]
    fn resource_limit_is_hard_failure() {
        let limits = crate::ring::Limits { max_basis_size: 2, max_degree: 100, max_pairs: 100 };
        let r = Ring::with_limits(&["x", "y", "z", "w"], MonomialOrder::DegRevLex, limits).unwrap();
        let g: Vec<Poly<Q>> = ["x*z - y^2", "y*w - z^2", "x*w - y*z"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        assert!(matches!(groebner_basis(&r, &g), Err(AlgebraError::ResourceLimit(_))));
    }
}
