//! Groebner bases over the rationals by multi-modular reconstruction.
//!
//! The input is made integral and homogenized; reduced bases modulo 31-bit
//! primes are combined by Chinese remaindering and rational reconstruction.
//! A candidate `G` is accepted only after exact checks over the rationals:
//! `G` is a Groebner basis and every input reduces to zero modulo `G`. With
//! homogeneous input and `LM(G)` equal to the leading monomials of the
//! reduced basis modulo a prime, the Hilbert functions of `<G>` and of the
//! input ideal are squeezed equal, so `<G>` is the input ideal. Dehomogenizing
//! (the homogenizing variable is last, hence smallest in every block) gives a
//! Groebner basis of the original ideal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::field::{Field, Q};
use crate::groebner::{critical_pairs, minimal_reduced, rational_groebner_basis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// Prime field with a compile-time modulus below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Zp(acc)
    }

    fn residue(v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Zp<P> {
    const NAME: &'static str = "modular";

    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        Zp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Zp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Zp(self.0 * other.0 % P)
    }
    fn neg(&self) -> Self {
        Zp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_i64(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }
    fn from_rational(r: &BigRational) -> Result<Self, AlgebraError> {
        let d = Self::residue(r.denom());
        if d == 0 {
            return Err(AlgebraError::UnluckyPrime);
        }
        Ok(Zp(Self::residue(r.numer())).mul(&Zp(d).inv()))
    }
}

/// A reduced basis modulo one prime: terms with residues.
type ModBasis = Vec<Vec<(Monomial, u64)>>;

fn basis_mod<const P: u64>(ring: &Arc<Ring>, gens: &[Poly<Q>]) -> Result<Option<ModBasis>, AlgebraError> {
    let mut reduced = Vec::with_capacity(gens.len());
    for g in gens {
        let lc = g.leading_coeff().expect("nonzero");
        if Zp::<P>::residue(lc.numer()) == 0 {
            return Ok(None);
        }
        reduced.push(g.try_map_coeffs(ring, |c| Zp::<P>::from_rational(&c.0))?);
    }
    let basis = rational_groebner_basis(ring, &reduced)?;
    Ok(Some(basis.iter().map(|f| f.terms().iter().map(|(m, c)| (*m, c.0)).collect()).collect()))
}

macro_rules! prime_table {
    ($($p:literal),* $(,)?) => {
        const PRIMES: &[u64] = &[$($p),*];

        fn basis_mod_prime(
            index: usize,
            ring: &Arc<Ring>,
            gens: &[Poly<Q>],
        ) -> Result<Option<ModBasis>, AlgebraError> {
            let mut k = 0usize;
            $(
                if index == k {
                    return basis_mod::<$p>(ring, gens);
                }
                k += 1;
            )*
            let _ = k;
            unreachable!("prime index out of range")
        }
    };
}

prime_table!(
    2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
    2147483423, 2147483399, 2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179, 2147483171,
    2147483137, 2147483123, 2147483077, 2147483069, 2147483059, 2147483053, 2147483033, 2147483029, 2147482951,
    2147482949, 2147482943, 2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859, 2147482819,
    2147482817, 2147482811, 2147482801, 2147482763, 2147482739, 2147482697, 2147482693, 2147482681, 2147482663,
    2147482661, 2147482621, 2147482591,
);

/// Clears denominators and contents; the result has coprime integer
/// coefficients.
fn integral(f: &Poly<Q>) -> Poly<Q> {
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in f.terms() {
        content = content.gcd(&(c.numer() * (&den / c.denom())));
    }
    let scale = BigRational::new(den, content);
    f.scale(&Q(scale))
}

fn homogenize(f: &Poly<Q>, ring: &Arc<Ring>, h: usize) -> Poly<Q> {
    let d = f.degree() as u32;
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (m.with_exp(h, d - m.degree()).expect("degree fits"), c.clone()))
        .collect();
    Poly::from_terms(ring, terms)
}

/// `a mod m` to the rational `r/s` with `|r|, |s| <= sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Combines the residues of bases with equal leading monomials.
fn reconstruct(ring: &Arc<Ring>, bases: &[(u64, &ModBasis)]) -> Option<Vec<Poly<Q>>> {
    let npolys = bases[0].1.len();
    let mut out = Vec::with_capacity(npolys);
    for k in 0..npolys {
        let mut table: HashMap<Monomial, Vec<(u64, u64)>> = HashMap::new();
        for &(p, basis) in bases {
            for (m, c) in &basis[k] {
                table.entry(*m).or_default().push((p, *c));
            }
        }
        let mut terms = Vec::with_capacity(table.len());
        for (m, residues) in table {
            let (mut value, mut modulus) = (BigInt::zero(), BigInt::one());
            for &(p, _) in bases {
                let c = residues.iter().find(|(q, _)| *q == p).map_or(0, |r| r.1);
                let a = (&value % BigInt::from(p)).to_u64().expect("residue fits");
                let minv = Zp::<0>::inv_mod((&modulus % BigInt::from(p)).to_u64().expect("residue fits"), p);
                let t = (c + p - a) % p * minv % p;
                value += &modulus * BigInt::from(t);
                modulus *= BigInt::from(p);
            }
            let r = rational_reconstruction(&value, &modulus)?;
            if !r.is_zero() {
                terms.push((m, Q(r)));
            }
        }
        out.push(Poly::from_terms(ring, terms));
    }
    Some(out)
}

impl Zp<0> {
    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }
}

fn signature(basis: &ModBasis) -> Vec<Monomial> {
    basis.iter().map(|f| f[0].0).collect()
}

fn matches_mod(candidate: &[Poly<Q>], p: u64, basis: &ModBasis) -> bool {
    if candidate.len() != basis.len() {
        return false;
    }
    for (f, g) in candidate.iter().zip(basis) {
        let mut reduced = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let d = (c.denom() % BigInt::from(p)).to_u64().map(|d| (d + p) % p);
            let Some(d) = d.filter(|&d| d != 0) else { return false };
            let n = c.numer().mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
            let v = n * Zp::<0>::inv_mod(d, p) % p;
            if v != 0 {
                reduced.push((*m, v));
            }
        }
        if reduced != *g {
            return false;
        }
    }
    true
}

/// Reduced Groebner basis over the rationals; `None` when the method does not
/// apply (lexicographic order) or no candidate verified within the prime
/// budget.
pub(crate) fn groebner_basis_q(ring: &Arc<Ring>, gens: &[Poly<Q>]) -> Option<Result<Vec<Poly<Q>>, AlgebraError>> {
    if matches!(ring.order(), MonomialOrder::Lex) {
        return None;
    }
    let gens: Vec<Poly<Q>> = gens.iter().filter(|g| !g.is_zero()).map(integral).collect();
    if gens.is_empty() {
        return Some(Ok(Vec::new()));
    }
    if gens.iter().any(|g| g.is_constant()) {
        return Some(Ok(vec![Poly::one(ring)]));
    }
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    let (work_ring, work) = if homogeneous {
        (ring.clone(), gens)
    } else {
        let extended = match ring.append(&["_h"]) {
            Ok(r) => r,
            Err(_) => return None,
        };
        let h = ring.nvars();
        let map: Vec<usize> = (0..h).collect();
        let lifted: Vec<Poly<Q>> = gens.iter().map(|g| homogenize(&g.reindex(&extended, &map), &extended, h)).collect();
        (extended, lifted)
    };
    let result = modular_run(&work_ring, &work)?;
    Some(result.map(|basis| {
        if homogeneous {
            basis
        } else {
            let mut images: Vec<Poly<Q>> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
            images.push(Poly::one(ring));
            let dehom: Vec<Poly<Q>> = basis.iter().map(|g| g.compose(ring, &images)).collect();
            minimal_reduced(ring, dehom)
        }
    }))
}

fn modular_run(ring: &Arc<Ring>, gens: &[Poly<Q>]) -> Option<Result<Vec<Poly<Q>>, AlgebraError>> {
    let mut groups: Vec<(Vec<Monomial>, Vec<(u64, ModBasis)>)> = Vec::new();
    let mut last_candidate: Option<Vec<Poly<Q>>> = None;
    for (index, &p) in PRIMES.iter().enumerate() {
        let basis = match basis_mod_prime(index, ring, gens) {
            Ok(Some(b)) => b,
            Ok(None) => continue,
            Err(AlgebraError::UnluckyPrime) => continue,
            Err(e) => return Some(Err(e)),
        };
        // a candidate that already matches a fresh prime goes to verification
        if let Some(candidate) = last_candidate.take() {
            if matches_mod(&candidate, p, &basis) {
                let v = verify(ring, gens, &candidate);
                match v {
                    Ok(true) => return Some(Ok(candidate)),
                    Ok(false) => {}
                    Err(e) => return Some(Err(e)),
                }
            }
        }
        let sig = signature(&basis);
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push((p, basis)),
            None => groups.push((sig, vec![(p, basis)])),
        }
        let (_, members) = groups.iter().max_by_key(|(_, m)| m.len()).expect("nonempty");
        let refs: Vec<(u64, &ModBasis)> = members.iter().map(|(p, b)| (*p, b)).collect();
        last_candidate = reconstruct(ring, &refs);
    }
    None
}

type IntTerms = Vec<(Monomial, BigInt)>;

/// `ca * ma * a - cb * mb * b` for term lists sorted decreasingly.
fn combine(
    a: &[(Monomial, BigInt)],
    ca: &BigInt,
    ma: &Monomial,
    b: &[(Monomial, BigInt)],
    cb: &BigInt,
    mb: &Monomial,
    cmp: &impl Fn(&Monomial, &Monomial) -> std::cmp::Ordering,
) -> IntTerms {
    use std::cmp::Ordering;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let am = (i < a.len()).then(|| a[i].0.mul(ma));
        let bm = (j < b.len()).then(|| b[j].0.mul(mb));
        let ord = match (&am, &bm) {
            (Some(x), Some(y)) => cmp(x, y),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((am.unwrap(), ca * &a[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.unwrap(), -(cb * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = ca * &a[i].1 - cb * &b[j].1;
                if !c.is_zero() {
                    out.push((am.unwrap(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn remove_content(f: &mut IntTerms) {
    let mut g = BigInt::zero();
    for (_, c) in f.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, c) in f.iter_mut() {
            *c /= &g;
        }
    }
}

/// Fraction-free top reduction; true iff `f` reduces to zero.
fn reduces_to_zero(
    mut f: IntTerms,
    basis: &[IntTerms],
    cmp: &impl Fn(&Monomial, &Monomial) -> std::cmp::Ordering,
) -> bool {
    let masks: Vec<u32> = basis.iter().map(|g| g[0].0.support_mask()).collect();
    let one = Monomial::one();
    let mut steps = 0u32;
    while let Some((lm, lc)) = f.first().cloned() {
        let mask = lm.support_mask();
        let Some(k) = (0..basis.len()).find(|&k| masks[k] & !mask == 0 && basis[k][0].0.divides(&lm)) else {
            return false;
        };
        let g = &basis[k];
        let q = g[0].0.quotient_of(&lm);
        let d = lc.gcd(&g[0].1);
        f = combine(&f[1..], &(&g[0].1 / &d), &one, &g[1..], &(&lc / &d), &q, cmp);
        steps += 1;
        if steps % 4 == 0 {
            remove_content(&mut f);
        }
    }
    true
}

fn integer_terms(f: &Poly<Q>) -> IntTerms {
    integral(f).terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect()
}

fn verify(ring: &Arc<Ring>, gens: &[Poly<Q>], candidate: &[Poly<Q>]) -> Result<bool, AlgebraError> {
    if candidate.iter().any(|g| g.leading_coeff().map_or(true, |c| !c.is_one())) {
        return Ok(false);
    }
    let order = ring.order();
    let n = ring.nvars();
    let cmp = move |a: &Monomial, b: &Monomial| order.cmp(a, b, n);
    let basis: Vec<IntTerms> = candidate.iter().map(integer_terms).collect();
    for (i, j) in critical_pairs(ring, candidate)? {
        let (gi, gj) = (&basis[i], &basis[j]);
        let lcm = gi[0].0.lcm(&gj[0].0);
        let d = gi[0].1.gcd(&gj[0].1);
        let s = combine(
            &gi[1..],
            &(&gj[0].1 / &d),
            &gi[0].0.quotient_of(&lcm),
            &gj[1..],
            &(&gi[0].1 / &d),
            &gj[0].0.quotient_of(&lcm),
            &cmp,
        );
        if !reduces_to_zero(s, &basis, &cmp) {
            return Ok(false);
        }
    }
    // membership of the inputs is decided by top reduction once G is a basis
    Ok(gens.iter().all(|f| reduces_to_zero(integer_terms(f), &basis, &cmp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(2147483629u64) * BigInt::from(2147483587u64);
        for (n, d) in [(3i64, 7i64), (-22, 5), (1, 1), (0, 1), (-123456, 789)] {
            let r = BigRational::new(BigInt::from(n), BigInt::from(d));
            let a = (r.numer() * r.denom().modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some(r));
        }
    }

    #[test]
    fn agrees_with_direct_buchberger() {
        let ring = Ring::new(&["x", "y", "z"], MonomialOrder::DegRevLex).unwrap();
        let cases: &[&[&str]] = &[
            &["x^2 + y*z - 2/3", "x*y - z^3 + 5", "7*x - y^2 + z"],
            &["x*z - y^2", "y*z - x", "x^2 - y"],
            &["3*x^2*y - 2*z^3", "x*y*z - 1", "y^2 - x*z"],
        ];
        for gens in cases {
            let g: Vec<Poly<Q>> = gens.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
            let direct = rational_groebner_basis(&ring, &g).unwrap();
            let modular = groebner_basis_q(&ring, &g).unwrap().unwrap();
            assert_eq!(direct, modular, "{gens:?}");
        }
    }

    #[test]
    fn elimination_order_is_supported() {
        let ring = Ring::new(&["u", "x", "y"], MonomialOrder::Elimination { block: 1 }).unwrap();
        let g: Vec<Poly<Q>> = ["1 - u*x", "x^2*y - y^3 + 4*x"].iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
        let direct = rational_groebner_basis(&ring, &g).unwrap();
        let modular = groebner_basis_q(&ring, &g).unwrap().unwrap();
        assert_eq!(direct, modular);
    }

    fn poly_from(ring: &Arc<Ring>, terms: &[([u32; 3], i64, i64)]) -> Poly<Q> {
        let terms = terms
            .iter()
            .map(|(e, n, d)| (Monomial::from_exponents(e).unwrap(), Q::new(*n, *d)))
            .collect();
        Poly::from_terms(ring, terms)
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(24))]

        #[test]
        fn random_ideals_agree(
            gens in proptest::collection::vec(
                proptest::collection::vec(([0u32..3, 0..3, 0..3], -20i64..20, 1i64..6), 1..4),
                1..4,
            ),
            lex in proptest::bool::ANY,
        ) {
            let order = if lex { MonomialOrder::Elimination { block: 1 } } else { MonomialOrder::DegRevLex };
            let ring = Ring::new(&["x", "y", "z"], order).unwrap();
            let g: Vec<Poly<Q>> = gens.iter().map(|t| poly_from(&ring, t)).filter(|p| !p.is_zero()).collect();
            proptest::prop_assume!(!g.is_empty());
            let direct = rational_groebner_basis(&ring, &g).unwrap();
            if let Some(modular) = groebner_basis_q(&ring, &g) {
                proptest::prop_assert_eq!(direct, modular.unwrap());
            }
        }
    }
}
