//! Determinantal varieties `X = F^{-1}(M^t_{m,n})`: construction, the EIDS
//! test, smoothability classes and essential smoothings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::random::{self, nonzero_int};
use crate::ring::Ring;

fn check_type(m: usize, n: usize, t: usize) -> Result<()> {
    if t == 0 || t > m.min(n) {
        return Err(Error::InvalidType { m, n, t });
    }
    Ok(())
}

/// Codimension `(m-t+1)(n-t+1)` of the matrices of rank `< t`.
pub fn generic_codim(m: usize, n: usize, t: usize) -> Result<usize> {
    check_type(m, n, t)?;
    Ok((m - t + 1) * (n - t + 1))
}

/// `(m-t+2)(n-t+2)`: an EIDS in `C^N` has an isolated singularity iff
/// `N <= bound`, and admits a smoothing iff `N < bound`.
pub fn smoothability_bound(m: usize, n: usize, t: usize) -> Result<usize> {
    check_type(m, n, t)?;
    Ok((m - t + 2) * (n - t + 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothabilityClass {
    IsolatedSmoothable,
    IsolatedNoSmoothing,
    NonisolatedPossible,
}

impl SmoothabilityClass {
    pub fn is_isolated(self) -> bool {
        self != SmoothabilityClass::NonisolatedPossible
    }

    pub fn has_smoothing(self) -> bool {
        self == SmoothabilityClass::IsolatedSmoothable
    }
}

pub fn smoothability_class(m: usize, n: usize, t: usize, nvars: usize) -> Result<SmoothabilityClass> {
    let b = smoothability_bound(m, n, t)?;
    Ok(match nvars.cmp(&b) {
        std::cmp::Ordering::Less => SmoothabilityClass::IsolatedSmoothable,
        std::cmp::Ordering::Equal => SmoothabilityClass::IsolatedNoSmoothing,
        std::cmp::Ordering::Greater => SmoothabilityClass::NonisolatedPossible,
    })
}

/// `t = m = n`: a determinant hypersurface. The smoothability inequality is
/// applied verbatim to these; reports flag them.
pub fn is_hypersurface_type(m: usize, n: usize, t: usize) -> bool {
    t == m && t == n
}

/// A validated determinantal variety with its rank-stratum ideals.
#[derive(Clone, Debug)]
pub struct DetVariety<K: Field> {
    matrix: PolyMatrix<K>,
    t: usize,
    codim: usize,
    dim: usize,
    /// `strata[i - 1]` is generated by the `i`-minors.
    strata: Vec<Ideal<K>>,
}

impl<K: Field> DetVariety<K> {
    /// Fails unless the `t`-minors cut out the generic codimension and the
    /// origin lies on the variety.
    pub fn build(matrix: PolyMatrix<K>, t: usize) -> Result<Self> {
        let (m, n) = (matrix.nrows(), matrix.ncols());
        let codim = generic_codim(m, n, t)?;
        let ring = matrix.ring().clone();
        let nvars = ring.nvars();
        let strata: Vec<Ideal<K>> = (1..=t).map(|i| Ideal::new(&ring, matrix.minors(i))).collect();
        let top = &strata[t - 1];
        let dim = top.dimension()?;
        let actual = nvars as i64 - dim;
        if actual != codim as i64 {
            return Err(Error::NotDeterminantal { expected: codim as i64, actual });
        }
        if top.gens().iter().any(|g| !g.constant_term().is_zero()) {
            return Err(Error::HypothesisViolation("the origin is not a point of the variety".into()));
        }
        Ok(DetVariety { matrix, t, codim, dim: dim as usize, strata })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &PolyMatrix<K> {
        &self.matrix
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The defining ideal `I_t`.
    pub fn ideal(&self) -> &Ideal<K> {
        &self.strata[self.t - 1]
    }

    /// Ideal of the `i`-minors, `1 <= i <= t`.
    pub fn stratum_ideal(&self, i: usize) -> Result<&Ideal<K>> {
        if i == 0 || i > self.t {
            return Err(Error::IndexOutOfRange { index: i, max: self.t });
        }
        Ok(&self.strata[i - 1])
    }

    pub fn smoothability_class(&self) -> SmoothabilityClass {
        smoothability_class(self.m(), self.n(), self.t, self.nvars()).expect("validated type")
    }

    pub fn is_hypersurface_type(&self) -> bool {
        is_hypersurface_type(self.m(), self.n(), self.t)
    }

    /// Whether every entry is homogeneous of one common degree, so the
    /// variety and its constant perturbations are weighted cones.
    pub fn is_homogeneous(&self) -> bool {
        let degs: Vec<i64> = self.matrix.entries().iter().filter(|p| !p.is_zero()).map(|p| p.degree()).collect();
        self.matrix.entries().iter().all(|p| p.is_homogeneous())
            && degs.windows(2).all(|w| w[0] == w[1])
            && degs.first().is_some_and(|&d| d > 0)
    }

    /// Transversality test on every rank stratum away from the origin.
    pub fn is_eids(&self) -> Result<EidsVerdict<K>> {
        let ideals = transversality_ideals(&self.matrix, self.t)?;
        let mut strata = Vec::with_capacity(self.t);
        for (i, s) in ideals.into_iter().enumerate() {
            let ok = s.germ_in_origin()?;
            strata.push(StratumCheck { stratum: i + 1, dimension: s.dimension()?, ok });
            if !ok {
                return Ok(EidsVerdict { eids: false, strata, witness: Some(s) });
            }
        }
        Ok(EidsVerdict { eids: true, strata, witness: None })
    }

    /// Same variety, matrix replaced (e.g. after a change of coordinates).
    pub fn with_matrix(&self, matrix: PolyMatrix<K>) -> Result<Self> {
        Self::build(matrix, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCheck {
    pub stratum: usize,
    /// Dimension of the saturated non-transversality ideal (`-1` if empty).
    pub dimension: i64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct EidsVerdict<K: Field> {
    pub eids: bool,
    pub strata: Vec<StratumCheck>,
    /// First saturated ideal whose zero set leaves the origin.
    pub witness: Option<Ideal<K>>,
}

/// For `i = 1..=t`: the `i`-minors plus the `c_i`-minors of their Jacobian,
/// saturated by the `(i-1)`-minors. The zero set of the `i`-th ideal is the
/// set of points of rank exactly `i - 1` where `F` is not transversal to
/// that stratum.
pub fn transversality_ideals<K: Field>(matrix: &PolyMatrix<K>, t: usize) -> Result<Vec<Ideal<K>>> {
    let (m, n) = (matrix.nrows(), matrix.ncols());
    let ring = matrix.ring();
    let all_vars: Vec<usize> = (0..ring.nvars()).collect();
    let mut out = Vec::with_capacity(t);
    let mut previous = Ideal::unit(ring);
    for i in 1..=t {
        let c = generic_codim(m, n, i)?;
        let minors = matrix.minors(i);
        let current = Ideal::new(ring, minors.clone());
        let singular = if minors.is_empty() {
            current.clone()
        } else {
            let jac = PolyMatrix::jacobian(ring, &minors, &all_vars)?;
            current.add_gens(&jac.minors(c))
        };
        out.push(singular.saturate(&previous)?);
        previous = current;
    }
    Ok(out)
}

/// The perturbed matrix `F + s*R` and the record needed to replay it.
#[derive(Clone, Debug)]
pub struct SmoothingFamily<K: Field> {
    base: DetVariety<K>,
    ring: Arc<Ring>,
    matrix: PolyMatrix<K>,
    perturbation: Vec<Vec<i64>>,
    epsilon: i64,
    seed: Option<u64>,
    attempts: usize,
}

impl<K: Field> SmoothingFamily<K> {
    /// Validates `F + s*R`: the fiber at `s = epsilon` is transversal to all
    /// strata everywhere, and the family has dimension `d + 1`.
    pub fn with_perturbation(base: &DetVariety<K>, r: Vec<Vec<i64>>, epsilon: i64) -> Result<Self> {
        match Self::try_perturbation(base, r, epsilon)? {
            Ok(f) => Ok(f),
            Err(reason) => Err(Error::HypothesisViolation(reason)),
        }
    }

    fn try_perturbation(
        base: &DetVariety<K>,
        r: Vec<Vec<i64>>,
        epsilon: i64,
    ) -> Result<std::result::Result<Self, String>> {
        let (m, n) = (base.m(), base.n());
        if r.len() != m || r.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("perturbation must be {m}x{n}")));
        }
        if epsilon == 0 {
            return Err(Error::HypothesisViolation("the test fiber must have s != 0".into()));
        }
        let ring = base.ring().append(&["s"])?;
        let nv = base.nvars();
        let images: Vec<Poly<K>> = (0..nv).map(|i| Poly::var(&ring, i)).collect();
        let lifted = base.matrix.compose(&ring, &images);
        let s = Poly::var(&ring, nv);
        let mut rows = lifted.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if r[i][j] != 0 {
                    *e = e.add(&s.scale(&K::from_i64(r[i][j])));
                }
            }
        }
        let matrix = PolyMatrix::new(&ring, rows)?;
        let family = SmoothingFamily { base: base.clone(), ring, matrix, perturbation: r, epsilon, seed: None, attempts: 1 };
        let fiber = family.fiber(epsilon);
        for (i, ideal) in transversality_ideals(&fiber, base.t)?.into_iter().enumerate() {
            if !ideal.is_unit()? {
                return Ok(Err(format!("fiber at s = {epsilon} is not transversal to stratum {}", i + 1)));
            }
        }
        let total = Ideal::new(&family.ring, family.matrix.minors(base.t));
        let dim = total.dimension()?;
        if dim != base.dim as i64 + 1 {
            return Ok(Err(format!("family has dimension {dim}, expected {}", base.dim + 1)));
        }
        Ok(Ok(family))
    }

    pub fn base(&self) -> &DetVariety<K> {
        &self.base
    }

    /// The `(x, s)` ring; `s` is the last variable.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn s_index(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn matrix(&self) -> &PolyMatrix<K> {
        &self.matrix
    }

    pub fn perturbation(&self) -> &[Vec<i64>] {
        &self.perturbation
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// `F + value*R` in the base ring.
    pub fn fiber(&self, value: i64) -> PolyMatrix<K> {
        let base_ring = self.base.ring();
        let mut images: Vec<Poly<K>> = (0..base_ring.nvars()).map(|i| Poly::var(base_ring, i)).collect();
        images.push(Poly::from_i64(base_ring, value));
        self.matrix.compose(base_ring, &images)
    }
}

/// `F + s*R` with `R` drawn from `seed`, entries nonzero integers in
/// `[-bound, bound]`; resampled until the validation of
/// [`SmoothingFamily::with_perturbation`] passes or `retries` draws fail.
pub fn essential_smoothing<K: Field>(
    base: &DetVariety<K>,
    seed: u64,
    retries: usize,
    bound: i64,
) -> Result<SmoothingFamily<K>> {
    let mut last = String::new();
    for attempt in 0..retries {
        let mut rng = random::rng(seed, attempt as u64);
        let r: Vec<Vec<i64>> =
            (0..base.m()).map(|_| (0..base.n()).map(|_| nonzero_int(&mut rng, bound)).collect()).collect();
        let epsilon = nonzero_int(&mut rng, bound);
        match SmoothingFamily::try_perturbation(base, r, epsilon)? {
            Ok(mut family) => {
                family.seed = Some(seed);
                family.attempts = attempt + 1;
                return Ok(family);
            }
            Err(reason) => last = reason,
        }
    }
    Err(Error::DegenerateAfterRetries { what: format!("essential smoothing ({last})"), attempts: retries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::monomial::MonomialOrder;

    fn variety(vars: &[&str], rows: &[Vec<&str>], t: usize) -> Result<DetVariety<Q>> {
        let ring = Ring::new(vars, MonomialOrder::DegRevLex).unwrap();
        DetVariety::build(PolyMatrix::parse(&ring, rows)?, t)
    }

    fn example1() -> DetVariety<Q> {
        variety(&["x", "y", "z", "w"], &[vec!["z", "y + w", "x"], vec!["w", "x", "y"]], 2).unwrap()
    }

    #[test]
    fn codimension_formula() {
        assert_eq!(generic_codim(2, 3, 2).unwrap(), 2);
        assert_eq!(generic_codim(4, 5, 1).unwrap(), 20);
        assert_eq!(generic_codim(3, 3, 3).unwrap(), 1);
        assert!(matches!(generic_codim(2, 3, 3), Err(Error::InvalidType { .. })));
        assert!(matches!(generic_codim(2, 3, 0), Err(Error::InvalidType { .. })));
    }

    #[test]
    fn smoothability_classes() {
        use SmoothabilityClass::*;
        assert_eq!(smoothability_bound(2, 3, 2).unwrap(), 6);
        assert_eq!(smoothability_class(2, 3, 2, 4).unwrap(), IsolatedSmoothable);
        assert_eq!(smoothability_class(2, 3, 2, 5).unwrap(), IsolatedSmoothable);
        assert_eq!(smoothability_class(2, 3, 2, 6).unwrap(), IsolatedNoSmoothing);
        assert_eq!(smoothability_class(2, 3, 2, 7).unwrap(), NonisolatedPossible);
        assert!(is_hypersurface_type(3, 3, 3));
        assert!(!is_hypersurface_type(2, 3, 2));
    }

    #[test]
    fn builds_example_one() {
        let v = example1();
        assert_eq!((v.codim(), v.dim(), v.nvars()), (2, 2, 4));
        assert_eq!(v.stratum_ideal(1).unwrap().gens().len(), 6);
        assert_eq!(v.stratum_ideal(2).unwrap().gens().len(), 3);
        assert!(matches!(v.stratum_ideal(3), Err(Error::IndexOutOfRange { index: 3, max: 2 })));
        assert!(v.is_homogeneous());
        assert_eq!(v.smoothability_class(), SmoothabilityClass::IsolatedSmoothable);
    }

    #[test]
    fn degenerate_matrix_is_not_determinantal() {
        let e = variety(&["x", "y", "z", "w"], &[vec!["x", "0", "0"], vec!["0", "0", "0"]], 2).unwrap_err();
        assert_eq!(e, Error::NotDeterminantal { expected: 2, actual: 0 });
    }

    #[test]
    fn eids_verdicts() {
        assert!(example1().is_eids().unwrap().eids);
        let swallowtail = variety(
            &["x", "y", "z"],
            &[vec!["256*z^3 - 27*x^4 - 128*z^2*y^2 + 144*z*x^2*y + 16*z*y^4 - 4*x^2*y^3"]],
            1,
        )
        .unwrap();
        let verdict = swallowtail.is_eids().unwrap();
        assert!(!verdict.eids);
        assert_eq!(verdict.witness.unwrap().dimension().unwrap(), 1);
    }

    #[test]
    fn worked_perturbation_of_example_one_is_a_smoothing() {
        let v = example1();
        let r = vec![vec![0, 0, 1], vec![0, 0, 0]];
        let fam = SmoothingFamily::with_perturbation(&v, r, 1).unwrap();
        assert_eq!(fam.matrix().get(0, 2).to_string(), "x + s");
        assert_eq!(fam.fiber(0), *v.matrix());
    }

    #[test]
    fn seeded_smoothing_is_reproducible() {
        let v = example1();
        let a = essential_smoothing(&v, 11, 16, 7).unwrap();
        let b = essential_smoothing(&v, 11, 16, 7).unwrap();
        assert_eq!(a.perturbation(), b.perturbation());
        assert_eq!(a.epsilon(), b.epsilon());
        assert!(a.perturbation().iter().flatten().all(|&c| c != 0 && c.abs() <= 7));
        assert_eq!(a.fiber(0), *v.matrix());
    }
}
