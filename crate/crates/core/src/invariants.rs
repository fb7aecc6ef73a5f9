//! Polar multiplicities, the Euler characteristic of the smoothing, the
//! vanishing Euler characteristic and Milnor numbers of determinantal
//! surfaces and curves.

use serde::{Deserialize, Serialize};

use crate::detvar::{essential_smoothing, DetVariety, SmoothabilityClass, SmoothingFamily};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linear::LinearForm;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::random;

/// Knobs shared by the randomized computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub trials: usize,
    pub retries: usize,
    pub coeff_bound: i64,
    /// Count critical points on one fiber as a cross-check when the
    /// variety is a cone (all entries homogeneous of one degree).
    pub fiber_check: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 0, trials: 8, retries: 16, coeff_bound: random::DEFAULT_COEFF_BOUND, fiber_check: true }
    }
}

impl Settings {
    pub fn with_seed(self, seed: u64) -> Self {
        Settings { seed, ..self }
    }

    /// Settings for the sub-computation labelled `tag`.
    pub fn child(&self, tag: u64) -> Self {
        self.with_seed(random::derive_seed(self.seed, tag))
    }
}

/// The critical locus of `(s, p)` on the regular part of the smoothing
/// family, as an ideal of the `(x, s)` ring.
#[derive(Clone, Debug)]
pub struct PolarData<K: Field> {
    pub family: SmoothingFamily<K>,
    pub form: LinearForm,
    pub critical: Ideal<K>,
}

/// Critical points of `p` on the fibers of the family: the `t`-minors plus
/// the `(c+1)`-minors of the `x`-Jacobian of those minors stacked with `dp`,
/// saturated by the `(t-1)`-minors (the singular part of the family).
pub fn polar_data<K: Field>(family: &SmoothingFamily<K>, p: &LinearForm) -> Result<PolarData<K>> {
    let base = family.base();
    if **p.ring() != **base.ring() {
        return Err(crate::error::AlgebraError::RingMismatch.into());
    }
    let ring = family.ring();
    let nx = base.nvars();
    let xs: Vec<usize> = (0..nx).collect();
    let t = base.t();
    let minors = family.matrix().minors(t);
    let mut jac = PolyMatrix::jacobian(ring, &minors, &xs)?;
    let dp: Vec<Poly<K>> = p.coeffs_in::<K>()?.into_iter().map(|c| Poly::constant(ring, c)).collect();
    jac = jac.with_row(dp)?;
    let mut gens = minors;
    gens.extend(jac.minors(base.codim() + 1));
    let ideal = Ideal::new(ring, gens);
    let deeper = if t > 1 { Ideal::new(ring, family.matrix().minors(t - 1)) } else { Ideal::unit(ring) };
    let critical = ideal.saturate(&deeper)?;
    Ok(PolarData { family: family.clone(), form: p.clone(), critical })
}

/// Result of one polar-multiplicity computation with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarCount {
    /// The linear form `p`.
    pub form: String,
    /// Number of critical points of `p` on a nearby fiber that tend to the
    /// origin: the local intersection number of the polar curve with `s = 0`.
    pub critical_points: usize,
    /// Multiplicity of the polar curve at the origin (local intersection
    /// with the generic hyperplane `slice`). Bounded above by
    /// `critical_points`, with equality unless the polar curve is tangent to
    /// the special fiber.
    pub polar_curve_multiplicity: usize,
    pub slice: String,
    /// All critical points on the fiber `s = epsilon`, when counted.
    pub fiber_count: Option<usize>,
    pub perturbation: Vec<Vec<i64>>,
    pub epsilon: i64,
    pub smoothing_seed: Option<u64>,
    pub smoothing_attempts: usize,
}

impl PolarCount {
    /// The polar multiplicity `m_d`.
    pub fn value(&self) -> usize {
        self.critical_points
    }

    /// Agreement with the count on a single fiber, when that count applies.
    pub fn paths_agree(&self) -> bool {
        self.fiber_count.map_or(true, |f| f == self.critical_points)
    }
}

/// `m_d(X, p)`. The smoothing is drawn from `settings.seed`.
pub fn polar_multiplicity<K: Field>(v: &DetVariety<K>, p: &LinearForm, settings: &Settings) -> Result<PolarCount> {
    if v.dim() == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    let family = essential_smoothing(v, random::derive_seed(settings.seed, 1), settings.retries, settings.coeff_bound)?;
    polar_multiplicity_in(&family, p, settings)
}

/// `m_d(X, p)` for a given smoothing family.
pub fn polar_multiplicity_in<K: Field>(
    family: &SmoothingFamily<K>,
    p: &LinearForm,
    settings: &Settings,
) -> Result<PolarCount> {
    let data = polar_data(family, p)?;
    let ring = family.ring();
    let s = Poly::var(ring, family.s_index());
    let at_zero = data.critical.add_gens(&[s]);
    let dim = at_zero.dimension()?;
    if dim > 0 && !at_zero.germ_in_origin()? {
        return Err(Error::NotIsolatedCriticalLocus(format!(
            "critical locus of {p} on the special fiber has dimension {dim}"
        )));
    }
    let critical_points = at_zero.local_count_at_origin()?;

    let mut rng = random::rng(random::derive_seed(settings.seed, 2), 0);
    let mut slice = None;
    for _ in 0..settings.retries {
        let l = LinearForm::random(ring, &mut rng, settings.coeff_bound);
        let cut = data.critical.add_gens(&[l.to_poly::<K>()?]);
        if cut.germ_in_origin()? {
            slice = Some((l, cut.local_count_at_origin()?));
            break;
        }
    }
    let (slice, polar_curve_multiplicity) = slice.ok_or_else(|| Error::DegenerateAfterRetries {
        what: "generic slice of the polar curve".into(),
        attempts: settings.retries,
    })?;

    let fiber_count = if settings.fiber_check && family.base().is_homogeneous() {
        Some(fiber_critical_count(family, p, family.epsilon())?)
    } else {
        None
    };
    Ok(PolarCount {
        form: p.to_string(),
        critical_points,
        polar_curve_multiplicity,
        slice: slice.to_string(),
        fiber_count,
        perturbation: family.perturbation().to_vec(),
        epsilon: family.epsilon(),
        smoothing_seed: family.seed(),
        smoothing_attempts: family.attempts(),
    })
}

/// Critical points of `p` on the fiber `s = value`, counted globally with
/// multiplicity, computed directly on that fiber.
pub fn fiber_critical_count<K: Field>(family: &SmoothingFamily<K>, p: &LinearForm, value: i64) -> Result<usize> {
    let base = family.base();
    let ring = base.ring();
    let fiber = family.fiber(value);
    let xs: Vec<usize> = (0..ring.nvars()).collect();
    let minors = fiber.minors(base.t());
    let dp: Vec<Poly<K>> = p.coeffs_in::<K>()?.into_iter().map(|c| Poly::constant(ring, c)).collect();
    let jac = PolyMatrix::jacobian(ring, &minors, &xs)?.with_row(dp)?;
    let mut gens = minors;
    gens.extend(jac.minors(base.codim() + 1));
    let deeper = if base.t() > 1 { Ideal::new(ring, fiber.minors(base.t() - 1)) } else { Ideal::unit(ring) };
    let critical = Ideal::new(ring, gens).saturate(&deeper)?;
    match critical.dimension()? {
        d if d > 0 => Err(Error::NotIsolatedCriticalLocus(format!("{d}-dimensional critical locus on a fiber"))),
        _ => Ok(critical.quotient_count()?),
    }
}

/// One level of the section chain: the variety of dimension `dim`, the
/// hyperplane used to cut it and the polar multiplicity of that hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub dim: usize,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub form: String,
    /// Random draws needed to find an admissible form; 0 for a given form.
    pub form_attempts: usize,
    pub polar: PolarCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub nvars: usize,
    pub dim: usize,
    pub codim: usize,
    pub smoothability: SmoothabilityClass,
    pub hypersurface_type: bool,
    /// `multiplicities[k]` is the polar multiplicity `m_k`; `m_0` is the
    /// multiplicity of the zero-dimensional section.
    pub multiplicities: Vec<usize>,
    /// Top level first.
    pub levels: Vec<Level>,
    pub point_section: Vec<Vec<String>>,
    pub point_section_variables: Vec<String>,
    pub euler_characteristic: i64,
    pub vanishing_euler_characteristic: i64,
    /// Present for smoothable surfaces and curves.
    pub milnor_number: Option<i64>,
    /// Milnor number of the curve section of a smoothable surface.
    pub section_milnor_number: Option<i64>,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
    pub seed: u64,
    pub mode: String,
}

fn level_candidate<K: Field>(
    current: &DetVariety<K>,
    p: &LinearForm,
    settings: &Settings,
) -> Result<std::result::Result<(DetVariety<K>, PolarCount), String>> {
    let next = match crate::sections::admissible_section(current, p)? {
        Ok(w) => w,
        Err(reason) => return Ok(Err(reason)),
    };
    match polar_multiplicity(current, p, settings) {
        Ok(c) => Ok(Ok((next, c))),
        Err(Error::NotIsolatedCriticalLocus(reason)) => Ok(Err(reason)),
        Err(e) => Err(e),
    }
}

/// Polar multiplicities `m_d, ..., m_0` along a chain of admissible
/// sections, the Euler characteristic `sum (-1)^k m_k` of the smoothing, the
/// vanishing Euler characteristic `(-1)^d (chi - 1)` and, for smoothable
/// curves and surfaces, the Milnor number.
pub fn invariant_chain<K: Field>(v: &DetVariety<K>, settings: &Settings) -> Result<InvariantReport> {
    invariant_chain_with(v, None, settings)
}

/// As [`invariant_chain`], cutting the top level by `first` when given.
pub fn invariant_chain_with<K: Field>(
    v: &DetVariety<K>,
    first: Option<&LinearForm>,
    settings: &Settings,
) -> Result<InvariantReport> {
    let verdict = v.is_eids()?;
    if !verdict.eids {
        let bad = verdict.strata.last().map_or(0, |s| s.stratum);
        return Err(Error::HypothesisViolation(format!("not an EIDS: stratum {bad} is not transversal near the origin")));
    }
    let d = v.dim();
    let mut levels = Vec::with_capacity(d);
    let mut current = v.clone();
    let mut warnings = Vec::new();
    for j in 0..d {
        let dim = current.dim();
        let polar_settings = settings.child(200 + j as u64);
        let (p, attempts, next, polar) = match (j, first) {
            (0, Some(p)) => match level_candidate(&current, p, &polar_settings).map_err(|e| e.at_level(dim))? {
                Ok((next, polar)) => (p.clone(), 0, next, polar),
                Err(reason) => return Err(Error::HypothesisViolation(format!("hyperplane {p}: {reason}"))),
            },
            _ => {
                let mut rng = random::rng(random::derive_seed(settings.seed, 100 + j as u64), 0);
                let mut found = None;
                for attempt in 0..settings.retries {
                    let p = LinearForm::random(current.ring(), &mut rng, settings.coeff_bound);
                    if let Ok((next, polar)) =
                        level_candidate(&current, &p, &polar_settings).map_err(|e| e.at_level(dim))?
                    {
                        found = Some((p, attempt + 1, next, polar));
                        break;
                    }
                }
                found.ok_or_else(|| {
                    Error::DegenerateAfterRetries {
                        what: "admissible hyperplane with isolated polar locus".into(),
                        attempts: settings.retries,
                    }
                    .at_level(dim)
                })?
            }
        };
        if !polar.paths_agree() {
            warnings.push(format!(
                "dimension {dim}: {} critical points in the family, {:?} on the fiber",
                polar.critical_points, polar.fiber_count
            ));
        }
        levels.push(Level {
            dim,
            variables: current.ring().vars().to_vec(),
            matrix: current.matrix().to_strings(),
            form: p.to_string(),
            form_attempts: attempts,
            polar,
        });
        current = next;
    }
    let m0 = current.ideal().local_count_at_origin().map_err(|e| Error::from(e).at_level(0))?;
    let mut multiplicities = vec![m0];
    multiplicities.extend(levels.iter().rev().map(|l| l.polar.value()));
    let chi: i64 = multiplicities.iter().enumerate().map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) }).sum();
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let nu = sign * (chi - 1);
    let class = v.smoothability_class();
    let smoothable = class == SmoothabilityClass::IsolatedSmoothable;
    let mk = |k: usize| multiplicities[k] as i64;
    let (milnor_number, section_milnor_number) = match (d, smoothable) {
        (2, true) => (Some(chi - 1), Some(mk(1) - mk(0) + 1)),
        (1, true) => (Some(mk(1) - mk(0) + 1), None),
        _ => (None, None),
    };
    let mut assumptions = vec![
        "the smoothing is a fiber of a generic linear perturbation of the matrix".to_string(),
        "each hyperplane is transversal to the rank strata near the origin".to_string(),
    ];
    if !smoothable {
        assumptions.push("no smoothing exists: counts refer to the regular part of the essential smoothing".into());
    }
    if v.is_hypersurface_type() {
        warnings.push("determinantal hypersurface (t = m = n)".into());
    }
    Ok(InvariantReport {
        m: v.m(),
        n: v.n(),
        t: v.t(),
        nvars: v.nvars(),
        dim: d,
        codim: v.codim(),
        smoothability: class,
        hypersurface_type: v.is_hypersurface_type(),
        multiplicities,
        levels,
        point_section: current.matrix().to_strings(),
        point_section_variables: current.ring().vars().to_vec(),
        euler_characteristic: chi,
        vanishing_euler_characteristic: nu,
        milnor_number,
        section_milnor_number,
        assumptions,
        warnings,
        seed: settings.seed,
        mode: K::NAME.to_string(),
    })
}

/// Milnor number of a smoothable determinantal curve: `m_1 - m_0 + 1`.
pub fn milnor_number_curve<K: Field>(v: &DetVariety<K>, settings: &Settings) -> Result<i64> {
    if v.dim() != 1 {
        return Err(Error::WrongDimension { expected: 1, actual: v.dim() });
    }
    if v.smoothability_class() != SmoothabilityClass::IsolatedSmoothable {
        return Err(Error::HypothesisViolation("the curve does not admit a smoothing".into()));
    }
    let r = invariant_chain(v, settings)?;
    Ok(r.milnor_number.expect("smoothable curve"))
}

/// Both sides of `nu(X) + nu(X ∩ H) = m_d(X, p)`, each from an independent
/// computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeGreuelCheck {
    pub form: String,
    pub vanishing_euler_characteristic: i64,
    pub section_vanishing_euler_characteristic: i64,
    pub polar: PolarCount,
    pub holds: bool,
}

pub fn le_greuel_check<K: Field>(
    v: &DetVariety<K>,
    p: Option<&LinearForm>,
    settings: &Settings,
) -> Result<LeGreuelCheck> {
    if v.dim() == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    let (p, w) = match p {
        Some(p) => match crate::sections::admissible_section(v, p)? {
            Ok(w) => (p.clone(), w),
            Err(reason) => return Err(Error::HypothesisViolation(format!("hyperplane {p}: {reason}"))),
        },
        None => {
            let (p, w, _) = crate::sections::random_admissible_section(v, random::derive_seed(settings.seed, 1), settings)?;
            (p, w)
        }
    };
    let whole = invariant_chain(v, &settings.child(2))?;
    let part = invariant_chain(&w, &settings.child(3))?;
    let polar = polar_multiplicity(v, &p, &settings.child(4))?;
    let lhs = whole.vanishing_euler_characteristic + part.vanishing_euler_characteristic;
    Ok(LeGreuelCheck {
        form: p.to_string(),
        vanishing_euler_characteristic: whole.vanishing_euler_characteristic,
        section_vanishing_euler_characteristic: part.vanishing_euler_characteristic,
        holds: lhs == polar.value() as i64,
        polar,
    })
}


#[cfg(test)]
mod chain_tests {
    use super::*;
    use crate::field::Q;
    use crate::monomial::MonomialOrder;
    use crate::ring::Ring;

    #[test]
    fn example_two_chain() {
        let ring = Ring::new(&["x", "y", "z", "w"], MonomialOrder::DegRevLex).unwrap();
        let f = PolyMatrix::<Q>::parse(&ring, &[vec!["z", "y + w", "x"], vec!["w", "x", "y"]]).unwrap();
        let v = DetVariety::build(f, 2).unwrap();
        let p = LinearForm::parse(&ring, "w").unwrap();
        let r = invariant_chain_with(&v, Some(&p), &Settings::default()).unwrap();
        assert_eq!(r.multiplicities, vec![3, 4, 3]);
        assert_eq!(r.milnor_number, Some(1));
        assert_eq!(r.section_milnor_number, Some(2));
    }
}
