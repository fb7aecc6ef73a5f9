//! Hyperplane sections: substitution, transversality to the rank strata,
//! genericity through minimality of section invariants, iterated sections
//! down to a surface, and the swallowtail demonstration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detvar::{generic_codim, smoothability_bound, DetVariety, SmoothabilityClass, StratumCheck};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::ideal::{is_reduced_principal, poly_gcd, Ideal};
use crate::invariants::{invariant_chain, InvariantReport, Settings};
use crate::linear::LinearForm;
use crate::matrix::PolyMatrix;
use crate::monomial::MonomialOrder;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::random;
use crate::ring::Ring;

/// `F` restricted to `ker p`: the last variable with a nonzero coefficient is
/// solved for and substituted; the other variables keep their names.
pub fn section_matrix<K: Field>(v: &DetVariety<K>, p: &LinearForm) -> Result<PolyMatrix<K>> {
    if **p.ring() != **v.ring() {
        return Err(crate::error::AlgebraError::RingMismatch.into());
    }
    let ring = v.ring();
    let (j, rest) = p.solved_for_pivot();
    let target = ring.remove(j);
    let mut images = Vec::with_capacity(ring.nvars());
    let mut solved = Poly::zero(&target);
    for (k, c) in rest.iter().enumerate() {
        solved = solved.add(&Poly::var(&target, k).scale(&K::from_rational(c)?));
    }
    for i in 0..ring.nvars() {
        images.push(match i.cmp(&j) {
            std::cmp::Ordering::Less => Poly::var(&target, i),
            std::cmp::Ordering::Equal => solved.clone(),
            std::cmp::Ordering::Greater => Poly::var(&target, i - 1),
        });
    }
    Ok(v.matrix().compose(&target, &images))
}

/// `X ∩ ker p` as a determinantal variety of the same type in one variable
/// fewer.
pub fn section<K: Field>(v: &DetVariety<K>, p: &LinearForm) -> Result<DetVariety<K>> {
    if v.dim() == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    DetVariety::build(section_matrix(v, p)?, v.t())
}

/// Transversality of `ker p` to each rank stratum near the origin.
#[derive(Clone, Debug)]
pub struct TransversalityCheck<K: Field> {
    pub strata: Vec<StratumCheck>,
    pub ok: bool,
    pub witness: Option<Ideal<K>>,
}

/// For each stratum `i`: the `i`-minors, `p`, and the `(c_i+1)`-minors of
/// their Jacobian stacked with `dp`, saturated by the `(i-1)`-minors. Its
/// zero set is where `ker p` fails to be transversal to the stratum; the
/// germ at the origin must be contained in `{0}`.
pub fn hyperplane_transversality<K: Field>(v: &DetVariety<K>, p: &LinearForm) -> Result<TransversalityCheck<K>> {
    let ring = v.ring();
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let pp = p.to_poly::<K>()?;
    let dp: Vec<Poly<K>> = p.coeffs_in::<K>()?.into_iter().map(|c| Poly::constant(ring, c)).collect();
    let mut strata = Vec::with_capacity(v.t());
    let mut previous = Ideal::unit(ring);
    for i in 1..=v.t() {
        let current = v.stratum_ideal(i)?.clone();
        let c = generic_codim(v.m(), v.n(), i)?;
        let jac = PolyMatrix::jacobian(ring, current.gens(), &vars)?.with_row(dp.clone())?;
        let mut gens = current.gens().to_vec();
        gens.push(pp.clone());
        gens.extend(jac.minors(c + 1));
        let ideal = Ideal::new(ring, gens).saturate(&previous)?;
        let ok = ideal.germ_in_origin()?;
        strata.push(StratumCheck { stratum: i, dimension: ideal.dimension()?, ok });
        if !ok {
            return Ok(TransversalityCheck { strata, ok: false, witness: Some(ideal) });
        }
        previous = current;
    }
    Ok(TransversalityCheck { strata, ok: true, witness: None })
}

/// Why a hyperplane was rejected before any invariant was computed.
fn admissibility<K: Field>(v: &DetVariety<K>, p: &LinearForm) -> Result<std::result::Result<DetVariety<K>, String>> {
    let tr = hyperplane_transversality(v, p)?;
    if !tr.ok {
        let bad = tr.strata.last().map_or(0, |s| s.stratum);
        return Ok(Err(format!("not transversal to stratum {bad} near the origin")));
    }
    let w = match section(v, p) {
        Ok(w) => w,
        Err(Error::NotDeterminantal { expected, actual }) => {
            return Ok(Err(format!("section has codimension {actual}, expected {expected}")))
        }
        Err(e) => return Err(e),
    };
    if !w.is_eids()?.eids {
        return Ok(Err("section is not an EIDS".into()));
    }
    Ok(Ok(w))
}

/// Transversality to the strata plus the closure property: the section is
/// a determinantal EIDS of the same type. `Ok(Err(reason))` on rejection.
pub fn admissible_section<K: Field>(
    v: &DetVariety<K>,
    p: &LinearForm,
) -> Result<std::result::Result<DetVariety<K>, String>> {
    admissibility(v, p)
}

/// A seeded random admissible hyperplane and its section.
pub fn random_admissible_section<K: Field>(
    v: &DetVariety<K>,
    seed: u64,
    settings: &Settings,
) -> Result<(LinearForm, DetVariety<K>, usize)> {
    let mut rng = random::rng(seed, 0);
    let mut last = String::new();
    for attempt in 0..settings.retries {
        let p = LinearForm::random(v.ring(), &mut rng, settings.coeff_bound);
        match admissibility(v, &p)? {
            Ok(w) => return Ok((p, w, attempt + 1)),
            Err(reason) => last = reason,
        }
    }
    Err(Error::DegenerateAfterRetries { what: format!("admissible hyperplane ({last})"), attempts: settings.retries })
}

/// Minimality key of a section `W`: Milnor-type numbers of `W` sliced down
/// to a surface and of that surface's curve section, compared
/// lexicographically. Curves contribute their Milnor number, points their
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionKey {
    pub values: Vec<i64>,
    /// Extra hyperplanes used to reach a surface.
    pub slices: Vec<String>,
    pub seed: u64,
}

pub fn section_key<K: Field>(w: &DetVariety<K>, settings: &Settings) -> Result<SectionKey> {
    let mut current = w.clone();
    let mut slices = Vec::new();
    let mut step = 0u64;
    while current.dim() > 2 {
        let (p, next, _) = random_admissible_section(&current, random::derive_seed(settings.seed, 10 + step), settings)?;
        slices.push(p.to_string());
        current = next;
        step += 1;
    }
    let values = match current.dim() {
        0 => vec![current.ideal().local_count_at_origin()? as i64],
        _ => {
            let report = invariant_chain(&current, &settings.child(20))?;
            let m = &report.multiplicities;
            if current.dim() == 1 {
                vec![m[1] as i64 - m[0] as i64 + 1]
            } else {
                vec![m[0] as i64 - m[1] as i64 + m[2] as i64 - 1, m[1] as i64 - m[0] as i64 + 1]
            }
        }
    };
    Ok(SectionKey { values, slices, seed: settings.seed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub form: String,
    pub form_attempts: usize,
    pub key: SectionKey,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub trials: Vec<TrialRecord>,
    pub minimum: Vec<i64>,
    /// First trial attaining the minimum.
    pub witness: usize,
    /// The minimum was first reached in the first half of the trials.
    pub stable: bool,
    pub seed: u64,
}

impl SearchReport {
    pub fn witness_form(&self) -> &str {
        &self.trials[self.witness].form
    }
}

/// Section keys of `settings.trials` seeded admissible hyperplanes; the
/// lexicographic minimum and the first trial attaining it. Trials run in
/// parallel; the result does not depend on scheduling.
pub fn minimal_invariant_search<K: Field>(v: &DetVariety<K>, settings: &Settings) -> Result<SearchReport> {
    if settings.trials == 0 {
        return Err(Error::HypothesisViolation("at least one trial is required".into()));
    }
    if v.dim() == 0 {
        return Err(Error::WrongDimension { expected: 1, actual: 0 });
    }
    let results: Vec<Result<TrialRecord>> = (0..settings.trials)
        .into_par_iter()
        .map(|index| {
            let (p, w, attempts) =
                random_admissible_section(v, random::derive_seed(settings.seed, 1000 + index as u64), settings)?;
            let key = section_key(&w, &settings.child(2000 + index as u64))?;
            Ok(TrialRecord { index, form: p.to_string(), form_attempts: attempts, key })
        })
        .collect();
    let trials = results.into_iter().collect::<Result<Vec<_>>>()?;
    let (witness, minimum) = trials
        .iter()
        .enumerate()
        .fold(None::<(usize, &Vec<i64>)>, |best, (i, t)| match best {
            Some((_, b)) if *b <= t.key.values => best,
            _ => Some((i, &t.key.values)),
        })
        .map(|(i, m)| (i, m.clone()))
        .expect("at least one trial");
    let stable = witness < settings.trials.div_ceil(2);
    Ok(SearchReport { trials, minimum, witness, stable, seed: settings.seed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    Transversality,
    Generality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    StronglyGeneral,
    NotStronglyGeneral { leg: Leg, reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralityReport {
    pub form: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub transversality: Vec<StratumCheck>,
    /// The section matrix, when the section is a determinantal EIDS.
    pub section: Option<Vec<Vec<String>>>,
    pub key: Option<SectionKey>,
    /// Milnor number of a smoothable surface or curve section.
    pub section_milnor_number: Option<i64>,
    /// Reducedness of the section when it is a plane curve.
    pub reduced: Option<bool>,
    pub search: Option<SearchReport>,
}

/// Two legs: transversality of `ker p` to the strata near the origin (with
/// the section a determinantal EIDS of the same type), and minimality of the
/// section key against a seeded random search.
pub fn is_strongly_general<K: Field>(v: &DetVariety<K>, p: &LinearForm, settings: &Settings) -> Result<GeneralityReport> {
    strong_generality(v, p, None, settings)
}

/// As [`is_strongly_general`], comparing against a finished search of `v`
/// instead of running a new one.
pub fn is_strongly_general_against<K: Field>(
    v: &DetVariety<K>,
    p: &LinearForm,
    search: &SearchReport,
    settings: &Settings,
) -> Result<GeneralityReport> {
    strong_generality(v, p, Some(search), settings)
}

fn strong_generality<K: Field>(
    v: &DetVariety<K>,
    p: &LinearForm,
    given: Option<&SearchReport>,
    settings: &Settings,
) -> Result<GeneralityReport> {
    let tr = hyperplane_transversality(v, p)?;
    let mut report = GeneralityReport {
        form: p.to_string(),
        verdict: Verdict::StronglyGeneral,
        transversality: tr.strata.clone(),
        section: None,
        key: None,
        section_milnor_number: None,
        reduced: None,
        search: None,
    };
    let not = |leg, reason: String| Verdict::NotStronglyGeneral { leg, reason };
    if !tr.ok {
        let bad = tr.strata.last().map_or(0, |s| s.stratum);
        report.verdict = not(Leg::Transversality, format!("not transversal to stratum {bad} near the origin"));
        return Ok(report);
    }
    let w = match section(v, p) {
        Ok(w) => w,
        Err(Error::NotDeterminantal { expected, actual }) => {
            report.verdict =
                not(Leg::Transversality, format!("section has codimension {actual}, expected {expected}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.section = Some(w.matrix().to_strings());
    if !w.is_eids()?.eids {
        report.verdict = not(Leg::Transversality, "section is not an EIDS".into());
        return Ok(report);
    }
    if w.codim() == 1 && w.nvars() == 2 {
        let f = &w.ideal().groebner_basis()?[0];
        let reduced = is_reduced_principal(f)?;
        report.reduced = Some(reduced);
        if !reduced {
            report.verdict = not(Leg::Generality, "plane-curve section is not reduced".into());
            return Ok(report);
        }
    }
    let key = section_key(&w, &settings.child(1))?;
    if w.dim() <= 2 && w.dim() > 0 && w.smoothability_class() == SmoothabilityClass::IsolatedSmoothable {
        report.section_milnor_number = Some(key.values[0]);
    }
    let search = match given {
        Some(s) => s.clone(),
        None => minimal_invariant_search(v, &settings.child(2))?,
    };
    report.verdict = if key.values > search.minimum {
        not(Leg::Generality, format!("section key {:?} exceeds the minimum {:?}", key.values, search.minimum))
    } else if key.values < search.minimum {
        Verdict::Inconclusive {
            reason: format!("section key {:?} is below the sampled minimum {:?}", key.values, search.minimum),
        }
    } else if !search.stable {
        Verdict::Inconclusive {
            reason: format!("sampled minimum first reached at trial {} of {}", search.witness + 1, search.trials.len()),
        }
    } else {
        Verdict::StronglyGeneral
    };
    report.key = Some(key);
    report.search = Some(search);
    Ok(report)
}

/// Iterated sections from `X` down to a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionChain {
    pub forms: Vec<String>,
    /// Matrices of the successive sections, each in one variable fewer.
    pub matrices: Vec<Vec<Vec<String>>>,
    pub variables: Vec<Vec<String>>,
    pub dims: Vec<usize>,
    pub searches: Vec<SearchReport>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSection {
    pub chain: SectionChain,
    pub surface: InvariantReport,
}

/// Cuts `X` (dimension > 2) by one hyperplane at a time: each step runs the
/// minimality search and takes its witness, which is strongly general by
/// construction when the search is stable. The resulting surface must
/// admit a smoothing.
pub fn generic_surface_section<K: Field>(v: &DetVariety<K>, settings: &Settings) -> Result<SurfaceSection> {
    if v.dim() <= 2 {
        return Err(Error::WrongDimension { expected: 3, actual: v.dim() });
    }
    let bound = smoothability_bound(v.m(), v.n(), v.t())?;
    if v.codim() + 2 >= bound {
        return Err(Error::HypothesisViolation(format!(
            "codimension {} is not below (m-t+2)(n-t+2) - 2 = {}",
            v.codim(),
            bound as i64 - 2
        )));
    }
    let mut chain = SectionChain {
        forms: Vec::new(),
        matrices: Vec::new(),
        variables: Vec::new(),
        dims: Vec::new(),
        searches: Vec::new(),
        seed: settings.seed,
    };
    let mut current = v.clone();
    let mut step = 0u64;
    while current.dim() > 2 {
        let search = minimal_invariant_search(&current, &settings.child(100 + step))?;
        if !search.stable {
            return Err(Error::Inconclusive(format!(
                "at dimension {}: sampled minimum first reached at trial {} of {}",
                current.dim(),
                search.witness + 1,
                search.trials.len()
            )));
        }
        let p = LinearForm::parse(current.ring(), search.witness_form())?;
        current = section(&current, &p).map_err(|e| e.at_level(current.dim()))?;
        chain.forms.push(p.to_string());
        chain.matrices.push(current.matrix().to_strings());
        chain.variables.push(current.ring().vars().to_vec());
        chain.dims.push(current.dim());
        chain.searches.push(search);
        step += 1;
    }
    if current.smoothability_class() != SmoothabilityClass::IsolatedSmoothable {
        return Err(Error::HypothesisViolation("the surface section does not admit a smoothing".into()));
    }
    let surface = invariant_chain(&current, &settings.child(200))?;
    Ok(SurfaceSection { chain, surface })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub seeds: [u64; 2],
    pub milnor_numbers: [Option<i64>; 2],
    pub agree: bool,
    pub sections: Vec<SurfaceSection>,
}

/// Two surface sections from independent seeds; their Milnor numbers must
/// agree.
pub fn section_invariance_check<K: Field>(
    v: &DetVariety<K>,
    seed1: u64,
    seed2: u64,
    settings: &Settings,
) -> Result<InvarianceReport> {
    let a = generic_surface_section(v, &settings.with_seed(seed1))?;
    let b = generic_surface_section(v, &settings.with_seed(seed2))?;
    let mus = [a.surface.milnor_number, b.surface.milnor_number];
    Ok(InvarianceReport { seeds: [seed1, seed2], milnor_numbers: mus, agree: mus[0].is_some() && mus[0] == mus[1], sections: vec![a, b] })
}

/// The swallowtail surface (discriminant of `t^4 + y t^2 + x t + z`).
pub const SWALLOWTAIL: &str = "256*z^3 - 27*x^4 - 128*z^2*y^2 + 144*z*x^2*y + 16*z*y^4 - 4*x^2*y^3";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneSection {
    pub hyperplane: String,
    pub equation: String,
    pub reduced: bool,
    /// `gcd(f, df)`: the repeated factors (constant when reduced).
    pub repeated_factor: String,
    /// The hyperplane contains a component of the tangent cone.
    pub contains_tangent_cone_component: bool,
    /// Transversality near the origin to the smooth part (index 0) and to
    /// the singular curves (index 1).
    pub strata: Vec<StratumCheck>,
    /// Zero set of the transversality ideal of the singular curves.
    pub curve_stratum_ideal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwallowtailReport {
    pub equation: String,
    pub tangent_cone: String,
    pub eids: bool,
    pub singular_locus_dimension: i64,
    pub sections: Vec<PlaneSection>,
}

/// Tangent cone of a hypersurface: its lowest homogeneous part, made monic.
pub fn tangent_cone<K: Field>(f: &Poly<K>) -> Poly<K> {
    f.lowest_part().monic()
}

fn hypersurface_section(f: &Poly<Q>, p: &LinearForm) -> Result<PlaneSection> {
    let ring = f.ring();
    let v = DetVariety::build(PolyMatrix::new(ring, vec![vec![f.clone()]])?, 1)?;
    let w = section_matrix(&v, p)?;
    let g = w.get(0, 0).clone();
    let target = g.ring().clone();
    let mut gcd = g.clone();
    for i in 0..target.nvars() {
        gcd = poly_gcd(&gcd, &g.derivative(i))?;
    }
    let cone = tangent_cone(f);
    let pp = p.to_poly::<Q>()?;
    let contains = Ideal::new(ring, vec![pp.clone()]).contains(&cone)?;

    // strata: smooth part V(f) \ Sing, and the singular curves Sing \ {0}
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let singular = Ideal::new(ring, std::iter::once(f.clone()).chain(vars.iter().map(|&i| f.derivative(i))).collect());
    let dp: Vec<Poly<Q>> = p.coeffs_in::<Q>()?.into_iter().map(|c| Poly::constant(ring, c)).collect();
    let grad: Vec<Poly<Q>> = vars.iter().map(|&i| f.derivative(i)).collect();
    let pair = PolyMatrix::new(ring, vec![grad, dp])?;
    let mut gens = vec![f.clone(), pp.clone()];
    gens.extend(pair.minors(2));
    let smooth_part = Ideal::new(ring, gens).saturate(&singular)?;
    // a curve stratum meets ker p away from 0 only if ker p contains a branch
    let curves = singular.add_gens(&[pp]);
    let strata = vec![
        StratumCheck { stratum: 2, dimension: smooth_part.dimension()?, ok: smooth_part.germ_in_origin()? },
        StratumCheck { stratum: 1, dimension: curves.dimension()?, ok: curves.germ_in_origin()? },
    ];
    let curve_basis: Vec<String> = curves.groebner_basis()?.iter().map(|g| g.to_string()).collect();
    Ok(PlaneSection {
        hyperplane: format!("{p} = 0"),
        equation: g.to_string(),
        reduced: is_reduced_principal(&g)?,
        repeated_factor: gcd.to_string(),
        contains_tangent_cone_component: contains,
        strata,
        curve_stratum_ideal: format!("<{}>", curve_basis.join(", ")),
    })
}

/// Tangent cone, EIDS verdict as a type (1,1,1) variety, and the sections by
/// `z = 0` and `x = 0` of the swallowtail.
pub fn swallowtail_demo() -> Result<SwallowtailReport> {
    let ring = Ring::new(&["x", "y", "z"], MonomialOrder::DegRevLex)?;
    let f = parse_poly(&ring, SWALLOWTAIL).map_err(crate::error::AlgebraError::from)?;
    let v = DetVariety::build(PolyMatrix::new(&ring, vec![vec![f.clone()]])?, 1)?;
    let verdict = v.is_eids()?;
    let sing = crate::ideal::jacobian_ideal(&f).add_gens(&[f.clone()]);
    let mut sections = Vec::new();
    for h in ["z", "x"] {
        sections.push(hypersurface_section(&f, &LinearForm::parse(&ring, h)?)?);
    }
    Ok(SwallowtailReport {
        equation: f.to_string(),
        tangent_cone: tangent_cone(&f).to_string(),
        eids: verdict.eids,
        singular_locus_dimension: sing.dimension()?,
        sections,
    })
}
