//! Acceptance criteria. Runs sequentially and prints one PASS/FAIL line per
//! criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eids::ideal::{milnor_number_isolated_hypersurface, Ideal};
use eids::invariants::{invariant_chain, invariant_chain_with, le_greuel_check, InvariantReport};
use eids::parse::parse_poly;
use eids::sections::{
    is_strongly_general_against, minimal_invariant_search, section, section_invariance_check, SearchReport,
};
use eids::{DetVariety, Limits, LinearForm, MonomialOrder, Poly, Ring, Settings, Substitute, Substitution, Verdict, Q};
use eids_cli::{run, Command, RunConfig, VarietyDescriptor};
use rand::Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fixture(name: &str) -> VarietyDescriptor {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    VarietyDescriptor::read(path.as_ref()).expect("fixture parses")
}

fn variety(name: &str) -> DetVariety<Q> {
    fixture(name).build::<Q>(Limits::default()).expect("fixture builds")
}

fn form(v: &DetVariety<Q>, src: &str) -> LinearForm {
    LinearForm::parse(v.ring(), src).expect("form parses")
}

fn cli(command: Command, name: &str, config: &RunConfig) -> Result<Value, String> {
    let d = fixture(name);
    let out = run(&command, Some(&d), config).map_err(|f| format!("{name}: {f}"))?;
    Ok(out.report.result)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Shared searches, computed once.
struct Searches {
    example4: SearchReport,
    minimum_milnor_number: Option<i64>,
    example4_elapsed: Duration,
}

fn criterion_1() -> Outcome {
    let r = cli(
        Command::Invariants { le_greuel: false, hyperplane: Some("w".into()) },
        "example2",
        &RunConfig::default(),
    )?;
    let inv = &r["invariants"];
    let m2 = &inv["multiplicities"][2];
    ensure!(*m2 == 3, "m_2 = {m2}, expected 3");
    ensure!(inv["section_milnor_number"] == 2, "curve section mu = {}, expected 2", inv["section_milnor_number"]);
    ensure!(inv["milnor_number"] == 1, "mu = {}, expected 1", inv["milnor_number"]);
    Ok(format!("m = {}, mu = 1, mu(section by w) = 2", inv["multiplicities"]))
}

fn criterion_2() -> Outcome {
    let r = cli(Command::Invariants { le_greuel: false, hyperplane: None }, "example5_c4", &RunConfig::default())?;
    let inv = &r["invariants"];
    ensure!(inv["milnor_number"] == 1, "mu = {}, expected 1", inv["milnor_number"]);
    Ok(format!("m = {}, mu = 1", inv["multiplicities"]))
}

fn criterion_3(searches: &Searches) -> Outcome {
    let start = Instant::now();
    let v = variety("example4");
    let settings = Settings::default();
    let mut mus = Vec::new();
    for (src, expected) in [("w - z", 4), ("x - v", 2)] {
        let w = section(&v, &form(&v, src)).map_err(err)?;
        let mu = invariant_chain(&w, &settings).map_err(err)?.milnor_number;
        ensure!(mu == Some(expected), "mu(X cut by {src}) = {mu:?}, expected {expected}");
        mus.push(format!("mu({src}) = {expected}"));
    }
    let s = &searches.example4;
    ensure!(s.trials.len() >= 8, "only {} trials", s.trials.len());
    ensure!(
        searches.minimum_milnor_number == Some(2),
        "search minimum mu {:?}, expected 2",
        searches.minimum_milnor_number
    );
    let wz = is_strongly_general_against(&v, &form(&v, "w - z"), s, &settings).map_err(err)?;
    ensure!(
        matches!(wz.verdict, Verdict::NotStronglyGeneral { .. }),
        "w - z verdict {:?}, expected not strongly general",
        wz.verdict
    );
    let xv = is_strongly_general_against(&v, &form(&v, "x - v"), s, &settings).map_err(err)?;
    ensure!(xv.verdict == Verdict::StronglyGeneral, "x - v verdict {:?}", xv.verdict);
    ensure!(xv.section_milnor_number == Some(2), "x - v section mu {:?}", xv.section_milnor_number);
    let elapsed = start.elapsed() + searches.example4_elapsed;
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!(
        "{}, search minimum {:?} over {} trials, w - z not strongly general, x - v strongly general, {:.0}s",
        mus.join(", "),
        s.minimum,
        s.trials.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    let v = variety("example1");
    let mut forms = Vec::new();
    for seed in 1..=3 {
        let c = le_greuel_check(&v, None, &Settings::default().with_seed(seed)).map_err(err)?;
        ensure!(
            c.holds,
            "surface identity fails for {}: {} + {} != {}",
            c.form,
            c.vanishing_euler_characteristic,
            c.section_vanishing_euler_characteristic,
            c.polar.value()
        );
        forms.push(c.form);
    }
    forms.dedup();
    ensure!(forms.len() == 3, "seeded forms coincide: {forms:?}");
    lines.push(format!("surface identity on 3 forms ({})", forms.join("; ")));
    let v = variety("example4");
    let c = le_greuel_check(&v, Some(&form(&v, "x - v")), &Settings::default()).map_err(err)?;
    ensure!(
        c.holds,
        "3-fold identity fails: {} + {} != {}",
        c.vanishing_euler_characteristic,
        c.section_vanishing_euler_characteristic,
        c.polar.value()
    );
    lines.push(format!(
        "3-fold identity with x - v: {} + {} = {}",
        c.vanishing_euler_characteristic,
        c.section_vanishing_euler_characteristic,
        c.polar.value()
    ));
    Ok(lines.join(", "))
}

fn general_sections(name: &str, v: &DetVariety<Q>, search: &SearchReport) -> Outcome {
    let settings = Settings::default();
    let mut checked = 0;
    for trial in search.trials.iter().filter(|t| t.key.values == search.minimum) {
        let p = form(v, &trial.form);
        let g = is_strongly_general_against(v, &p, search, &settings).map_err(err)?;
        ensure!(g.verdict == Verdict::StronglyGeneral, "{name}: {} is {:?}", trial.form, g.verdict);
        let w = section(v, &p).map_err(err)?;
        ensure!(
            (w.m(), w.n(), w.t()) == (v.m(), v.n(), v.t()),
            "{name}: section by {} has type ({}, {}, {})",
            trial.form,
            w.m(),
            w.n(),
            w.t()
        );
        ensure!(w.dim() + 1 == v.dim(), "{name}: section by {} has dimension {}", trial.form, w.dim());
        ensure!(w.is_eids().map_err(err)?.eids, "{name}: section by {} is not an EIDS", trial.form);
        checked += 1;
        if checked == 3 {
            break;
        }
    }
    ensure!(checked == 3, "{name}: only {checked} sampled forms attain the minimum {:?}", search.minimum);
    Ok(format!("{name}: 3"))
}

fn criterion_5(searches: &Searches) -> Outcome {
    let mut done = Vec::new();
    for name in ["example1", "example5_c4", "smooth_line", "example5_c7"] {
        let v = variety(name);
        ensure!(v.is_eids().map_err(err)?.eids, "{name} is not an EIDS");
        let search = minimal_invariant_search(&v, &Settings::default().with_seed(5)).map_err(err)?;
        done.push(general_sections(name, &v, &search)?);
    }
    done.push(general_sections("example4", &variety("example4"), &searches.example4)?);
    Ok(format!("strongly general sections are EIDS of the same type, one dimension lower ({})", done.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut done = Vec::new();
    for (name, expected) in [("example5_c7", 1), ("example4", 2)] {
        let r = section_invariance_check(&variety(name), 1, 2, &Settings::default()).map_err(err)?;
        ensure!(r.agree, "{name}: surface mu differ across seeds: {:?}", r.milnor_numbers);
        ensure!(
            r.milnor_numbers.iter().all(|m| *m == Some(expected)),
            "{name}: surface mu {:?}, expected {expected}",
            r.milnor_numbers
        );
        done.push(format!("{name}: {expected}, {expected}"));
    }
    Ok(format!("surface mu over seeds 1 and 2 ({})", done.join("; ")))
}

fn criterion_7() -> Outcome {
    let xy = Ring::new(&["x", "y"], MonomialOrder::DegRevLex).map_err(err)?;
    let xyz = Ring::new(&["x", "y", "z"], MonomialOrder::DegRevLex).map_err(err)?;
    // (ring, generators, dimension, quotient count, local count)
    let cases: Vec<(&_, Vec<&str>, i64, Option<usize>, Option<usize>)> = vec![
        (&xy, vec!["x", "y"], 0, Some(1), Some(1)),
        (&xy, vec!["x^2", "y^2"], 0, Some(4), Some(4)),
        (&xy, vec!["x^3", "y"], 0, Some(3), Some(3)),
        (&xy, vec!["x*y", "x + y"], 0, Some(2), Some(2)),
        (&xy, vec!["x^2 - x", "y"], 0, Some(2), Some(1)),
        (&xy, vec!["x^2 - x", "y^2 - y"], 0, Some(4), Some(1)),
        (&xy, vec!["x^3 - x^2", "y^2"], 0, Some(6), Some(4)),
        (&xy, vec!["x - 1", "y"], 0, Some(1), Some(0)),
        (&xy, vec!["y - x^2", "x^3"], 0, Some(3), Some(3)),
        (&xy, vec!["1"], -1, Some(0), Some(0)),
        (&xy, vec!["x"], 1, None, None),
        (&xyz, vec!["0"], 3, None, None),
        (&xyz, vec!["x*y", "x*z", "y*z"], 1, None, None),
        (&xyz, vec!["x", "y", "z^2"], 0, Some(2), Some(2)),
    ];
    for (ring, gens, dim, count, local) in &cases {
        let polys: Vec<Poly<Q>> = gens.iter().map(|g| parse_poly(ring, g).unwrap()).collect();
        let i = Ideal::new(ring, polys);
        let d = i.dimension().map_err(err)?;
        ensure!(d == *dim, "dim <{}> = {d}, expected {dim}", gens.join(", "));
        if let (Some(count), Some(local)) = (count, local) {
            let q = i.quotient_count().map_err(err)?;
            ensure!(q == *count, "count <{}> = {q}, expected {count}", gens.join(", "));
            let l = i.local_count_at_origin().map_err(err)?;
            ensure!(l == *local, "local count <{}> = {l}, expected {local}", gens.join(", "));
            if *count > 0 {
                let away = i.saturate(&Ideal::origin(ring)).map_err(err)?.quotient_count().map_err(err)?;
                ensure!(l + away == q, "<{}>: {l} + {away} != {q}", gens.join(", "));
            }
        }
    }
    for (f, expected) in [("x^2 + y^2", 1), ("x^2 + y^3", 2), ("x^3 + y^3", 4)] {
        let mu = milnor_number_isolated_hypersurface(&parse_poly(&xy, f).unwrap()).map_err(err)?;
        ensure!(mu == expected, "mu({f}) = {mu}, expected {expected}");
    }
    Ok(format!("{} ideals and 3 Milnor numbers", cases.len()))
}

fn criterion_8() -> Outcome {
    let r = run(&Command::DemoSwallowtail, None, &RunConfig::default()).map_err(err)?.report.result;
    ensure!(r["tangent_cone"] == "z^3", "tangent cone {}", r["tangent_cone"]);
    let sections = r["sections"].as_array().ok_or("no sections")?;
    let mut seen = Vec::new();
    for s in sections {
        ensure!(s["reduced"] == false, "section {} reported reduced", s["hyperplane"]);
        seen.push(format!("{} gives {} (repeated factor {})", s["hyperplane"], s["equation"], s["repeated_factor"]));
    }
    ensure!(seen.len() == 2, "expected sections by z = 0 and x = 0");
    Ok(format!("tangent cone z^3; {}", seen.join("; ")))
}

/// Every integer the chain reports.
fn integers(r: &InvariantReport) -> (Vec<usize>, i64, i64, Option<i64>, Option<i64>) {
    (r.multiplicities.clone(), r.euler_characteristic, r.vanishing_euler_characteristic, r.milnor_number, r.section_milnor_number)
}

fn unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    // lower unitriangular times upper unitriangular
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.gen_range(-3..=3);
            u[j][i] = rng.gen_range(-3..=3);
        }
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| l[i][k] * u[k][j]).sum()).collect()).collect()
}

fn to_q(a: &[Vec<i64>]) -> Vec<Vec<Q>> {
    a.iter().map(|row| row.iter().map(|&x| Q::new(x, 1)).collect()).collect()
}

fn criterion_9() -> Outcome {
    let settings = Settings::default();
    let mut rng = eids::random::rng(9, 0);
    let mut count = 0;
    for name in ["example2", "example5_c4"] {
        let v = variety(name);
        let base = integers(&invariant_chain(&v, &settings).map_err(err)?);
        for _ in 0..3 {
            // (a) linear change of coordinates
            let a = unimodular(&mut rng, v.nvars());
            let ring = v.ring();
            let mut s = Substitution::new(ring);
            for (i, row) in a.iter().enumerate() {
                let image = row.iter().enumerate().fold(Poly::zero(ring), |acc, (j, &c)| {
                    acc.add(&Poly::var(ring, j).scale(&Q::new(c, 1)))
                });
                s = s.assign(ring.var_name(i), image).map_err(err)?;
            }
            let moved = DetVariety::build(v.matrix().substitute(&s).map_err(err)?, v.t()).map_err(err)?;
            let got = integers(&invariant_chain(&moved, &settings).map_err(err)?);
            ensure!(got == base, "{name}: coordinate change {a:?} gives {got:?}, expected {base:?}");

            // (b) constant invertible row and column operations
            let left = to_q(&unimodular(&mut rng, v.m()));
            let right = to_q(&unimodular(&mut rng, v.n()));
            let matrix = v.matrix().left_mul(&left).and_then(|m| m.right_mul(&right)).map_err(err)?;
            let got = integers(&invariant_chain(&DetVariety::build(matrix, v.t()).map_err(err)?, &settings).map_err(err)?);
            ensure!(got == base, "{name}: row/column operations give {got:?}, expected {base:?}");

            // (c) rescaled first hyperplane
            let p = LinearForm::random(v.ring(), &mut rng, 7);
            let c = loop {
                let c = rng.gen_range(-9i64..=9);
                if c != 0 && c != 1 {
                    break c;
                }
            };
            let scaled = p.scaled(&num_rational::BigRational::from_integer(c.into())).map_err(err)?;
            let plain = integers(&invariant_chain_with(&v, Some(&p), &settings).map_err(err)?);
            let got = integers(&invariant_chain_with(&v, Some(&scaled), &settings).map_err(err)?);
            ensure!(got == plain, "{name}: {p} gives {plain:?} but {c}*({p}) gives {got:?}");
            count += 1;
        }
    }
    Ok(format!("{count} instances each of coordinate changes, row/column operations and rescaled forms"))
}

fn criterion_10() -> Outcome {
    let config = RunConfig { seed: 42, ..RunConfig::default() };
    let runs = [
        (Command::Check, "example1"),
        (Command::Invariants { le_greuel: true, hyperplane: None }, "example2"),
        (Command::Genericity { hyperplane: None, search: true }, "example5_c4"),
        (Command::DemoSwallowtail, ""),
    ];
    for (command, name) in &runs {
        let d = (!name.is_empty()).then(|| fixture(name));
        let a = run(command, d.as_ref(), &config).map_err(err)?.report.to_json();
        let b = run(command, d.as_ref(), &config).map_err(err)?.report.to_json();
        ensure!(a == b, "{} {name} differs between runs", command.name());
    }
    Ok(format!("{} commands reproduce byte-identical reports", runs.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let t = Instant::now();
    let found = cli(Command::Genericity { hyperplane: None, search: true }, "example4", &RunConfig::default())
        .expect("example 4 search runs");
    let searches = Searches {
        example4: serde_json::from_value(found["search"].clone()).expect("search report"),
        minimum_milnor_number: found["minimum_milnor_number"].as_i64(),
        example4_elapsed: t.elapsed(),
    };

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("example 2 invariants", Box::new(criterion_1)),
        ("example 5 surface in C^4", Box::new(criterion_2)),
        ("example 4 sections and search", Box::new(|| criterion_3(&searches))),
        ("Le-Greuel identities", Box::new(criterion_4)),
        ("general sections stay EIDS", Box::new(|| criterion_5(&searches))),
        ("surface Milnor number of generic sections", Box::new(criterion_6)),
        ("algebra oracles", Box::new(criterion_7)),
        ("swallowtail demo", Box::new(criterion_8)),
        ("invariance", Box::new(criterion_9)),
        ("replayability", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.0}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
