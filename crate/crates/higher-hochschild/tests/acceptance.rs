//! One PASS/FAIL line per acceptance criterion.
//!
//! Every comparison is exact: dimensions are integers, matrices are over ℚ.
//! A criterion that cannot be met is printed as FAIL with the reason; the
//! binary still exits 0 so the rest of the suite runs.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::Coefficients;
use higher_hochschild::bar::{classical_hochschild_oracle, multiplication_module, periodic_tor_oracle, two_sided_bar};
use higher_hochschild::cdga::{dual_numbers, exterior, koszul, polynomial, GradedAlgebra};
use higher_hochschild::factorization::{cech_compare, cech_complex, CombinatorialCover};
use higher_hochschild::hochschild::{
    build_complex, pushout_comparison, BuildOptions, HochschildComplex, HochschildError,
};
use higher_hochschild::homology::homology;
use higher_hochschild::simplicial::{
    circle_gluing, cylinder_gluing, disjoint_union, product, standard_model, torus_gluing, FiniteSimplicialSet,
};

/// Largest tensor basis (window plus streamed incoming degree) any build may enumerate.
const BASIS_CAP: usize = 5_000_000;

const C1_WINDOW: i32 = -6;
const C1_BUDGET: Duration = Duration::from_secs(5 * 60);
const C2_LEVEL: usize = 6;
const C3_WINDOW: i32 = -5;
const C3_EXPECTED: [usize; 6] = [2, 1, 1, 1, 1, 1];
const C4_WINDOW: i32 = -4;
const C5_WINDOW: i32 = -4;
const C6_LEVEL: usize = 4;
const C7_WINDOW: i32 = -3;
const C7_BUDGET: Duration = Duration::from_secs(30 * 60);
const C8_WINDOW: i32 = -3;
const C8_EXPECTED: [usize; 4] = [1, 0, 0, 0];
const C9_WINDOW: i32 = -3;
const C9_CAP: usize = 5;
const C10_WINDOW: i32 = -4;
const C10_CAP: usize = 8;
const C11_PAIRS: usize = 200;
const C11_TRIPLES: usize = 200;
const C11_WINDOW: i32 = -9;
const C12_WINDOW: i32 = -4;

const MODELS: [&str; 15] = [
    "point",
    "delta(1)",
    "delta(2)",
    "delta(3)",
    "boundary_delta(2)",
    "boundary_delta(3)",
    "sphere(1)",
    "sphere(2)",
    "sphere(3)",
    "interval",
    "square",
    "circle_minimal",
    "circle_two_cell",
    "cylinder",
    "torus_glued",
];

fn algebras() -> Vec<GradedAlgebra> {
    vec![dual_numbers(), exterior(-1), polynomial(-2), koszul()]
}

fn model(name: &str) -> FiniteSimplicialSet {
    standard_model(name).expect("standard model")
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn capped(x: &FiniteSimplicialSet, a: &GradedAlgebra, n_min: i32, normalized: bool) -> Result<HochschildComplex, HochschildError> {
    build_complex(x, a, None, n_min, &BuildOptions { normalized, max_basis: Some(BASIS_CAP) })
}

fn uncapped(x: &FiniteSimplicialSet, a: &GradedAlgebra, n_min: i32, normalized: bool) -> HochschildComplex {
    build_complex(x, a, None, n_min, &BuildOptions { normalized, max_basis: None }).expect("build")
}

/// Trusted homology dimensions from degree 0 down.
fn dims(c: &HochschildComplex) -> Vec<usize> {
    homology(c, false).trusted_dims()
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len().min(b.len())).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
}

/// The lowest window in `from..=-1` where `check` succeeds on a capped build.
fn widest_feasible(from: i32, mut check: impl FnMut(i32) -> Option<bool>) -> Option<i32> {
    (from..=-1).find(|&w| check(w) == Some(true))
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let (mut verified, mut broken, mut infeasible) = (0, Vec::new(), Vec::new());
    for name in MODELS {
        let x = model(name);
        for a in algebras() {
            for normalized in [false, true] {
                let tag = format!("{name} × {}{}", a.name(), if normalized { " (normalized)" } else { "" });
                match capped(&x, &a, C1_WINDOW, normalized) {
                    Ok(c) => match c.check_d_squared() {
                        Ok(()) => verified += 1,
                        Err(e) => broken.push(format!("{tag}: {e}")),
                    },
                    Err(HochschildError::BasisCap { .. }) => {
                        let reach = widest_feasible(C1_WINDOW + 1, |w| {
                            capped(&x, &a, w, normalized).ok().map(|c| c.check_d_squared().is_ok())
                        });
                        let level = (1 - C1_WINDOW) as usize;
                        infeasible.push(format!(
                            "{tag} ({} simplices in level {level}; D² = 0 verified on [{}, 0])",
                            x.level_size(level),
                            reach.map_or("none".into(), |w| w.to_string())
                        ));
                    }
                    Err(e) => broken.push(format!("{tag}: {e}")),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = broken.is_empty() && infeasible.is_empty() && elapsed < C1_BUDGET;
    let mut detail = format!("{verified} builds verified in {:.0?}", elapsed);
    if elapsed >= C1_BUDGET {
        detail += &format!(" (over the {:.0?} budget)", C1_BUDGET);
    }
    if !broken.is_empty() {
        detail += &format!("; D² ≠ 0: {}", broken.join(", "));
    }
    if !infeasible.is_empty() {
        detail += &format!("; over the {BASIS_CAP}-tensor cap at [{C1_WINDOW}, 0]: {}", infeasible.join(", "));
    }
    Verdict::new(pass, detail)
}

fn criterion_2() -> Verdict {
    let mut compared = 0;
    for a in [dual_numbers(), exterior(-1)] {
        for coeff in [Coefficients::None, Coefficients::Regular, Coefficients::Augmentation] {
            match common::compare_with_classical(&a, coeff, C2_LEVEL) {
                Ok(n) => compared += n,
                Err(e) => return Verdict::new(false, format!("{} with {coeff:?}: {e}", a.name())),
            }
        }
    }
    Verdict::new(true, format!("{compared} face and internal matrices equal through level {C2_LEVEL}"))
}

fn criterion_3() -> Verdict {
    let a = dual_numbers();
    let simplicial = dims(&uncapped(&model("circle_minimal"), &a, C3_WINDOW, false));
    let classical = match classical_hochschild_oracle(&a, None, C3_WINDOW) {
        Ok(o) => homology(o.complex(), false).trusted_dims(),
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let tor = periodic_tor_oracle(C3_WINDOW);
    let pass = [&simplicial, &classical, &tor].iter().all(|d| d[..] == C3_EXPECTED[..]);
    Verdict::new(pass, format!("simplicial {simplicial:?}, classical {classical:?}, Tor {tor:?}, expected {C3_EXPECTED:?}"))
}

fn criterion_4() -> Verdict {
    let (mut equal, mut failures) = (0, Vec::new());
    for (p, q) in [("circle_minimal", "circle_two_cell"), ("cylinder", "circle_minimal")] {
        let (x, y) = (model(p), model(q));
        for a in algebras() {
            match (capped(&x, &a, C4_WINDOW, true), capped(&y, &a, C4_WINDOW, true)) {
                (Ok(cx), Ok(cy)) => {
                    let (dx, dy) = (dims(&cx), dims(&cy));
                    if dx == dy {
                        equal += 1;
                    } else {
                        failures.push(format!("{p} {dx:?} vs {q} {dy:?} for {}", a.name()));
                    }
                }
                _ => {
                    let reach = widest_feasible(C4_WINDOW + 1, |w| match (capped(&x, &a, w, true), capped(&y, &a, w, true)) {
                        (Ok(cx), Ok(cy)) => Some(dims(&cx) == dims(&cy)),
                        _ => None,
                    });
                    failures.push(format!(
                        "{p} vs {q} for {} exceeds the {BASIS_CAP}-tensor cap at [{C4_WINDOW}, 0] (equal on [{}, 0])",
                        a.name(),
                        reach.map_or("none".into(), |w| w.to_string())
                    ));
                }
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("{equal} of 8 pairs equal; {}", failures.join("; ")))
}

fn criterion_5() -> Verdict {
    let spaces = ["point", "circle_minimal", "sphere(2)"];
    let (mut checked, mut failures, mut skipped) = (0, Vec::new(), Vec::new());
    let mut cache: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    let mut hh = |name: &str, x: &FiniteSimplicialSet, a: &GradedAlgebra| -> Option<Vec<usize>> {
        let key = (name.to_string(), a.name().to_string());
        if let Some(d) = cache.get(&key) {
            return Some(d.clone());
        }
        let d = dims(&capped(x, a, C5_WINDOW, true).ok()?);
        cache.insert(key, d.clone());
        Some(d)
    };
    for (i, p) in spaces.iter().enumerate() {
        for q in &spaces[i..] {
            let (x, y) = (model(p), model(q));
            let xy = disjoint_union(&x, &y);
            for a in algebras() {
                let tag = format!("{p} ⊔ {q} × {}", a.name());
                match (hh(p, &x, &a), hh(q, &y, &a), hh(&format!("{p}+{q}"), &xy, &a)) {
                    (Some(dx), Some(dy), Some(dxy)) if dxy == convolve(&dx, &dy) => checked += 1,
                    (Some(dx), Some(dy), Some(dxy)) => failures.push(format!("{tag}: {dxy:?} ≠ {dx:?} * {dy:?}")),
                    _ => skipped.push(tag),
                }
            }
        }
    }
    let algs = algebras();
    for s in spaces {
        let x = model(s);
        for i in 0..algs.len() {
            for j in i + 1..algs.len() {
                let ab = GradedAlgebra::tensor(&algs[i], &algs[j]);
                let tag = format!("{s} × {}", ab.name());
                match (hh(s, &x, &algs[i]), hh(s, &x, &algs[j]), hh(s, &x, &ab)) {
                    (Some(da), Some(db), Some(dab)) if dab == convolve(&da, &db) => checked += 1,
                    (Some(da), Some(db), Some(dab)) => failures.push(format!("{tag}: {dab:?} ≠ {da:?} * {db:?}")),
                    _ => skipped.push(tag),
                }
            }
        }
    }
    let mut detail = format!("{checked} convolutions exact");
    if !failures.is_empty() {
        detail += &format!("; mismatches: {}", failures.join(", "));
    }
    if !skipped.is_empty() {
        detail += &format!("; over the basis cap: {}", skipped.join(", "));
    }
    Verdict::new(failures.is_empty() && skipped.is_empty(), detail)
}

fn criterion_6() -> Verdict {
    let cases = [("(a) I ⊔ I → circle_two_cell", circle_gluing()), ("(b) I² ∪ I → cylinder", cylinder_gluing()), ("(c) cylinder ∪ I → torus_glued", torus_gluing())];
    let mut failures = Vec::new();
    for (name, (f, g)) in &cases {
        for a in algebras() {
            match pushout_comparison(f, g, &a, C6_LEVEL, -(C6_LEVEL as i32)) {
                Ok(c) if c.iso && c.levels.iter().all(|l| l.well_defined && l.rank == l.target && l.domain == l.target) => {}
                Ok(c) => failures.push(format!("{name} × {}: levels {:?} not iso", a.name(), c.levels.iter().filter(|l| !l.iso).map(|l| l.level).collect::<Vec<_>>())),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("3 gluings × 4 algebras iso on levels 0..={C6_LEVEL}")
    } else {
        failures.join("; ")
    };
    Verdict::new(failures.is_empty(), detail)
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let circle = model("circle_minimal");
    let torus = model("torus_glued");
    let square_torus = product(&circle, &circle);
    let mut parts = Vec::new();
    let mut pass = true;
    for a in [dual_numbers(), exterior(-1)] {
        let d1 = dims(&uncapped(&torus, &a, C7_WINDOW, true));
        let d2 = dims(&uncapped(&square_torus, &a, C7_WINDOW, true));
        pass &= d1 == d2;
        parts.push(format!("{}: torus_glued {d1:?}, S¹ × S¹ {d2:?}", a.name()));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < C7_BUDGET;
    Verdict::new(pass, format!("{} in {:.0?}", parts.join("; "), elapsed))
}

fn criterion_8() -> Verdict {
    let a = koszul();
    let bad: Vec<String> = MODELS
        .iter()
        .filter_map(|name| {
            let d = dims(&uncapped(&model(name), &a, C8_WINDOW, true));
            (d[..] != C8_EXPECTED[..]).then(|| format!("{name} {d:?}"))
        })
        .collect();
    let detail = if bad.is_empty() { format!("{} models give {C8_EXPECTED:?}", MODELS.len()) } else { bad.join(", ") };
    Verdict::new(bad.is_empty(), detail)
}

fn criterion_9() -> Verdict {
    let covers = [
        ("single open on circle_minimal", CombinatorialCover::single(&model("circle_minimal"))),
        ("single open on circle_two_cell", CombinatorialCover::single(&model("circle_two_cell"))),
        ("single open on interval", CombinatorialCover::single(&model("interval"))),
        ("two-arc circle", CombinatorialCover::two_arc_circle()),
    ];
    let (mut passed, mut failures) = (0, Vec::new());
    for (name, cover) in &covers {
        for a in [dual_numbers(), exterior(-1)] {
            let result = cech_complex(cover, &a, C9_WINDOW, C9_CAP).and_then(|c| cech_compare(&c));
            match result {
                Ok(r) if r.all_true() => passed += 1,
                Ok(r) => failures.push(format!(
                    "{name} × {}: Čech {:?} vs CH {:?} (trusted from {})",
                    a.name(),
                    r.cech_dims.values().rev().collect::<Vec<_>>(),
                    r.target_dims.values().rev().collect::<Vec<_>>(),
                    r.trusted_min
                )),
                Err(e) => failures.push(format!("{name} × {}: {e}", a.name())),
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("{passed} of {} agree; {}", covers.len() * 2, failures.join("; ")))
}

fn criterion_10() -> Verdict {
    let a = dual_numbers();
    let bar = multiplication_module(&a, C10_WINDOW - 1).and_then(|(env, m)| two_sided_bar(&m, &env, &m, C10_WINDOW, C10_CAP));
    let bar = match bar {
        Ok(b) => homology(&b.complex, false).trusted_dims(),
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let circle = dims(&uncapped(&model("circle_minimal"), &a, C10_WINDOW, false));
    let n = bar.len();
    Verdict::new(n > 0 && bar[..] == circle[..n], format!("bar {bar:?}, circle {circle:?}"))
}

fn criterion_11() -> Verdict {
    for space in ["point", "interval", "circle_minimal"] {
        let x = model(space);
        for (i, a) in algebras().into_iter().enumerate() {
            let c = uncapped(&x, &a, C11_WINDOW, false);
            if let Err(e) = common::shuffle_trials(&c, C11_PAIRS, C11_TRIPLES, 1000 + i as u64) {
                return Verdict::new(false, format!("{space} × {}: {e}", a.name()));
            }
        }
    }
    Verdict::new(true, format!("{C11_PAIRS} pairs and {C11_TRIPLES} triples per model and algebra, levels ≤ 3"))
}

fn criterion_12() -> Verdict {
    let (mut equal, mut skipped, mut failures) = (0, Vec::new(), Vec::new());
    for name in MODELS {
        let x = model(name);
        for a in algebras() {
            match (capped(&x, &a, C12_WINDOW, false), capped(&x, &a, C12_WINDOW, true)) {
                (Ok(u), Ok(n)) => {
                    let (du, dn) = (dims(&u), dims(&n));
                    if du == dn {
                        equal += 1;
                    } else {
                        failures.push(format!("{name} × {}: {du:?} vs {dn:?}", a.name()));
                    }
                }
                _ => skipped.push(format!("{name} × {}", a.name())),
            }
        }
    }
    let mut detail = format!("{equal} builds equal");
    if !failures.is_empty() {
        detail += &format!("; differ: {}", failures.join(", "));
    }
    if !skipped.is_empty() {
        detail += &format!("; not both computable under the basis cap: {}", skipped.join(", "));
    }
    Verdict::new(failures.is_empty() && equal > 0, detail)
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("D² = 0 on every standard model, window [-6, 0]", criterion_1),
        ("circle equals the classical Hochschild complex", criterion_2),
        ("dual numbers on the circle, three ways", criterion_3),
        ("homotopy invariance in the space", criterion_4),
        ("Künneth in the space and in the algebra", criterion_5),
        ("strict gluing along pushouts", criterion_6),
        ("torus_glued against S¹ × S¹", criterion_7),
        ("Koszul algebra is acyclic on every model", criterion_8),
        ("Čech complex of combinatorial covers", criterion_9),
        ("bar complex computes Tor", criterion_10),
        ("shuffle product laws on random chains", criterion_11),
        ("normalized and unnormalized homology agree", criterion_12),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        failed += usize::from(!v.pass);
        println!(
            "criterion {:>2} {} {name} ({:.1?}): {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            v.detail
        );
    }
    println!("{failed} of {} criteria failed", if only.is_some() { 1 } else { criteria.len() });
}
