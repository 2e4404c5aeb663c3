//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use coxfold_core::affine::{
    affine_h_relations, check_affine_reflection, check_word_identity, measure_affine_label, DihedralWord,
    FractionalLabel,
};
use coxfold_core::folding::{
    f4_roots_from_d4, fold_a2n1_to_cn, fold_d4_to_g2, fold_d6_to_h3, fold_dn_to_bn1, fold_e6_to_f4,
    fold_e7_to_i218, fold_e8_to_h4, fold_e8_to_i230, folded_group_order, FoldingMap,
};
use coxfold_core::group::{
    dihedral_generators, element_order, enumerate_group, orbit, simple_reflections, DEFAULT_CAP,
};
use coxfold_core::lattice::{lattice_ball, permutohedron, root_polytope_an, voronoi_vertices_an, LatticeSpec};
use coxfold_core::project::{
    an_k_coordinates, coxeter_plane_basis, h_parallel_basis, project, rotation_invariance_check,
    shell_classify, square_lattice_fit, DEDUP_TOL,
};
use coxfold_core::rootsys::{build_extended, build_root_system, k_basis, weights_an, DiagramType, RootSystem};
use coxfold_core::{GoldenNumber, Rational, Result};

const GRAM_TOL: f64 = 1e-12;
const ANGLE_TOL: f64 = 1e-9;
const PROJECTION_TOL: f64 = 1e-9;
const SHELL_TOL: f64 = 1e-9;

const LIMIT_CARTAN: Duration = Duration::from_secs(1);
const LIMIT_COXETER: Duration = Duration::from_secs(5);
const LIMIT_SMALL_GROUPS: Duration = Duration::from_secs(10);
const LIMIT_LARGE_GROUPS: Duration = Duration::from_secs(300);
const LIMIT_F4_SHELLS: Duration = Duration::from_secs(1);
const LIMIT_PROJECTIONS: Duration = Duration::from_secs(30);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn t(s: &str) -> DiagramType {
    s.parse().expect("valid type")
}

fn sys(s: &str) -> RootSystem {
    build_root_system(&t(s)).expect("supported type")
}

fn within(start: Instant, limit: Duration, notes: &mut Vec<String>) -> bool {
    let took = start.elapsed();
    notes.push(format!("{:.2}s/{}s", took.as_secs_f64(), limit.as_secs()));
    took <= limit
}

fn cartan_determinants() -> Result<Outcome> {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=6 {
        let det = fold_a2n1_to_cn(n)?.folded_cartan()?.expect("C folds have roots").determinant()?;
        if det != GoldenNumber::int(2) {
            ok = false;
            notes.push(format!("C{n} det {det}"));
        }
    }
    let mut types: Vec<String> = Vec::new();
    types.extend((1..=8).map(|n| format!("A{n}")));
    types.extend((2..=8).map(|n| format!("B{n}")));
    types.extend((2..=6).map(|n| format!("C{n}")));
    types.extend((4..=8).map(|n| format!("D{n}")));
    types.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    for name in &types {
        let det = build_extended(&t(name))?.extended_cartan()?.determinant()?;
        if !det.is_zero() {
            ok = false;
            notes.push(format!("{name} extended det {det}"));
        }
    }
    notes.push(format!("{} extended systems", types.len()));
    let timely = within(start, LIMIT_CARTAN, &mut notes);
    Ok(outcome(ok && timely, notes.join("; ")))
}

fn coxeter_numbers() -> Result<Outcome> {
    let start = Instant::now();
    let mut cases: Vec<(String, u64)> = Vec::new();
    cases.extend((1..=8).map(|n| (format!("A{n}"), n as u64 + 1)));
    cases.extend((4..=8).map(|n| (format!("D{n}"), 2 * n as u64 - 2)));
    for (s, h) in [("E6", 12), ("E7", 18), ("E8", 30), ("F4", 12), ("G2", 6), ("H3", 10), ("H4", 30)] {
        cases.push((s.to_string(), h));
    }
    let mut bad = Vec::new();
    for (name, h) in &cases {
        let s = sys(name);
        let measured = if s.rank() == 1 {
            element_order(&simple_reflections(&s)?[0], 10)
        } else {
            Some(dihedral_generators(&s)?.h)
        };
        if measured != Some(*h) {
            bad.push(format!("{name}: {measured:?} != {h}"));
        }
    }
    let mut notes = vec![format!("{} types", cases.len())];
    notes.extend(bad.iter().cloned());
    let timely = within(start, LIMIT_COXETER, &mut notes);
    Ok(outcome(bad.is_empty() && timely, notes.join("; ")))
}

fn folds_preserve_h() -> Result<Outcome> {
    let mut maps: Vec<FoldingMap> = Vec::new();
    for n in 2..=5 {
        maps.push(fold_a2n1_to_cn(n)?);
    }
    for n in 4..=6 {
        maps.push(fold_dn_to_bn1(n)?);
    }
    maps.push(fold_d4_to_g2()?);
    maps.push(fold_d6_to_h3()?);
    maps.push(fold_e6_to_f4()?);
    maps.push(fold_e7_to_i218()?);
    maps.push(fold_e8_to_i230()?);
    maps.push(fold_e8_to_h4()?);
    let mut bad = Vec::new();
    for m in &maps {
        let h = m.source.coxeter_number;
        let got = element_order(&m.coxeter_element()?, 4 * h);
        if got != Some(h) {
            bad.push(format!("{}: {got:?} != {h}", m.name()));
        }
    }
    let mut notes = vec![format!("{} folds", maps.len())];
    notes.extend(bad.iter().cloned());
    Ok(outcome(bad.is_empty(), notes.join("; ")))
}

fn group_orders() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |label: &str, got: Result<num_bigint::BigUint>, want: u64, notes: &mut Vec<String>| {
        match got {
            Ok(g) if g == want.into() => notes.push(format!("{label}={g}")),
            Ok(g) => {
                ok = false;
                notes.push(format!("{label}={g} (want {want})"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{label}: {e}"));
            }
        }
    };
    let small = Instant::now();
    check("a4", enumerate_group(&simple_reflections(&sys("A4"))?, DEFAULT_CAP), 120, &mut notes);
    check("c3", folded_group_order(&fold_a2n1_to_cn(3)?, DEFAULT_CAP), 48, &mut notes);
    check("d4", enumerate_group(&simple_reflections(&sys("D4"))?, DEFAULT_CAP), 192, &mut notes);
    check("g2", folded_group_order(&fold_d4_to_g2()?, DEFAULT_CAP), 12, &mut notes);
    check("f4", folded_group_order(&fold_e6_to_f4()?, DEFAULT_CAP), 1152, &mut notes);
    check("h3", folded_group_order(&fold_d6_to_h3()?, DEFAULT_CAP), 120, &mut notes);
    let small_ok = within(small, LIMIT_SMALL_GROUPS, &mut notes);
    let large = Instant::now();
    check("h4", folded_group_order(&fold_e8_to_h4()?, DEFAULT_CAP), 14400, &mut notes);
    check("e6", enumerate_group(&simple_reflections(&sys("E6"))?, DEFAULT_CAP), 51840, &mut notes);
    let large_ok = within(large, LIMIT_LARGE_GROUPS, &mut notes);
    Ok(outcome(ok && small_ok && large_ok, notes.join("; ")))
}

fn fractional_labels() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, p, q) in [("E6", 12, 7), ("E7", 9, 5), ("E8", 15, 7)] {
        let want = FractionalLabel::new(p, q)?;
        let r = measure_affine_label(&build_extended(&t(name))?)?;
        let gen = r.generators.iter().find(|g| g.label == Some(want));
        let angle_ok = gen.is_some_and(|g| (g.angle - want.angle()).abs() < ANGLE_TOL);
        let exact = gen.is_some_and(|g| g.order == Some(p));
        let member = r.candidates.contains(&want);
        ok &= angle_ok && exact && member;
        let via = gen.map_or("none".to_string(), |g| g.generator.clone());
        notes.push(format!("{name} {want} via {via} member={member}"));
    }
    for map in [fold_d6_to_h3()?, fold_e8_to_h4()?] {
        let r = affine_h_relations(&map)?;
        ok &= r.passed() && r.in_candidates;
        let measured = r.fractional.measured.map_or("-".to_string(), |l| l.to_string());
        notes.push(format!(
            "{} {measured} order={:?} member={} (candidates {}, {}, {})",
            r.fold, r.fractional.order, r.in_candidates, r.candidates.minus, r.candidates.plus, r.candidates.double
        ));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn word_identities() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 4..=8 {
        let s = build_extended(&DiagramType::d(n))?;
        let h = s.coxeter_number as usize;
        let c = check_word_identity(&s, DihedralWord::rotation(h / 2))?;
        ok &= c.holds;
        notes.push(format!(
            "D{n} {}={} (det {} vs {}, found {}, planar {})",
            c.claimed,
            c.holds,
            c.target_det,
            c.word_det,
            c.found.map_or("none".to_string(), |w| w.to_string()),
            c.planar.map_or("none".to_string(), |w| w.to_string())
        ));
    }
    let e6 = build_extended(&DiagramType::e(6))?;
    let c = check_word_identity(&e6, DihedralWord::r2_then(6))?;
    ok &= c.holds;
    notes.push(format!(
        "E6 {}={} (found {}, planar {})",
        c.claimed,
        c.holds,
        c.found.map_or("none".to_string(), |w| w.to_string()),
        c.planar.map_or("none".to_string(), |w| w.to_string())
    ));
    Ok(outcome(ok, notes.join("; ")))
}

fn k_basis_gram() -> Result<Outcome> {
    let mut ok = true;
    for n in 1..=10usize {
        let k = k_basis(n);
        let sum = k.iter().skip(1).fold(k[0].clone(), |acc, v| &acc + v);
        ok &= sum.is_zero();
        let diag = GoldenNumber::from(Rational::new(n as i64, n as i64 + 1));
        let off = GoldenNumber::from(Rational::new(-1, n as i64 + 1));
        for i in 0..=n {
            for j in 0..=n {
                ok &= k[i].dot(&k[j]) == if i == j { diag.clone() } else { off.clone() };
            }
        }
    }
    let mut worst: f64 = 0.0;
    for n in 2..=10usize {
        let k = an_k_coordinates(n);
        let h = (n + 1) as f64;
        for i in 0..=n {
            for j in 0..=n {
                let d: f64 = k[i].iter().zip(&k[j]).map(|(a, b)| a * b).sum();
                let want = if i == j { n as f64 / h } else { -1.0 / h };
                worst = worst.max((d - want).abs());
            }
        }
    }
    let pass = ok && worst < GRAM_TOL;
    Ok(outcome(pass, format!("exact Gram n<=10: {ok}; float Gram max error {worst:.2e}")))
}

fn orbit_counts() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 1..=6usize {
        let s = sys(&format!("A{n}"));
        let w1 = &weights_an(n)[0];
        let o = orbit(&simple_reflections(&s)?, w1, DEFAULT_CAP)?;
        if o.len() != n + 1 {
            bad.push(format!("|W(a{n})w1|={}", o.len()));
        }
        let vor = voronoi_vertices_an(n)?.len();
        if vor != (1 << (n + 1)) - 2 {
            bad.push(format!("voronoi a{n}={vor}"));
        }
        let perm = permutohedron(n)?.len();
        if perm != (1..=n + 1).product::<usize>() {
            bad.push(format!("permutohedron a{n}={perm}"));
        }
        let rp = root_polytope_an(n).len();
        if rp != n * (n + 1) {
            bad.push(format!("root polytope a{n}={rp}"));
        }
    }
    let e8 = sys("E8");
    let roots = orbit(&simple_reflections(&e8)?, &e8.simple_roots[0], DEFAULT_CAP)?.len();
    if roots != 240 {
        bad.push(format!("E8 roots={roots}"));
    }
    let detail = if bad.is_empty() { format!("n<=6 all match; E8 roots {roots}") } else { bad.join("; ") };
    Ok(outcome(bad.is_empty(), detail))
}

fn f4_shells() -> Result<Outcome> {
    let start = Instant::now();
    let set = f4_roots_from_d4();
    let count = |n: i64| set.points.iter().filter(|v| v.dot(v) == GoldenNumber::int(n)).count();
    let (two, four) = (count(2), count(4));
    let f4 = sys("F4");
    let gens = simple_reflections(&f4)?;
    let closed = set.is_invariant(&gens);
    let same_diagram = fold_e6_to_f4()?.folded_cartan()? == Some(f4.cartan.clone());
    let mut notes = vec![format!("norm2={two} norm4={four} closed={closed} fold-cartan={same_diagram}")];
    let timely = within(start, LIMIT_F4_SHELLS, &mut notes);
    Ok(outcome(two == 24 && four == 24 && set.len() == 48 && closed && same_diagram && timely, notes.join("; ")))
}

fn projections() -> Result<Outcome> {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();

    let a3 = lattice_ball(&LatticeSpec::ARoot(3), &Rational::from_i64(6), DEFAULT_CAP)?;
    let img = project(&a3, &coxeter_plane_basis(&sys("A3"))?, DEDUP_TOL)?;
    let fit = square_lattice_fit(&img).expect("nondegenerate image");
    ok &= fit.passes(PROJECTION_TOL);
    notes.push(format!("A3 {} pts residual {:.1e}", a3.len(), fit.residual));

    let a4 = lattice_ball(&LatticeSpec::ARoot(4), &Rational::from_i64(6), DEFAULT_CAP)?;
    let img = project(&a4, &coxeter_plane_basis(&sys("A4"))?, DEDUP_TOL)?;
    let five = rotation_invariance_check(&img, 5, PROJECTION_TOL);
    let ten = rotation_invariance_check(&img, 10, PROJECTION_TOL);
    ok &= five && ten;
    notes.push(format!("A4 {} pts 5-fold={five} 10-fold={ten}", img.len()));

    let tau2 = GoldenNumber::tau().pow(2).to_f64();
    for (map, per_shell) in [(fold_d6_to_h3()?, 30usize), (fold_e8_to_h4()?, 120)] {
        let roots = orbit(&simple_reflections(&map.source)?, &map.source.simple_roots[0], DEFAULT_CAP)?;
        let set = coxfold_core::lattice::PointSet::new(roots.points, "roots", map.source.ambient_dim());
        let img = project(&set, &h_parallel_basis(&map)?, DEDUP_TOL)?;
        let shells = shell_classify(&img, SHELL_TOL);
        let good = shells.len() == 2
            && shells.iter().all(|s| s.1 == per_shell)
            && (shells[1].0 / shells[0].0 - tau2).abs() < SHELL_TOL;
        ok &= good;
        let desc: Vec<String> = shells.iter().map(|(v, c)| format!("{c}@{v:.6}")).collect();
        notes.push(format!("{} shells [{}]", map.name(), desc.join(", ")));
    }
    let timely = within(start, LIMIT_PROJECTIONS, &mut notes);
    Ok(outcome(ok && timely, notes.join("; ")))
}

fn affine_reflections() -> Result<Outcome> {
    let names = [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5", "D4", "D5",
        "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2", "H2", "H3", "H4", "I2(4)", "I2(5)", "I2(5/2)", "I2(6)", "I2(10/3)",
    ];
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for name in names {
        let s = sys(name);
        let long = s.long_norm();
        let seed = s.simple_roots.iter().find(|a| s.norm2(a) == long).expect("a long simple root").clone();
        let roots = orbit(&simple_reflections(&s)?, &seed, DEFAULT_CAP)?;
        for alpha in &roots.points {
            let c = check_affine_reflection(alpha, 1, &s.ambient)?;
            checked += 1;
            if !c.passed() {
                bad.push(format!("{name} {alpha}"));
            }
        }
    }
    let detail = format!("{checked} long roots over {} systems; failures {}", names.len(), bad.len());
    Ok(outcome(bad.is_empty(), detail))
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 11] = [
        ("cartan determinants", cartan_determinants),
        ("coxeter numbers", coxeter_numbers),
        ("folds preserve h", folds_preserve_h),
        ("group orders", group_orders),
        ("fractional affine labels", fractional_labels),
        ("word identities", word_identities),
        ("k-basis", k_basis_gram),
        ("orbit and vertex counts", orbit_counts),
        ("F4 from D4 shells", f4_shells),
        ("projections", projections),
        ("affine reflection", affine_reflections),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
