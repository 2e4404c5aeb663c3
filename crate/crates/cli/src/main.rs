//! `coxfold`: JSON reports on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 2 verification failure, 1 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxfold_core::affine::{
    affine_h_relations, check_word_identity, measure_affine_label, DihedralWord, FractionalLabel,
};
use coxfold_core::folding::{fold, fold_d6_to_h3, fold_e8_to_h4, FoldingMap};
use coxfold_core::group::{
    coxeter_relations, dihedral_generators, orbit, order_by_orbit_stabilizer, simple_reflections, verify_relations,
    Word, DEFAULT_CAP,
};
use coxfold_core::lattice::{
    delone_paired_simplices, diplo_simplex, lattice_ball, permutohedron, root_polytope_an, voronoi_vertices_an,
    LatticeSpec, PointSet,
};
use coxfold_core::project::{
    coxeter_plane_basis, emit, from_csv, h_parallel_basis, project, rotation_invariance_check, shell_classify,
    square_lattice_fit, FloatPointSet, Format, ProjectionBasis, DEDUP_TOL,
};
use coxfold_core::rootsys::{build_extended, build_root_system, catalog, DiagramType, Family, RootSystem};
use coxfold_core::{Error, GoldenNumber, Rational, Vector};

const SCHEMA: &str = "coxfold/1";
const CHECK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "coxfold", version, about = "Exact Coxeter root systems, foldings and quasicrystal projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simple roots, Cartan matrix, Coxeter number, order and extended root of a type.
    Info { r#type: String },
    /// Build and verify a folding map.
    Fold {
        source: String,
        target: String,
        /// JSON file of generator words replacing the built-in ones, e.g. [[1,5],[2,4],[3,6]].
        #[arg(long)]
        words: Option<PathBuf>,
    },
    /// Verify the Coxeter relations of a type, optionally a fold and the affine labels.
    Verify {
        r#type: String,
        #[arg(long)]
        fold: Option<String>,
        #[arg(long)]
        affine: bool,
        /// JSON file of generator words for `--fold`.
        #[arg(long, requires = "fold")]
        words: Option<PathBuf>,
    },
    /// Orbit of a fundamental weight (1-based index) or an explicit vector under the Weyl group.
    Orbit {
        r#type: String,
        /// Weight index, or comma-separated coordinates such as `1,0,-1` or `1/2,t,0`.
        #[arg(long)]
        seed: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Distinguished cells of A-type lattices, or a lattice ball of any lattice.
    Cells {
        /// `An`, `An*`, `Dn`, `Zn`, or a diagram type for its root lattice.
        lattice: String,
        #[arg(long, value_enum)]
        what: Cell,
        #[arg(long)]
        radius2: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: CellFormat,
    },
    /// Project a root-lattice ball onto the Coxeter plane or the H3/H4 parallel space.
    Project {
        r#type: String,
        #[arg(long)]
        radius2: String,
        #[arg(long, value_enum, default_value = "coxeter")]
        plane: Plane,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutFormat,
        #[arg(long, default_value_t = DEDUP_TOL)]
        tol: f64,
        #[command(flatten)]
        checks: Checks,
    },
    /// Convert a csv point file to svg, optionally certifying it.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        checks: Checks,
    },
}

#[derive(clap::Args, Clone, Copy, Default)]
struct Checks {
    /// Require invariance under rotation by 2π/m.
    #[arg(long, value_name = "M")]
    check_rotation: Option<u32>,
    /// Require the points to form a square lattice.
    #[arg(long)]
    check_square_lattice: bool,
    /// Require two equal shells of nonzero points with squared-norm ratio τ².
    #[arg(long)]
    check_shells: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cell {
    RootPolytope,
    Voronoi,
    Delone,
    Permutohedron,
    Diplo,
    Ball,
}

#[derive(Clone, Copy, ValueEnum)]
enum CellFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plane {
    Coxeter,
    H3,
    H4,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Svg,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_type(s: &str) -> Result<DiagramType, Failure> {
    s.parse().map_err(|e| usage(format!("invalid type {s:?}: {e}")))
}

fn system(t: &DiagramType) -> Result<RootSystem, Failure> {
    build_extended(t).or_else(|_| build_root_system(t)).map_err(|e| match e {
        Error::UnsupportedType(m) => usage(m),
        other => Failure::Compute(other),
    })
}

fn cap_from_env() -> Result<u64, Failure> {
    match std::env::var("COXFOLD_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("COXFOLD_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn matrix_rows(m: &coxfold_core::Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

fn info(ty: &str) -> Outcome {
    let t = parse_type(ty)?;
    let s = system(&t)?;
    let (h, order) = catalog(&t);
    Ok((
        json!({
            "schema": SCHEMA,
            "diagram": t.to_string(),
            "rank": s.rank(),
            "ambient_dim": s.ambient_dim(),
            "ambient_gram": if s.ambient.is_euclidean() { Value::Null } else { json!(matrix_rows(&s.ambient.gram())) },
            "simple_roots": strings(&s.simple_roots),
            "cartan": matrix_rows(&s.cartan),
            "h": h,
            "order": order.to_string(),
            "extended_root": s.extended_root.as_ref().map(ToString::to_string),
        }),
        true,
    ))
}

fn read_words(path: &Path) -> Result<Vec<Word>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let raw: Vec<Vec<usize>> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: expected a list of words: {e}", path.display())))?;
    Ok(raw.into_iter().map(Word::new).collect())
}

fn build_fold(source: &str, target: &str, words: Option<&Path>) -> Result<FoldingMap, Failure> {
    let mut map = fold(&parse_type(source)?, &parse_type(target)?).map_err(|e| match e {
        Error::UnsupportedType(m) | Error::InvalidDiagram(m) => usage(format!("no fold {source} -> {target}: {m}")),
        other => Failure::Compute(other),
    })?;
    if let Some(path) = words {
        let words = read_words(path)?;
        let letters = map.source.rank();
        if words.len() != map.generator_words.len() || words.iter().flat_map(|w| w.letters()).any(|&l| l > letters) {
            return Err(usage(format!(
                "{}: need {} words over letters 0..={letters}",
                path.display(),
                map.generator_words.len()
            )));
        }
        map.generator_words = words;
    }
    Ok(map)
}

fn fold_json(map: &FoldingMap, cap: u64) -> Result<(Value, bool), Failure> {
    let report = map.verify(true, cap)?;
    let passed = report.passed();
    let coeffs: Vec<Vec<String>> = map.coefficients.iter().map(|r| strings(r)).collect();
    Ok((
        json!({
            "fold": map.name(),
            "source": map.source.diagram.to_string(),
            "target": map.target_type.to_string(),
            "coefficients": coeffs,
            "folded_roots": strings(&map.folded_roots),
            "generator_words": map.generator_words.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(),
            "extended_coefficients": map.extended_coefficients.as_ref().map(|c| strings(c)),
            "extended_root": map.extended_root.as_ref().map(ToString::to_string),
            "report": serde_json::to_value(&report).expect("report serializes"),
            "passed": passed,
        }),
        passed,
    ))
}

fn fold_cmd(source: &str, target: &str, words: Option<&Path>) -> Outcome {
    let map = build_fold(source, target, words)?;
    let (mut v, passed) = fold_json(&map, cap_from_env()?)?;
    v.as_object_mut().expect("object").insert("schema".into(), json!(SCHEMA));
    Ok((v, passed))
}

/// Labels stated for the affine dihedral diagrams.
fn stated_label(t: &DiagramType) -> Option<FractionalLabel> {
    let (p, q) = match (t.family(), t.rank()) {
        (Family::E, 6) => (12, 7),
        (Family::E, 7) => (9, 5),
        (Family::E, 8) => (15, 7),
        (Family::H, 3) | (Family::H, 4) => (5, 2),
        _ => return None,
    };
    FractionalLabel::new(p, q).ok()
}

/// Word claimed to equal `r_{α₀}`.
fn stated_identity(s: &RootSystem) -> Option<DihedralWord> {
    match (s.diagram.family(), s.rank()) {
        (Family::D, _) => Some(DihedralWord::rotation(s.coxeter_number as usize / 2)),
        (Family::E, 6) => Some(DihedralWord::r2_then(6)),
        _ => None,
    }
}

fn affine_json(t: &DiagramType, s: &RootSystem) -> Result<(Value, bool), Failure> {
    let stated = stated_label(t);
    if t.family() == Family::H && (3..=4).contains(&t.rank()) {
        let map = if t.rank() == 3 { fold_d6_to_h3()? } else { fold_e8_to_h4()? };
        let r = affine_h_relations(&map)?;
        let passed = r.passed() && r.in_candidates;
        return Ok((
            json!({
                "expected": stated.map(|l| l.to_string()),
                "measured": r.fractional.measured.map(|l| l.to_string()),
                "report": serde_json::to_value(&r).expect("report serializes"),
                "passed": passed,
            }),
            passed,
        ));
    }
    let label = measure_affine_label(s)?;
    let measured = label.primary.as_ref().map(|(_, l)| *l);
    let label_ok = match stated {
        Some(e) => label.generators.iter().any(|g| g.label == Some(e)) && label.candidates.contains(&e),
        None => label.in_candidates,
    };
    let identity = stated_identity(s).map(|w| check_word_identity(s, w)).transpose()?;
    let passed = label_ok && identity.as_ref().is_none_or(|c| c.holds);
    Ok((
        json!({
            "expected": stated.map(|l| l.to_string()),
            "measured": measured.map(|l| l.to_string()),
            "report": serde_json::to_value(&label).expect("report serializes"),
            "word_identity": identity.map(|c| serde_json::to_value(&c).expect("check serializes")),
            "passed": passed,
        }),
        passed,
    ))
}

fn verify(ty: &str, fold_target: Option<&str>, affine: bool, words: Option<&Path>) -> Outcome {
    let t = parse_type(ty)?;
    let s = system(&t)?;
    let cap = cap_from_env()?;
    let relations = verify_relations(&simple_reflections(&s)?, &coxeter_relations(&s))?;
    let (h, order) = catalog(&t);
    let measured_h = if s.rank() >= 2 { Some(dihedral_generators(&s)?.h) } else { None };
    let measured_order = order_by_orbit_stabilizer(&s.simple_roots, &s.ambient);
    let mut passed = relations.all_passed() && measured_h.is_none_or(|m| m == h) && measured_order == order;
    let mut out = json!({
        "schema": SCHEMA,
        "diagram": t.to_string(),
        "relations": serde_json::to_value(&relations).expect("report serializes"),
        "h": { "expected": h, "measured": measured_h },
        "order": { "expected": order.to_string(), "measured": measured_order.to_string() },
    });
    let obj = out.as_object_mut().expect("object");
    if let Some(target) = fold_target {
        let map = build_fold(ty, target, words)?;
        let (v, ok) = fold_json(&map, cap)?;
        passed &= ok;
        obj.insert("fold".into(), v);
    }
    if affine {
        let (v, ok) = affine_json(&t, &s)?;
        passed &= ok;
        obj.insert("affine".into(), v);
    }
    obj.insert("passed".into(), json!(passed));
    Ok((out, passed))
}

fn parse_seed(seed: &str, s: &RootSystem) -> Result<Vector, Failure> {
    if let Ok(i) = seed.trim().parse::<usize>() {
        let weights = s.fundamental_weights()?;
        return weights
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| usage(format!("weight index must be 1..={}", weights.len())));
    }
    let coords: Vec<GoldenNumber> = seed
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|c| c.trim().parse::<GoldenNumber>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("invalid seed {seed:?}: {e}")))?;
    if coords.len() != s.ambient_dim() {
        return Err(usage(format!("seed needs {} coordinates", s.ambient_dim())));
    }
    Ok(Vector::new(coords))
}

fn orbit_cmd(ty: &str, seed: &str, cap: Option<u64>) -> Outcome {
    let t = parse_type(ty)?;
    let s = build_root_system(&t)?;
    let v = parse_seed(seed, &s)?;
    let cap = match cap {
        Some(c) => c,
        None => cap_from_env()?,
    };
    let o = orbit(&simple_reflections(&s)?, &v, cap)?;
    Ok((
        json!({
            "schema": SCHEMA,
            "diagram": t.to_string(),
            "seed": v.to_string(),
            "size": o.len(),
            "points": strings(&o.points),
        }),
        true,
    ))
}

fn a_rank(spec: &LatticeSpec) -> Result<usize, Failure> {
    match spec {
        LatticeSpec::ARoot(n) | LatticeSpec::AWeight(n) => Ok(*n),
        other => Err(usage(format!("this cell needs an A-type lattice, got {other}"))),
    }
}

fn parse_radius2(r: &str) -> Result<Rational, Failure> {
    r.parse().map_err(|e| usage(format!("invalid radius2 {r:?}: {e}")))
}

fn point_csv(sets: &[&PointSet]) -> String {
    let mut out = String::new();
    for set in sets {
        for p in &set.points {
            out.push_str(&strings(p.coords()).join(","));
            out.push('\n');
        }
    }
    out
}

fn cells(lattice: &str, what: Cell, radius2: Option<&str>, format: CellFormat) -> Result<(String, bool), Failure> {
    let spec: LatticeSpec = lattice.parse().map_err(|e| usage(format!("invalid lattice {lattice:?}: {e}")))?;
    let sets: Vec<PointSet> = match what {
        Cell::RootPolytope => vec![root_polytope_an(a_rank(&spec)?)],
        Cell::Voronoi => vec![voronoi_vertices_an(a_rank(&spec)?)?],
        Cell::Delone => {
            delone_paired_simplices(a_rank(&spec)?)?.into_iter().flat_map(|(a, b)| [a, b]).collect()
        }
        Cell::Permutohedron => vec![permutohedron(a_rank(&spec)?)?],
        Cell::Diplo => vec![diplo_simplex(a_rank(&spec)?)],
        Cell::Ball => {
            let r = radius2.ok_or_else(|| usage("--what ball needs --radius2"))?;
            vec![lattice_ball(&spec, &parse_radius2(r)?, cap_from_env()?)?]
        }
    };
    let text = match format {
        CellFormat::Csv => point_csv(&sets.iter().collect::<Vec<_>>()),
        CellFormat::Json => {
            let v = json!({
                "schema": SCHEMA,
                "lattice": spec.to_string(),
                "sets": sets.iter().map(|s| json!({
                    "label": s.label,
                    "size": s.len(),
                    "points": strings(&s.points),
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    Ok((text, true))
}

fn run_checks(ps: &FloatPointSet, checks: Checks) -> (Value, bool) {
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if let Some(m) = checks.check_rotation {
        let pass = m > 0 && rotation_invariance_check(ps, m, CHECK_TOL);
        ok &= pass;
        out.insert("rotation".into(), json!({ "m": m, "tolerance": CHECK_TOL, "passed": pass }));
    }
    if checks.check_square_lattice {
        let fit = if ps.dim() == 2 { square_lattice_fit(ps) } else { None };
        let pass = fit.as_ref().is_some_and(|f| f.passes(CHECK_TOL));
        ok &= pass;
        out.insert(
            "square_lattice".into(),
            json!({
                "residual": fit.as_ref().map(|f| f.residual),
                "length_mismatch": fit.as_ref().map(|f| f.length_mismatch),
                "cosine": fit.as_ref().map(|f| f.cosine),
                "tolerance": CHECK_TOL,
                "passed": pass,
            }),
        );
    }
    if checks.check_shells {
        let shells: Vec<(f64, usize)> =
            shell_classify(ps, CHECK_TOL).into_iter().filter(|(v, _)| *v > CHECK_TOL).collect();
        let tau2 = GoldenNumber::tau().pow(2).to_f64();
        let pass = shells.len() == 2 && shells[0].1 == shells[1].1 && (shells[1].0 / shells[0].0 - tau2).abs() < CHECK_TOL;
        ok &= pass;
        out.insert(
            "shells".into(),
            json!({
                "shells": shells.iter().map(|(v, c)| json!({ "norm2": v, "count": c })).collect::<Vec<_>>(),
                "tolerance": CHECK_TOL,
                "passed": pass,
            }),
        );
    }
    (Value::Object(out), ok)
}

fn basis_for(t: &DiagramType, plane: Plane) -> Result<ProjectionBasis, Failure> {
    let want = |src: &str| {
        if *t != parse_type(src)? {
            return Err(usage(format!("this plane projects the {src} root lattice, got {t}")));
        }
        Ok(())
    };
    match plane {
        Plane::Coxeter => Ok(coxeter_plane_basis(&build_root_system(t)?)?),
        Plane::H3 => {
            want("D6")?;
            Ok(h_parallel_basis(&fold_d6_to_h3()?)?)
        }
        Plane::H4 => {
            want("E8")?;
            Ok(h_parallel_basis(&fold_e8_to_h4()?)?)
        }
    }
}

fn write_points(ps: &FloatPointSet, format: OutFormat, out: &Path) -> Result<(), Failure> {
    let f = match format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Svg => Format::Svg,
    };
    emit(ps, f, out).map_err(|e| match e {
        Error::Dimension(m) => usage(m),
        other => Failure::Compute(other),
    })
}

#[allow(clippy::too_many_arguments)]
fn project_cmd(
    ty: &str,
    radius2: &str,
    plane: Plane,
    out: Option<&Path>,
    format: OutFormat,
    tol: f64,
    checks: Checks,
) -> Outcome {
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let t = parse_type(ty)?;
    let basis = basis_for(&t, plane)?;
    let ball = lattice_ball(&LatticeSpec::Root(t.clone()), &parse_radius2(radius2)?, cap_from_env()?)?;
    let ps = project(&ball, &basis, tol)?;
    if let Some(path) = out {
        write_points(&ps, format, path)?;
    }
    let (check_json, passed) = run_checks(&ps, checks);
    Ok((
        json!({
            "schema": SCHEMA,
            "diagram": t.to_string(),
            "radius2": radius2,
            "lattice_points": ball.len(),
            "projected_points": ps.len(),
            "dimension": basis.dim(),
            "tolerance": tol,
            "out": out.map(|p| p.display().to_string()),
            "points": if out.is_none() { json!(ps.points) } else { Value::Null },
            "checks": check_json,
            "passed": passed,
        }),
        passed,
    ))
}

fn render(input: &Path, out: &Path, checks: Checks) -> Outcome {
    let text = std::fs::read_to_string(input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let ps = from_csv(&text, DEDUP_TOL).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    write_points(&ps, OutFormat::Svg, out)?;
    let (check_json, passed) = run_checks(&ps, checks);
    Ok((
        json!({
            "schema": SCHEMA,
            "input": input.display().to_string(),
            "out": out.display().to_string(),
            "points": ps.len(),
            "checks": check_json,
            "passed": passed,
        }),
        passed,
    ))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit_stdout(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit_stdout(&(serde_json::to_string_pretty(v).expect("json") + "\n"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Info { r#type } => info(r#type),
        Command::Fold { source, target, words } => fold_cmd(source, target, words.as_deref()),
        Command::Verify { r#type, fold, affine, words } => verify(r#type, fold.as_deref(), *affine, words.as_deref()),
        Command::Orbit { r#type, seed, cap } => orbit_cmd(r#type, seed, *cap),
        Command::Cells { lattice, what, radius2, format } => match cells(lattice, *what, radius2.as_deref(), *format) {
            Ok((text, _)) => {
                emit_stdout(&text);
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        Command::Project { r#type, radius2, plane, out, format, tol, checks } => {
            project_cmd(r#type, radius2, *plane, out.as_deref(), *format, *tol, *checks)
        }
        Command::Render { input, out, checks } => render(input, out, *checks),
    };
    match result {
        Ok((v, passed)) => {
            print_json(&v);
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("verbs: info, fold, verify, orbit, cells, project, render; see `coxfold <verb> --help`");
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
