//! Lattice balls and the vertex sets of A-type cells.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{GoldenNumber, Matrix, Rational, Vector};
use crate::group::{orbit, simple_reflections};
use crate::rootsys::{build_root_system, d_roots, k_basis, weights_an, Ambient, DiagramType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub points: Vec<Vector>,
    pub label: String,
    pub ambient_dim: usize,
}

impl PointSet {
    /// Sorts and removes duplicates.
    pub fn new(mut points: Vec<Vector>, label: impl Into<String>, ambient_dim: usize) -> Self {
        points.sort();
        points.dedup();
        PointSet { points, label: label.into(), ambient_dim }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.points.binary_search(v).is_ok()
    }

    /// Setwise invariance under every matrix in `gens`.
    pub fn is_invariant(&self, gens: &[Matrix]) -> bool {
        gens.iter().all(|g| self.points.iter().all(|p| self.contains(&g.apply(p))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.points.iter().all(|p| self.contains(&-p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    /// Integer span of the A_n simple roots.
    ARoot(usize),
    /// Integer span of the A_n fundamental weights.
    AWeight(usize),
    D(usize),
    Z(usize),
    /// Integer span of the simple roots of any buildable type.
    Root(DiagramType),
}

impl LatticeSpec {
    /// Basis vectors and the ambient inner product.
    pub fn basis(&self) -> Result<(Vec<Vector>, Ambient)> {
        Ok(match self {
            LatticeSpec::ARoot(n) => {
                let sys = build_root_system(&DiagramType::a(*n))?;
                (sys.simple_roots, sys.ambient)
            }
            LatticeSpec::AWeight(n) => (weights_an(*n), Ambient::Euclidean(n + 1)),
            LatticeSpec::D(n) => (d_roots(*n), Ambient::Euclidean(*n)),
            LatticeSpec::Z(n) => ((0..*n).map(|i| Vector::unit(*n, i)).collect(), Ambient::Euclidean(*n)),
            LatticeSpec::Root(t) => {
                let sys = build_root_system(t)?;
                (sys.simple_roots, sys.ambient)
            }
        })
    }

    /// The point group acting on the lattice, as simple reflections.
    pub fn point_group(&self) -> Result<Vec<Matrix>> {
        let t = match self {
            LatticeSpec::ARoot(n) | LatticeSpec::AWeight(n) => DiagramType::a(*n),
            LatticeSpec::D(n) => DiagramType::d(*n),
            LatticeSpec::Z(n) if *n >= 2 => DiagramType::b(*n),
            LatticeSpec::Z(_) => return Ok(vec![Matrix::from_int_rows(&[&[-1]])]),
            LatticeSpec::Root(t) => t.clone(),
        };
        simple_reflections(&build_root_system(&t)?)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::ARoot(n) => write!(f, "A{n}"),
            LatticeSpec::AWeight(n) => write!(f, "A{n}*"),
            LatticeSpec::D(n) => write!(f, "D{n}"),
            LatticeSpec::Z(n) => write!(f, "Z{n}"),
            LatticeSpec::Root(t) => write!(f, "root lattice of {t}"),
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    /// `An`, `An*`, `Dn`, `Zn`, or any other diagram type for its root lattice.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown lattice `{s}`"));
        let rank = |r: &str| r.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(bad);
        let upper = s.to_ascii_uppercase();
        if let Some(r) = upper.strip_prefix('A') {
            return match r.strip_suffix('*') {
                Some(r) => Ok(LatticeSpec::AWeight(rank(r)?)),
                None => Ok(LatticeSpec::ARoot(rank(r)?)),
            };
        }
        if let Some(r) = upper.strip_prefix('Z') {
            return Ok(LatticeSpec::Z(rank(r)?));
        }
        if let Some(r) = upper.strip_prefix('D') {
            let n = rank(r)?;
            if n < 4 {
                return Err(bad());
            }
            return Ok(LatticeSpec::D(n));
        }
        Ok(LatticeSpec::Root(upper.parse()?))
    }
}

/// Gram matrix `Bᵀ G B` of a basis, in floating point.
fn float_gram(basis: &[Vector], ambient: &Ambient) -> Vec<Vec<f64>> {
    basis.iter().map(|u| basis.iter().map(|v| ambient.inner(u, v).to_f64()).collect()).collect()
}

/// Fincke–Pohst form of a Gram matrix: `xᵀQx = Σᵢ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`.
fn pohst_form(gram: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = gram.len();
    let mut q = gram.to_vec();
    for i in 0..n {
        if q[i][i] <= 1e-12 {
            return Err(Error::RankDeficient { expected: n, got: i });
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    Ok(q)
}

/// Every lattice vector of squared norm at most `radius2`, exactly filtered.
pub fn lattice_ball(spec: &LatticeSpec, radius2: &Rational, cap: u64) -> Result<PointSet> {
    if radius2.signum() < 0 {
        return Err(Error::InvalidArgument("negative squared radius".into()));
    }
    let (basis, ambient) = spec.basis()?;
    let n = basis.len();
    let q = pohst_form(&float_gram(&basis, &ambient))?;
    let bound = radius2.to_f64() * (1.0 + 1e-9) + 1e-9;
    let exact_bound = GoldenNumber::new(radius2.clone(), Rational::zero());

    let mut coeffs: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    let mut overflow = false;
    // depth-first over the last coordinate first
    fn recurse(
        i: usize,
        remaining: f64,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        cap: u64,
        overflow: &mut bool,
    ) {
        if *overflow {
            return;
        }
        let n = x.len();
        let center: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let half_width = (remaining.max(0.0) / q[i][i]).sqrt();
        let lo = (center - half_width).ceil() as i64;
        let hi = (center + half_width).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let d = v as f64 - center;
            let rest = remaining - q[i][i] * d * d;
            if i == 0 {
                if out.len() as u64 >= cap {
                    *overflow = true;
                    return;
                }
                out.push(x.clone());
            } else {
                recurse(i - 1, rest, q, x, out, cap, overflow);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        recurse(n - 1, bound, &q, &mut x, &mut coeffs, cap, &mut overflow);
    } else {
        coeffs.push(Vec::new());
    }
    if overflow {
        return Err(Error::CapExceeded(cap));
    }
    let points: Vec<Vector> = coeffs
        .iter()
        .map(|c| {
            let cs: Vec<GoldenNumber> = c.iter().map(|&k| GoldenNumber::int(k)).collect();
            if n == 0 {
                Vector::zeros(ambient.dim())
            } else {
                Vector::combination(&cs, &basis)
            }
        })
        .filter(|v| ambient.inner(v, v) <= exact_bound)
        .collect();
    Ok(PointSet::new(points, format!("{spec} ball r2<={radius2}"), ambient.dim()))
}

/// Vertices `kᵢ − kⱼ`, `i ≠ j`.
pub fn root_polytope_an(n: usize) -> PointSet {
    let k = k_basis(n);
    let mut pts = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                pts.push(&k[i] - &k[j]);
            }
        }
    }
    PointSet::new(pts, format!("A{n} root polytope"), n + 1)
}

fn an_orbit(n: usize, seed: &Vector) -> Result<Vec<Vector>> {
    let gens = simple_reflections(&build_root_system(&DiagramType::a(n))?)?;
    Ok(orbit(&gens, seed, crate::group::DEFAULT_CAP)?.points)
}

/// Union of the weight orbits `W(aₙ)ωᵢ`.
pub fn voronoi_vertices_an(n: usize) -> Result<PointSet> {
    let mut pts = Vec::new();
    for w in weights_an(n) {
        pts.extend(an_orbit(n, &w)?);
    }
    Ok(PointSet::new(pts, format!("A{n} Voronoi vertices"), n + 1))
}

/// Pairs `(W ωᵢ, W ω_{n+1−i})`, including the middle self-pair for odd `n`.
pub fn delone_paired_simplices(n: usize) -> Result<Vec<(PointSet, PointSet)>> {
    let w = weights_an(n);
    let mut out = Vec::new();
    for i in 1..=n.div_ceil(2) {
        let j = n + 1 - i;
        let a = PointSet::new(an_orbit(n, &w[i - 1])?, format!("W(a{n})w{i}"), n + 1);
        let b = PointSet::new(an_orbit(n, &w[j - 1])?, format!("W(a{n})w{j}"), n + 1);
        out.push((a, b));
    }
    Ok(out)
}

/// Orbit of `(n+1)P = (n+1)k₁ + n k₂ + ⋯ + kₙ₊₁`.
pub fn permutohedron(n: usize) -> Result<PointSet> {
    if !(1..=7).contains(&n) {
        return Err(Error::CapExceeded(40_320));
    }
    let k = k_basis(n);
    let coeffs: Vec<GoldenNumber> = (0..=n).map(|i| GoldenNumber::int((n + 1 - i) as i64)).collect();
    let seed = Vector::combination(&coeffs, &k);
    Ok(PointSet::new(an_orbit(n, &seed)?, format!("A{n} permutohedron"), n + 1))
}

/// Vertices `±kᵢ`.
pub fn diplo_simplex(n: usize) -> PointSet {
    let pts = k_basis(n).into_iter().flat_map(|k| [-&k, k]).collect();
    PointSet::new(pts, format!("A{n} diplo-simplex"), n + 1)
}
