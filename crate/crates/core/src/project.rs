//! Coxeter-plane and H₃/H₄ parallel-space projections.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Vector};
use crate::folding::FoldingMap;
use crate::group::dihedral_generators;
use crate::lattice::PointSet;
use crate::rootsys::{Ambient, Family, RootSystem};

/// Default deduplication tolerance.
pub const DEDUP_TOL: f64 = 1e-8;
/// Minimum gap between the Coxeter eigenvalue and the rest of the spectrum.
pub const EIGEN_SEPARATION: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    CoxeterPlane,
    AnCyclic,
    H3Parallel,
    H4Parallel,
    RootPlane,
}

/// Orthonormal rows mapping ambient coordinates to the target space.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionBasis {
    pub rows: Vec<Vec<f64>>,
    pub kind: BasisKind,
    /// `Lᵀ` with `G = LLᵀ`, for ambients with a non-identity Gram matrix.
    #[serde(skip)]
    to_euclid: Option<DMatrix<f64>>,
}

fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64())
}

fn to_dvector(v: &Vector) -> DVector<f64> {
    DVector::from_iterator(v.dim(), v.coords().iter().map(|x| x.to_f64()))
}

fn euclid_transform(ambient: &Ambient) -> Result<Option<DMatrix<f64>>> {
    match ambient {
        Ambient::Euclidean(_) => Ok(None),
        Ambient::Gram(g) => {
            let chol = to_dmatrix(g)
                .cholesky()
                .ok_or_else(|| Error::Dimension("ambient Gram is not positive definite".into()))?;
            Ok(Some(chol.l().transpose()))
        }
    }
}

impl ProjectionBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn euclid(&self, v: &Vector) -> DVector<f64> {
        let x = to_dvector(v);
        match &self.to_euclid {
            Some(t) => t * x,
            None => x,
        }
    }

    fn euclid_matrix(&self, m: &Matrix) -> DMatrix<f64> {
        let x = to_dmatrix(m);
        match &self.to_euclid {
            Some(t) => t * x * t.clone().try_inverse().expect("Cholesky factor is invertible"),
            None => x,
        }
    }

    pub fn image(&self, v: &Vector) -> Vec<f64> {
        let x = self.euclid(v);
        self.rows.iter().map(|r| r.iter().zip(x.iter()).map(|(a, b)| a * b).sum()).collect()
    }

    /// Action of `m` on the target space, `B M Bᵀ`; meaningful when the space is `m`-invariant.
    pub fn restrict(&self, m: &Matrix) -> Vec<Vec<f64>> {
        let mm = self.euclid_matrix(m);
        let b = DMatrix::from_fn(self.dim(), self.ambient_dim(), |i, j| self.rows[i][j]);
        let r = &b * mm * b.transpose();
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| r[(i, j)]).collect()).collect()
    }

    /// Largest deviation of `m` from preserving the target space.
    pub fn invariance_defect(&self, m: &Matrix) -> f64 {
        let mm = self.euclid_matrix(m);
        let b = DMatrix::from_fn(self.dim(), self.ambient_dim(), |i, j| self.rows[i][j]);
        let projector = b.transpose() * &b;
        let image = &mm * b.transpose();
        (&image - &projector * &image).amax()
    }

    /// Rows orthonormal within `tol`.
    pub fn is_orthonormal(&self, tol: f64) -> bool {
        self.rows.iter().enumerate().all(|(i, a)| {
            self.rows.iter().enumerate().all(|(j, b)| {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                (d - if i == j { 1.0 } else { 0.0 }).abs() < tol
            })
        })
    }
}

/// Real coordinates of `k₁ … kₙ₊₁` in which the Coxeter element acts by complex phases.
///
/// For odd `n` the last coordinate is `(−1)ʲ/√2`, the real component of
/// frequency `h/2`; a constant `1/√2` would break `(kᵢ,kⱼ) = −1/(n+1)`.
pub fn an_k_coordinates(n: usize) -> Vec<Vec<f64>> {
    assert!(n >= 2, "an_k_coordinates needs n >= 2");
    let h = (n + 1) as f64;
    let scale = (2.0 / h).sqrt();
    (1..=n + 1)
        .map(|j| {
            let j = j as f64;
            let mut row = Vec::with_capacity(n);
            for m in 1..=n / 2 {
                let phase = 2.0 * PI * (m as f64) * j / h;
                row.push(scale * phase.cos());
                row.push(scale * phase.sin());
            }
            if n % 2 == 1 {
                row.push(scale * (PI * j).cos() / 2f64.sqrt());
            }
            row
        })
        .collect()
}

/// Plane of the first complex component of the cyclic coordinates, on `l`-coordinates.
pub fn an_cyclic_plane(n: usize) -> ProjectionBasis {
    let h = (n + 1) as f64;
    let scale = (2.0 / h).sqrt();
    let row = |f: fn(f64) -> f64| (1..=n + 1).map(|j| scale * f(2.0 * PI * j as f64 / h)).collect();
    ProjectionBasis { rows: vec![row(f64::cos), row(f64::sin)], kind: BasisKind::AnCyclic, to_euclid: None }
}

/// Signed rotation angle in `(−π, π]` of a 2×2 action.
pub fn planar_angle(action: &[Vec<f64>]) -> f64 {
    action[1][0].atan2(action[0][0])
}

/// Plane on which `R₁R₂` rotates by `+2π/h`, with the first axis along the image of `α₁`.
pub fn coxeter_plane_basis(sys: &RootSystem) -> Result<ProjectionBasis> {
    let dihedral = dihedral_generators(sys)?;
    let h = dihedral.h as f64;
    let to_euclid = euclid_transform(&sys.ambient)?;
    let probe = ProjectionBasis { rows: Vec::new(), kind: BasisKind::CoxeterPlane, to_euclid: to_euclid.clone() };
    let c = probe.euclid_matrix(&dihedral.coxeter_element());
    let s = &c + c.transpose();
    let eig = SymmetricEigen::new(s);
    // star polygons I₂(p/q) turn by 2πq/p; the whole plane is the ambient
    let target = if sys.diagram.family() == Family::I2 { c.trace() } else { 2.0 * (2.0 * PI / h).cos() };
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        (eig.eigenvalues[a] - target).abs().total_cmp(&(eig.eigenvalues[b] - target).abs())
    });
    if order.len() < 2 {
        return Err(Error::EigenDegenerate(0.0));
    }
    let gap = order.get(2).map_or(f64::INFINITY, |&k| (eig.eigenvalues[k] - target).abs());
    if gap < EIGEN_SEPARATION {
        return Err(Error::EigenDegenerate(gap));
    }
    let e1 = eig.eigenvectors.column(order[0]).into_owned();
    let e2 = eig.eigenvectors.column(order[1]).into_owned();

    let a1 = probe.euclid(&sys.simple_roots[0]);
    let mut u = &e1 * e1.dot(&a1) + &e2 * e2.dot(&a1);
    if u.norm() < 1e-9 {
        u = e1.clone();
    }
    u.normalize_mut();
    let mut v = &e2 - &u * u.dot(&e2);
    if v.norm() < 1e-6 {
        v = &e1 - &u * u.dot(&e1);
    }
    v.normalize_mut();
    if (&c * &u).dot(&v) < 0.0 {
        v = -v;
    }
    Ok(ProjectionBasis {
        rows: vec![u.iter().copied().collect(), v.iter().copied().collect()],
        kind: BasisKind::CoxeterPlane,
        to_euclid,
    })
}

/// Oriented plane spanned by `a` and `b`, first axis along `a`.
pub fn span_plane(a: &Vector, b: &Vector, ambient: &Ambient) -> Result<ProjectionBasis> {
    let to_euclid = euclid_transform(ambient)?;
    let probe = ProjectionBasis { rows: Vec::new(), kind: BasisKind::RootPlane, to_euclid };
    let (x, y) = (probe.euclid(a), probe.euclid(b));
    let u = x.normalize();
    let w = &y - &u * u.dot(&y);
    if w.norm() < 1e-9 {
        return Err(Error::RankDeficient { expected: 2, got: 1 });
    }
    let v = w.normalize();
    Ok(ProjectionBasis { rows: vec![u.iter().copied().collect(), v.iter().copied().collect()], ..probe })
}

fn gram_schmidt(vectors: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            w -= u * u.dot(v);
        }
        out.push(w.normalize());
    }
    out
}

/// Orthonormal frame of the span of the folded H-roots.
///
/// H₃: `x ∥ β₁`, `z ∥ β₃`, `y` along the part of `β₂` orthogonal to both.
/// H₄: Gram–Schmidt on `β₂, β₃, β₄, β₁`. In these frames `β₀` points along
/// `(0,−1,0)` and `(0,0,0,−1)` respectively.
pub fn h_parallel_basis(map: &FoldingMap) -> Result<ProjectionBasis> {
    let rank = map.target_type.rank();
    if map.target_type.family() != Family::H || !(3..=4).contains(&rank) {
        return Err(Error::UnsupportedType(format!("{} is not a tau-fold", map.name())));
    }
    let got = Matrix::from_columns(&map.folded_roots).rank();
    if got != rank {
        return Err(Error::RankDeficient { expected: rank, got });
    }
    let b: Vec<DVector<f64>> = map.folded_roots.iter().map(to_dvector).collect();
    let frame = if rank == 3 {
        let x = b[0].normalize();
        let z = (&b[2] - &x * x.dot(&b[2])).normalize();
        let y = (&b[1] - &x * x.dot(&b[1]) - &z * z.dot(&b[1])).normalize();
        vec![x, y, z]
    } else {
        gram_schmidt(&[b[1].clone(), b[2].clone(), b[3].clone(), b[0].clone()])
    };
    let kind = if rank == 3 { BasisKind::H3Parallel } else { BasisKind::H4Parallel };
    Ok(ProjectionBasis { rows: frame.iter().map(|v| v.iter().copied().collect()).collect(), kind, to_euclid: None })
}

/// Largest entry-wise gap between the restricted folded generators and the
/// reflections in the projected folded roots.
pub fn h_generator_defect(map: &FoldingMap, basis: &ProjectionBasis) -> Result<f64> {
    let gens = map.generator_matrices()?;
    let mut worst: f64 = 0.0;
    for (g, beta) in gens.iter().zip(&map.folded_roots) {
        let action = basis.restrict(g);
        let b = basis.image(beta);
        let nb: f64 = b.iter().map(|x| x * x).sum();
        for i in 0..b.len() {
            for j in 0..b.len() {
                let refl = if i == j { 1.0 } else { 0.0 } - 2.0 * b[i] * b[j] / nb;
                worst = worst.max((action[i][j] - refl).abs());
            }
        }
        worst = worst.max(basis.invariance_defect(g));
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatPointSet {
    /// Sorted lexicographically.
    pub points: Vec<Vec<f64>>,
    pub source: String,
    pub tolerance: f64,
}

fn lex(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl FloatPointSet {
    /// Sorts, clears negative zeros and merges points closer than `tolerance`.
    pub fn new(points: Vec<Vec<f64>>, source: impl Into<String>, tolerance: f64) -> Self {
        let mut pts: Vec<Vec<f64>> = points
            .into_iter()
            .map(|p| p.into_iter().map(|x| if x == 0.0 { 0.0 } else { x }).collect())
            .collect();
        pts.sort_by(|a, b| lex(a, b));
        let mut kept: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
        for p in pts {
            let dup = kept
                .iter()
                .rev()
                .take_while(|k| p[0] - k[0] <= tolerance)
                .any(|k| dist2(k, &p).sqrt() <= tolerance);
            if !dup {
                kept.push(p);
            }
        }
        FloatPointSet { points: kept, source: source.into(), tolerance }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Whether some point lies within `tol` of `q`.
    pub fn has_near(&self, q: &[f64], tol: f64) -> bool {
        let start = self.points.partition_point(|p| p[0] < q[0] - tol);
        self.points[start..].iter().take_while(|p| p[0] <= q[0] + tol).any(|p| dist2(p, q).sqrt() <= tol)
    }
}

pub fn project(points: &PointSet, basis: &ProjectionBasis, tolerance: f64) -> Result<FloatPointSet> {
    if points.ambient_dim != basis.ambient_dim() {
        return Err(Error::Dimension(format!(
            "points live in dimension {}, basis expects {}",
            points.ambient_dim,
            basis.ambient_dim()
        )));
    }
    let imgs = points.points.iter().map(|p| basis.image(p)).collect();
    Ok(FloatPointSet::new(imgs, format!("{} projected ({:?})", points.label, basis.kind), tolerance))
}

/// Rotation by `2π/m` maps the planar set onto itself within `tol`.
pub fn rotation_invariance_check(ps: &FloatPointSet, m: u32, tol: f64) -> bool {
    if ps.dim() != 2 && !ps.is_empty() {
        return false;
    }
    let (s, c) = (2.0 * PI / m as f64).sin_cos();
    ps.points.iter().all(|p| ps.has_near(&[c * p[0] - s * p[1], s * p[0] + c * p[1]], tol))
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareFit {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// `|u|²/|v|² − 1`.
    pub length_mismatch: f64,
    /// `(u,v)/(|u||v|)`.
    pub cosine: f64,
    /// Largest distance from an image to the nearest point of `ℤu + ℤv`.
    pub residual: f64,
}

impl SquareFit {
    pub fn passes(&self, tol: f64) -> bool {
        self.length_mismatch.abs() < tol && self.cosine.abs() < tol && self.residual < tol
    }
}

/// Fits `ℤu + ℤv` with `u`, `v` the two shortest independent nonzero images.
pub fn square_lattice_fit(ps: &FloatPointSet) -> Option<SquareFit> {
    let norm2 = |p: &Vec<f64>| p[0] * p[0] + p[1] * p[1];
    let mut nonzero: Vec<&Vec<f64>> = ps.points.iter().filter(|p| norm2(p) > 1e-12).collect();
    nonzero.sort_by(|a, b| norm2(a).total_cmp(&norm2(b)).then(lex(a, b)));
    let u = (*nonzero.first()?).clone();
    let v = nonzero.iter().find(|p| (u[0] * p[1] - u[1] * p[0]).abs() > 1e-6 * norm2(&u))?.to_vec();
    let det = u[0] * v[1] - u[1] * v[0];
    let mut residual: f64 = 0.0;
    for p in &ps.points {
        let a = ((p[0] * v[1] - p[1] * v[0]) / det).round();
        let b = ((u[0] * p[1] - u[1] * p[0]) / det).round();
        let fit = [a * u[0] + b * v[0], a * u[1] + b * v[1]];
        residual = residual.max(dist2(p, &fit).sqrt());
    }
    Some(SquareFit {
        length_mismatch: norm2(&u) / norm2(&v) - 1.0,
        cosine: (u[0] * v[0] + u[1] * v[1]) / (norm2(&u) * norm2(&v)).sqrt(),
        u,
        v,
        residual,
    })
}

/// Squared-norm shells `(value, count)`, sorted by value.
pub fn shell_classify(ps: &FloatPointSet, tol: f64) -> Vec<(f64, usize)> {
    let mut norms: Vec<f64> = ps.points.iter().map(|p| p.iter().map(|x| x * x).sum()).collect();
    norms.sort_by(f64::total_cmp);
    let mut shells: Vec<(f64, usize)> = Vec::new();
    for n in norms {
        match shells.last_mut() {
            Some((v, c)) if (n - *v).abs() <= tol => *c += 1,
            _ => shells.push((n, 1)),
        }
    }
    shells
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

const AXES: [&str; 4] = ["x", "y", "z", "w"];

pub fn to_csv(ps: &FloatPointSet) -> Result<String> {
    let dim = if ps.is_empty() { 2 } else { ps.dim() };
    if !(1..=4).contains(&dim) {
        return Err(Error::Dimension(format!("csv supports up to 4 coordinates, got {dim}")));
    }
    let mut out = AXES[..dim].join(",");
    out.push('\n');
    for p in &ps.points {
        let cells: Vec<String> = p.iter().map(|x| format!("{:.14e}", if *x == 0.0 { 0.0 } else { *x })).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn from_csv(text: &str, tolerance: f64) -> Result<FloatPointSet> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty csv".into()))?;
    let dim = header.split(',').count();
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let p: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("csv line {}: {e}", i + 2)))?;
        if p.len() != dim {
            return Err(Error::Parse(format!("csv line {}: expected {dim} fields", i + 2)));
        }
        points.push(p);
    }
    Ok(FloatPointSet::new(points, "csv", tolerance))
}

pub const SVG_RADIUS: f64 = 0.04;

pub fn to_svg(ps: &FloatPointSet) -> Result<String> {
    if !ps.is_empty() && ps.dim() != 2 {
        return Err(Error::Dimension(format!("svg needs planar points, got dimension {}", ps.dim())));
    }
    let (mut lo, mut hi) = ([-1.0f64, -1.0], [1.0f64, 1.0]);
    if !ps.is_empty() {
        lo = [f64::INFINITY; 2];
        hi = [f64::NEG_INFINITY; 2];
        for p in &ps.points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let r = SVG_RADIUS * span.max(1.0) / 4.0;
    let margin = 2.0 * r;
    let (x0, y0) = (lo[0] - margin, -hi[1] - margin);
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.9} {y0:.9} {w:.9} {h:.9}">"#
    );
    for p in &ps.points {
        // flip y so the picture is in the usual orientation
        let _ = writeln!(out, r#"  <circle cx="{:.9}" cy="{:.9}" r="{r:.9}"/>"#, p[0], -p[1] + 0.0);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit(ps: &FloatPointSet, format: Format, path: &Path) -> Result<()> {
    let text = match format {
        Format::Csv => to_csv(ps)?,
        Format::Svg => to_svg(ps)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::{fold_d6_to_h3, fold_e8_to_h4};
    use crate::rootsys::{build_extended, build_root_system, DiagramType};

    #[test]
    fn cyclic_coordinates_reproduce_k_gram() {
        for n in 2..=10 {
            let k = an_k_coordinates(n);
            let h = (n + 1) as f64;
            for i in 0..=n {
                for j in 0..=n {
                    let d: f64 = k[i].iter().zip(&k[j]).map(|(a, b)| a * b).sum();
                    let want = if i == j { n as f64 / h } else { -1.0 / h };
                    assert!((d - want).abs() < 1e-12, "n={n} ({i},{j}) {d}");
                }
            }
            for c in 0..n {
                assert!(k.iter().map(|r| r[c]).sum::<f64>().abs() < 1e-12);
            }
        }
        let k3 = an_k_coordinates(3);
        for (j, r) in k3.iter().enumerate() {
            let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((r[2] - 0.5 * sign).abs() < 1e-15);
        }
    }

    #[test]
    fn coxeter_planes_rotate_by_2pi_over_h() {
        for s in ["A2", "A4", "B3", "D6", "E6", "E8", "F4", "G2", "H3", "H4", "H2", "I2(5/2)", "I2(10)"] {
            let sys = build_root_system(&s.parse().unwrap()).unwrap();
            let basis = coxeter_plane_basis(&sys).unwrap();
            let c = dihedral_generators(&sys).unwrap().coxeter_element();
            let angle = planar_angle(&basis.restrict(&c));
            let turn = match sys.diagram.label() {
                Some(l) if s.starts_with("I2") => {
                    let (p, q) = (l.numer().to_string().parse::<f64>().unwrap(), l.denom().to_string().parse::<f64>().unwrap());
                    2.0 * PI * q / p
                }
                _ => 2.0 * PI / sys.coxeter_number as f64,
            };
            assert!((angle - turn).abs() < 1e-9, "{s}: {angle}");
            assert!(basis.invariance_defect(&c) < 1e-9, "{s}");
            assert!(basis.is_orthonormal(1e-12) || !sys.ambient.is_euclidean());
        }
    }

    #[test]
    fn cyclic_plane_matches_coxeter_plane_for_an() {
        let sys = build_root_system(&DiagramType::a(4)).unwrap();
        let plane = an_cyclic_plane(4);
        assert!(plane.is_orthonormal(1e-12));
        let gens = crate::group::simple_reflections(&sys).unwrap();
        let cycle = crate::group::product_of(&[0, 1, 2, 3], &gens, 5);
        assert!(plane.invariance_defect(&cycle) < 1e-9);
        let angle = planar_angle(&plane.restrict(&cycle)).abs();
        assert!((angle - 2.0 * PI / 5.0).abs() < 1e-9);
    }

    #[test]
    fn h_frames() {
        let m3 = fold_d6_to_h3().unwrap();
        let b3 = h_parallel_basis(&m3).unwrap();
        assert!(b3.is_orthonormal(1e-12));
        assert!(h_generator_defect(&m3, &b3).unwrap() < 1e-9);
        let img = b3.image(m3.extended_root.as_ref().unwrap());
        let len = img.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((img[0] / len).abs() < 1e-9 && (img[1] / len + 1.0).abs() < 1e-9 && (img[2] / len).abs() < 1e-9);

        let m4 = fold_e8_to_h4().unwrap();
        let b4 = h_parallel_basis(&m4).unwrap();
        assert_eq!(b4.dim(), 4);
        assert!(h_generator_defect(&m4, &b4).unwrap() < 1e-9);
        let img = b4.image(m4.extended_root.as_ref().unwrap());
        let len = img.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((img[3] / len + 1.0).abs() < 1e-9);
    }

    #[test]
    fn hexagon_svg_and_csv() {
        let sys = build_extended(&DiagramType::a(2)).unwrap();
        let roots = crate::lattice::lattice_ball(&crate::lattice::LatticeSpec::ARoot(2), &2.into(), 100).unwrap();
        let ps = project(&roots, &coxeter_plane_basis(&sys).unwrap(), DEDUP_TOL).unwrap();
        assert_eq!(ps.len(), 7);
        let nonzero = FloatPointSet::new(
            ps.points.iter().filter(|p| p[0].abs() + p[1].abs() > 1e-9).cloned().collect(),
            "hexagon",
            DEDUP_TOL,
        );
        let svg = to_svg(&nonzero).unwrap();
        assert_eq!(svg.matches("<circle").count(), 6);
        let csv = to_csv(&ps).unwrap();
        assert!(csv.starts_with("x,y\n"));
        let back = from_csv(&csv, DEDUP_TOL).unwrap();
        assert_eq!(to_csv(&back).unwrap(), csv);
        let empty = FloatPointSet::new(Vec::new(), "empty", DEDUP_TOL);
        assert_eq!(to_csv(&empty).unwrap(), "x,y\n");
        assert!(to_svg(&FloatPointSet::new(vec![vec![0.0, 0.0, 1.0]], "3d", DEDUP_TOL)).is_err());
    }

    #[test]
    fn random_set_is_not_five_fold() {
        let pts = vec![vec![1.0, 0.2], vec![-0.3, 0.7], vec![0.5, -0.9]];
        let ps = FloatPointSet::new(pts, "random", DEDUP_TOL);
        assert!(!rotation_invariance_check(&ps, 5, 1e-9));
    }

    #[test]
    fn dedup_merges_close_points() {
        let ps = FloatPointSet::new(vec![vec![0.0, 0.0], vec![1e-10, 0.0], vec![-0.0, 1.0]], "t", 1e-8);
        assert_eq!(ps.points, vec![vec![0.0, 0.0], vec![0.0, 1.0]]);
    }
}
