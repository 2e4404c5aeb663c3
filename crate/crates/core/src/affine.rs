//! Affine reflections and fractional labels of affine dihedral diagrams.
//!
//! A label `p/q` on the edge between `a` and `b` means `ab` has exact order `p`
//! and turns its plane by `2πq/p`.

use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{GoldenNumber, Matrix, Vector};
use crate::folding::FoldingMap;
use crate::group::{dihedral_generators, element_order, reflection_matrix, verify_relations, RelationReport, Word};
use crate::project::{coxeter_plane_basis, planar_angle, span_plane, ProjectionBasis};
use crate::rootsys::{Ambient, Family, RootSystem};

/// Angle tolerance for planar rotation checks.
pub const ANGLE_TOL: f64 = 1e-9;

/// `λ ↦ Lλ + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineIsometry {
    pub linear: Matrix,
    pub translation: Vector,
}

impl AffineIsometry {
    pub fn identity(dim: usize) -> Self {
        AffineIsometry { linear: Matrix::identity(dim), translation: Vector::zeros(dim) }
    }

    pub fn translation_by(t: Vector) -> Self {
        AffineIsometry { linear: Matrix::identity(t.dim()), translation: t }
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: self.linear.mul(&other.linear),
            translation: &self.linear.apply(&other.translation) + &self.translation,
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        &self.linear.apply(v) + &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }
}

/// Reflection in the hyperplane `(λ,α) = n`: `λ ↦ λ − 2((λ,α) − n)α/(α,α)`.
pub fn affine_reflection(alpha: &Vector, n: i64, ambient: &Ambient) -> Result<AffineIsometry> {
    let linear = reflection_matrix(alpha, ambient)?;
    let norm = ambient.inner(alpha, alpha);
    let coeff = GoldenNumber::int(2 * n) * norm.inverse()?;
    Ok(AffineIsometry { linear, translation: alpha.scale(&coeff) })
}

/// Reflection in the hyperplane `(λ,α) = (α,α)/2` bisecting `α`.
pub fn bisecting_reflection(alpha: &Vector, ambient: &Ambient) -> Result<AffineIsometry> {
    let linear = reflection_matrix(alpha, ambient)?;
    Ok(AffineIsometry { linear, translation: alpha.clone() })
}

/// Basis of `{λ : (λ,α) = 0}`.
fn orthogonal_complement(alpha: &Vector, ambient: &Ambient) -> Vec<Vector> {
    let dim = alpha.dim();
    let r: Vec<GoldenNumber> = (0..dim).map(|j| ambient.inner(&Vector::unit(dim, j), alpha)).collect();
    let Some(k) = r.iter().position(|x| !x.is_zero()) else {
        return (0..dim).map(|j| Vector::unit(dim, j)).collect();
    };
    let pivot = r[k].inverse().expect("nonzero pivot");
    (0..dim)
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = Vector::unit(dim, j);
            v[k] = -(&r[j] * &pivot);
            v
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineReflectionCheck {
    pub involution: bool,
    pub fixes_hyperplane: bool,
    pub linear_is_reflection: bool,
    /// `r_{α,1} ∘ r_{α,0}` is the translation by `2α/(α,α)`.
    pub unit_shift: bool,
    /// Bisecting reflection composed with `r_{α,0}` is the translation by `α`.
    pub bisecting_shift: bool,
}

impl AffineReflectionCheck {
    pub fn passed(&self) -> bool {
        self.involution && self.fixes_hyperplane && self.linear_is_reflection && self.unit_shift && self.bisecting_shift
    }
}

pub fn check_affine_reflection(alpha: &Vector, n: i64, ambient: &Ambient) -> Result<AffineReflectionCheck> {
    let r = affine_reflection(alpha, n, ambient)?;
    let norm = ambient.inner(alpha, alpha);
    let base = alpha.scale(&(GoldenNumber::int(n) * norm.inverse()?));
    let fixes_hyperplane = r.apply(&base) == base
        && orthogonal_complement(alpha, ambient).iter().all(|w| {
            let p = &base + w;
            r.apply(&p) == p
        });
    let linear_is_reflection = r.linear.apply(alpha) == -alpha
        && orthogonal_complement(alpha, ambient).iter().all(|w| r.linear.apply(w) == *w);
    let r0 = affine_reflection(alpha, 0, ambient)?;
    let r1 = affine_reflection(alpha, 1, ambient)?;
    let unit = r1.compose(&r0);
    let unit_shift = unit.is_translation() && unit.translation == alpha.scale(&(GoldenNumber::int(2) * norm.inverse()?));
    let bis = bisecting_reflection(alpha, ambient)?.compose(&r0);
    Ok(AffineReflectionCheck {
        involution: r.compose(&r).is_identity(),
        fixes_hyperplane,
        linear_is_reflection,
        unit_shift,
        bisecting_shift: bis.is_translation() && bis.translation == *alpha,
    })
}

/// `p/q` in lowest terms with `1 ≤ q < p`, or `p` alone when `q = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FractionalLabel {
    p: u64,
    q: u64,
}

impl FractionalLabel {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p < 2 || q == 0 || q >= p || p.gcd(&q) != 1 {
            return Err(Error::InvalidArgument(format!("{p}/{q} is not a reduced label")));
        }
        Ok(FractionalLabel { p, q })
    }

    /// Reduces `num/den`.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        let g = num.gcd(&den).max(1);
        Self::new(num / g, den / g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `2πq/p`.
    pub fn angle(&self) -> f64 {
        2.0 * PI * self.q as f64 / self.p as f64
    }
}

impl fmt::Display for FractionalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl Serialize for FractionalLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Candidate labels `2h/(h−2)`, `2h/(h+2)`, `2h/(h−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineLabels {
    pub minus: FractionalLabel,
    pub plus: FractionalLabel,
    pub double: FractionalLabel,
}

impl AffineLabels {
    pub fn contains(&self, label: &FractionalLabel) -> bool {
        [self.minus, self.plus, self.double].contains(label)
    }
}

pub fn dihedral_affine_labels(h: u64) -> Result<AffineLabels> {
    if h < 3 {
        return Err(Error::InvalidArgument(format!("h = {h} is below 3")));
    }
    let num = 2 * h;
    Ok(AffineLabels {
        minus: FractionalLabel::from_ratio(num, h - 2)?,
        plus: FractionalLabel::from_ratio(num, h + 2)?,
        double: FractionalLabel::from_ratio(num, h - 1)?,
    })
}

/// Alternating word in `R₁`, `R₂` of length `len`, starting with `R_start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralWord {
    pub start: u8,
    pub len: usize,
}

impl DihedralWord {
    /// `(R₁R₂)^k`.
    pub fn rotation(k: usize) -> Self {
        DihedralWord { start: 1, len: 2 * k }
    }

    /// `R₂(R₁R₂)^k`.
    pub fn r2_then(k: usize) -> Self {
        DihedralWord { start: 2, len: 2 * k + 1 }
    }

    pub fn matrix(&self, r1: &Matrix, r2: &Matrix) -> Matrix {
        let (a, b) = if self.start == 1 { (r1, r2) } else { (r2, r1) };
        (0..self.len).fold(Matrix::identity(r1.rows()), |acc, i| acc.mul(if i % 2 == 0 { a } else { b }))
    }
}

impl fmt::Display for DihedralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = if self.start == 1 { ("R1", "R2") } else { ("R2", "R1") };
        if self.len == 0 {
            return write!(f, "I");
        }
        let k = self.len / 2;
        let (head, pair) = if self.len % 2 == 1 { (a, format!("{b}{a}")) } else { ("", format!("{a}{b}")) };
        let tail = match k {
            0 => String::new(),
            1 => pair,
            _ => format!("({pair})^{k}"),
        };
        write!(f, "{head}{tail}")
    }
}

impl Serialize for DihedralWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// First word, preferred forms before the shortest-first search, whose matrix equals `target`.
pub fn verify_word_identity(
    target: &Matrix,
    r1: &Matrix,
    r2: &Matrix,
    max_len: usize,
    preferred: &[DihedralWord],
) -> Result<DihedralWord> {
    let search = (0..=max_len).flat_map(|len| [1u8, 2].into_iter().map(move |start| DihedralWord { start, len }));
    preferred
        .iter()
        .copied()
        .chain(search)
        .find(|w| w.matrix(r1, r2) == *target)
        .ok_or(Error::NotFound(max_len))
}

#[derive(Clone, Debug, Serialize)]
pub struct WordIdentityCheck {
    pub diagram: String,
    pub claimed: DihedralWord,
    pub holds: bool,
    pub target_det: GoldenNumber,
    pub word_det: GoldenNumber,
    /// Some word in `R₁`, `R₂` equal to `r_{α₀}`, if any.
    pub found: Option<DihedralWord>,
    /// The word acting like `r_{α₀}` on the Coxeter plane.
    pub planar: Option<DihedralWord>,
}

/// Tests `r_{α₀} = claimed` exactly, and searches for any dihedral word equal to `r_{α₀}`.
pub fn check_word_identity(sys: &RootSystem, claimed: DihedralWord) -> Result<WordIdentityCheck> {
    let alpha0 = sys
        .extended_root
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no extended root", sys.diagram)))?;
    let target = reflection_matrix(alpha0, &sys.ambient)?;
    let d = dihedral_generators(sys)?;
    let word = claimed.matrix(&d.r1, &d.r2);
    let found = verify_word_identity(&target, &d.r1, &d.r2, 2 * d.h as usize, &[claimed]).ok();
    Ok(WordIdentityCheck {
        diagram: sys.diagram.to_string(),
        claimed,
        holds: word == target,
        target_det: target.determinant()?,
        word_det: word.determinant()?,
        found,
        planar: measure_affine_label(sys).ok().map(|r| r.plane_reflection),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FractionalReport {
    pub expected: FractionalLabel,
    pub order: Option<u64>,
    /// Rotation angle in `[0, 2π)`.
    pub angle: f64,
    pub expected_angle: f64,
    pub measured: Option<FractionalLabel>,
    pub order_ok: bool,
    pub angle_ok: bool,
}

impl FractionalReport {
    pub fn passed(&self) -> bool {
        self.order_ok && self.angle_ok
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Label `p/q` read from an exact order `p` and a turning angle.
fn label_from(order: u64, angle: f64) -> Option<FractionalLabel> {
    let q = (angle * order as f64 / (2.0 * PI)).round() as u64 % order.max(1);
    FractionalLabel::new(order, q).ok().filter(|l| angle_gap(l.angle(), angle) < ANGLE_TOL)
}

/// `ab` has exact order `p` and turns `plane` by `2πq/p`.
pub fn fractional_relation_check(
    a: &Matrix,
    b: &Matrix,
    expected: FractionalLabel,
    plane: &ProjectionBasis,
) -> Result<FractionalReport> {
    let ab = a.mul(b);
    let order = element_order(&ab, 4 * expected.p().max(60));
    let angle = planar_angle(&plane.restrict(&ab)).rem_euclid(2.0 * PI);
    Ok(FractionalReport {
        expected,
        order,
        angle,
        expected_angle: expected.angle(),
        measured: order.and_then(|p| label_from(p, angle)),
        order_ok: order == Some(expected.p()),
        angle_ok: angle_gap(angle, expected.angle()) < ANGLE_TOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorLabel {
    pub generator: String,
    pub order: Option<u64>,
    pub angle: f64,
    pub label: Option<FractionalLabel>,
    /// Exact order of `r_{α₀}Rᵢ` in the full ambient.
    pub point_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineLabelReport {
    pub diagram: String,
    pub h: u64,
    pub candidates: AffineLabels,
    /// Dihedral element acting on the Coxeter plane as the reflection in the image of `α₀`.
    pub plane_reflection: DihedralWord,
    pub generators: Vec<GeneratorLabel>,
    /// First generator whose product has order above 2.
    pub primary: Option<(String, FractionalLabel)>,
    pub in_candidates: bool,
    /// Translation part of `r_{α₀,1}`.
    pub translation: Vector,
}

/// Measures the label on the `α₀` node of the affine dihedral diagram.
///
/// On the Coxeter plane `r_{α₀}` acts through its projection; the dihedral
/// element `D` with the same planar action stands in for it, and each `DRᵢ`
/// is a rotation of the plane whose exact order and angle give `p/q`.
pub fn measure_affine_label(sys: &RootSystem) -> Result<AffineLabelReport> {
    let alpha0 = sys
        .extended_root
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no extended root", sys.diagram)))?;
    let plane = coxeter_plane_basis(sys)?;
    let d = dihedral_generators(sys)?;
    let img = plane.image(alpha0);
    let n2 = img[0] * img[0] + img[1] * img[1];
    if n2 < 1e-18 {
        return Err(Error::Dimension("extended root is orthogonal to the Coxeter plane".into()));
    }
    let want = [
        [1.0 - 2.0 * img[0] * img[0] / n2, -2.0 * img[0] * img[1] / n2],
        [-2.0 * img[1] * img[0] / n2, 1.0 - 2.0 * img[1] * img[1] / n2],
    ];
    let (word, dmat) = (0..d.h as usize)
        .map(DihedralWord::r2_then)
        .map(|w| (w, w.matrix(&d.r1, &d.r2)))
        .find(|(_, m)| {
            let act = plane.restrict(m);
            (0..2).all(|i| (0..2).all(|j| (act[i][j] - want[i][j]).abs() < ANGLE_TOL))
        })
        .ok_or(Error::NotFound(2 * d.h as usize))?;

    let r0 = reflection_matrix(alpha0, &sys.ambient)?;
    let mut generators = Vec::new();
    for (name, r) in [("R1", &d.r1), ("R2", &d.r2)] {
        let prod = dmat.mul(r);
        let order = element_order(&prod, 4 * d.h);
        let angle = planar_angle(&plane.restrict(&prod)).rem_euclid(2.0 * PI);
        generators.push(GeneratorLabel {
            generator: name.to_string(),
            order,
            angle,
            label: order.and_then(|p| label_from(p, angle)),
            point_order: element_order(&r0.mul(r), 4 * d.h),
        });
    }
    let primary = generators
        .iter()
        .find(|g| g.order.is_some_and(|p| p > 2))
        .and_then(|g| g.label.map(|l| (g.generator.clone(), l)));
    let candidates = dihedral_affine_labels(d.h)?;
    Ok(AffineLabelReport {
        diagram: sys.diagram.to_string(),
        h: d.h,
        candidates,
        plane_reflection: word,
        in_candidates: primary.as_ref().is_some_and(|(_, l)| candidates.contains(l)),
        primary,
        generators,
        translation: affine_reflection(alpha0, 1, &sys.ambient)?.translation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HRelationReport {
    pub fold: String,
    /// 1-based index `i` of the partner `βᵢ`.
    pub partner: usize,
    pub beta0_norm_matches: bool,
    pub relation: RelationReport,
    pub fractional: FractionalReport,
    pub candidates: AffineLabels,
    pub in_candidates: bool,
}

impl HRelationReport {
    pub fn passed(&self) -> bool {
        self.relation.all_passed() && self.fractional.passed()
    }
}

/// `(r_{β₀}r_{β₂})^{5/2} = 1` for H₃ and `(r_{β₀}r_{β₁})^{5/2} = 1` for H₄.
pub fn affine_h_relations(map: &FoldingMap) -> Result<HRelationReport> {
    let rank = map.target_type.rank();
    if map.target_type.family() != Family::H || !(3..=4).contains(&rank) {
        return Err(Error::UnsupportedType(format!("{} has no affine H relation", map.name())));
    }
    let beta0 = map
        .extended_root
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no folded extended root", map.name())))?;
    let partner = if rank == 3 { 2 } else { 1 };
    let ambient = &map.source.ambient;
    let beta = &map.folded_roots[partner - 1];
    let rb0 = reflection_matrix(beta0, ambient)?;
    let rb = reflection_matrix(beta, ambient)?;
    let relation = verify_relations(&[rb0.clone(), rb.clone()], &[(Word::new(vec![0, 1]), 5)])?;
    let plane = span_plane(beta0, beta, ambient)?;
    // the rotation sense in a root plane is a choice of orientation
    let mut fractional = fractional_relation_check(&rb0, &rb, FractionalLabel::new(5, 2)?, &plane)?;
    if !fractional.angle_ok {
        let flipped = (2.0 * PI - fractional.angle).rem_euclid(2.0 * PI);
        if angle_gap(flipped, fractional.expected_angle) < ANGLE_TOL {
            fractional.angle = flipped;
            fractional.angle_ok = true;
            fractional.measured = fractional.order.and_then(|p| label_from(p, flipped));
        }
    }
    let h = map.source.coxeter_number;
    let candidates = dihedral_affine_labels(h)?;
    Ok(HRelationReport {
        fold: map.name(),
        partner,
        beta0_norm_matches: ambient.inner(beta0, beta0) == ambient.inner(&map.folded_roots[0], &map.folded_roots[0]),
        in_candidates: fractional.measured.is_some_and(|l| candidates.contains(&l)),
        relation,
        fractional,
        candidates,
    })
}
