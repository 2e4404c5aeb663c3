//! Simple roots, Cartan matrices, extended roots and weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{GoldenNumber, Matrix, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I2,
}

/// A Coxeter–Dynkin diagram type such as `A4`, `E8`, `H3` or `I2(5/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramType {
    family: Family,
    rank: usize,
    label: Option<Rational>,
}

impl DiagramType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::H => (2..=4).contains(&rank),
            Family::I2 => false,
        };
        if !ok {
            return Err(Error::InvalidDiagram(format!("{family:?}{rank}")));
        }
        Ok(DiagramType { family, rank, label: None })
    }

    /// Dihedral diagram with bond label `p/q` (`p/q > 2`).
    pub fn dihedral(label: Rational) -> Result<Self> {
        if label <= Rational::from_i64(2) {
            return Err(Error::InvalidDiagram(format!("I2({label})")));
        }
        Ok(DiagramType { family: Family::I2, rank: 2, label: Some(label) })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("valid A rank")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).expect("valid B rank")
    }

    pub fn c(n: usize) -> Self {
        Self::new(Family::C, n).expect("valid C rank")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("valid D rank")
    }

    pub fn e(n: usize) -> Self {
        Self::new(Family::E, n).expect("valid E rank")
    }

    pub fn f4() -> Self {
        Self::new(Family::F, 4).unwrap()
    }

    pub fn g2() -> Self {
        Self::new(Family::G, 2).unwrap()
    }

    pub fn h(n: usize) -> Self {
        Self::new(Family::H, n).expect("valid H rank")
    }

    pub fn i2(m: i64) -> Self {
        Self::dihedral(Rational::from_i64(m)).expect("valid dihedral label")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> Option<&Rational> {
        self.label.as_ref()
    }

    pub fn is_crystallographic(&self) -> bool {
        match self.family {
            Family::H => false,
            Family::I2 => {
                let l = self.label.as_ref().unwrap();
                l.is_integer() && [3, 4, 6].contains(&l.numer().try_into().unwrap_or(0i64))
            }
            _ => true,
        }
    }

    /// Numerator and denominator of the dihedral label (`m/1` for integers).
    fn label_parts(&self) -> (u64, u64) {
        let l = self.label.as_ref().expect("dihedral label");
        let p: u64 = l.numer().try_into().expect("label numerator fits u64");
        let q: u64 = l.denom().try_into().expect("label denominator fits u64");
        (p, q)
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.label.as_ref().unwrap()),
            fam => write!(f, "{fam:?}{}", self.rank),
        }
    }
}

impl FromStr for DiagramType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown diagram type `{s}`"));
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let label: Rational = inner.parse().map_err(|_| bad())?;
            return Self::dihedral(label);
        }
        let mut chars = upper.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            'H' => Family::H,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

impl Serialize for DiagramType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ambient inner product: Euclidean unless an explicit Gram matrix is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Euclidean(usize),
    Gram(Matrix),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match self {
            Ambient::Euclidean(d) => *d,
            Ambient::Gram(g) => g.rows(),
        }
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> GoldenNumber {
        match self {
            Ambient::Euclidean(_) => u.dot(v),
            Ambient::Gram(g) => u.dot(&g.apply(v)),
        }
    }

    pub fn gram(&self) -> Matrix {
        match self {
            Ambient::Euclidean(d) => Matrix::identity(*d),
            Ambient::Gram(g) => g.clone(),
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, Ambient::Euclidean(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub diagram: DiagramType,
    pub ambient: Ambient,
    pub simple_roots: Vec<Vector>,
    pub extended_root: Option<Vector>,
    pub cartan: Matrix,
    pub coxeter_number: u64,
    pub group_order: BigUint,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> GoldenNumber {
        self.ambient.inner(u, v)
    }

    pub fn norm2(&self, v: &Vector) -> GoldenNumber {
        self.ambient.inner(v, v)
    }

    /// `v − 2(v,α)/(α,α) α`.
    pub fn reflect(&self, alpha: &Vector, v: &Vector) -> Vector {
        let c = self.inner(v, alpha) * GoldenNumber::int(2) / self.norm2(alpha);
        v - &alpha.scale(&c)
    }

    /// Roots ordered with the extended root first, when present.
    pub fn extended_roots(&self) -> Vec<Vector> {
        let mut out = Vec::with_capacity(self.rank() + 1);
        out.extend(self.extended_root.iter().cloned());
        out.extend(self.simple_roots.iter().cloned());
        out
    }

    /// Cartan matrix of `α₀, α₁, …, αₙ`.
    pub fn extended_cartan(&self) -> Result<Matrix> {
        if self.extended_root.is_none() {
            return Err(Error::InvalidDiagram(format!("{} has no extended root", self.diagram)));
        }
        cartan_matrix_with(&self.extended_roots(), &self.ambient)
    }

    /// Largest squared norm among the simple roots.
    pub fn long_norm(&self) -> GoldenNumber {
        self.simple_roots.iter().map(|a| self.norm2(a)).max().expect("nonempty root system")
    }

    /// Dominant element of the orbit of the first long simple root.
    pub fn highest_root(&self) -> Vector {
        let long = self.long_norm();
        let seed = self
            .simple_roots
            .iter()
            .find(|a| self.norm2(a) == long)
            .cloned()
            .unwrap();
        let mut orbit = vec![seed.clone()];
        let mut seen = std::collections::HashSet::from([seed]);
        let mut i = 0;
        while i < orbit.len() {
            let v = orbit[i].clone();
            i += 1;
            if self.simple_roots.iter().all(|a| self.inner(&v, a).signum() >= 0) {
                return v;
            }
            for a in &self.simple_roots {
                let w = self.reflect(a, &v);
                if seen.insert(w.clone()) {
                    orbit.push(w);
                }
            }
        }
        unreachable!("finite orbit always contains a dominant element")
    }

    /// Fundamental weights inside the span of the simple roots.
    pub fn fundamental_weights(&self) -> Result<Vec<Vector>> {
        let inv = self.cartan.inverse()?;
        Ok((0..self.rank())
            .map(|i| {
                let coeffs: Vec<GoldenNumber> = (0..self.rank()).map(|k| inv[(i, k)].clone()).collect();
                Vector::combination(&coeffs, &self.simple_roots)
            })
            .collect())
    }

    /// Pairs `(i, j)` with `i < j` joined by a bond.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.cartan[(i, j)].is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn cartan_matrix(roots: &[Vector]) -> Result<Matrix> {
    let dim = roots.first().map_or(0, Vector::dim);
    cartan_matrix_with(roots, &Ambient::Euclidean(dim))
}

/// `M_ij = 2(αᵢ,αⱼ)/(αⱼ,αⱼ)`.
pub fn cartan_matrix_with(roots: &[Vector], ambient: &Ambient) -> Result<Matrix> {
    let norms: Vec<GoldenNumber> = roots.iter().map(|a| ambient.inner(a, a)).collect();
    if norms.iter().any(GoldenNumber::is_zero) {
        return Err(Error::ZeroRoot);
    }
    let n = roots.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = if i == j {
                GoldenNumber::int(2)
            } else {
                ambient.inner(&roots[i], &roots[j]) * GoldenNumber::int(2) / norms[j].clone()
            };
        }
    }
    Ok(m)
}

/// `kᵢ = lᵢ − l₀/(n+1)` with `l₀ = Σ lᵢ`, in the orthonormal `l` coordinates.
pub fn k_basis(n: usize) -> Vec<Vector> {
    assert!(n >= 1, "k_basis needs n >= 1");
    let shift = GoldenNumber::ratio(1, n as i64 + 1);
    (0..=n)
        .map(|i| {
            let mut v = Vector::new(vec![-&shift; n + 1]);
            v[i] = &v[i] + &GoldenNumber::one();
            v
        })
        .collect()
}

/// `ωᵢ = k₁ + ⋯ + kᵢ`.
pub fn weights_an(n: usize) -> Vec<Vector> {
    let k = k_basis(n);
    let mut acc = Vector::zeros(n + 1);
    (0..n)
        .map(|i| {
            acc = &acc + &k[i];
            acc.clone()
        })
        .collect()
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Coxeter number and group order.
pub fn catalog(t: &DiagramType) -> (u64, BigUint) {
    let n = t.rank as u64;
    let pow2 = |e: u64| BigUint::from(1u8) << e;
    match t.family {
        Family::A => (n + 1, factorial(n + 1)),
        Family::B | Family::C => (2 * n, pow2(n) * factorial(n)),
        Family::D => (2 * n - 2, pow2(n - 1) * factorial(n)),
        Family::E => match n {
            6 => (12, BigUint::from(51_840u32)),
            7 => (18, BigUint::from(2_903_040u32)),
            _ => (30, BigUint::from(696_729_600u32)),
        },
        Family::F => (12, BigUint::from(1152u32)),
        Family::G => (6, BigUint::from(12u32)),
        Family::H => match n {
            2 => (5, BigUint::from(10u32)),
            3 => (10, BigUint::from(120u32)),
            _ => (30, BigUint::from(14_400u32)),
        },
        Family::I2 => {
            let (p, _) = t.label_parts();
            (p, BigUint::from(2 * p))
        }
    }
}

/// Canonical Cartan matrix of a type, written out from the diagram.
pub fn canonical_cartan(t: &DiagramType) -> Result<Matrix> {
    let n = t.rank;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = GoldenNumber::int(2);
    }
    fn bond(m: &mut Matrix, i: usize, j: usize, mij: GoldenNumber, mji: GoldenNumber) {
        m[(i - 1, j - 1)] = mij;
        m[(j - 1, i - 1)] = mji;
    }
    fn chain(m: &mut Matrix, len: usize) {
        for i in 1..len {
            bond(m, i, i + 1, GoldenNumber::int(-1), GoldenNumber::int(-1));
        }
    }
    let g = GoldenNumber::int;
    match t.family {
        Family::A => chain(&mut m, n),
        Family::B => {
            chain(&mut m, n - 1);
            bond(&mut m, n - 1, n, g(-2), g(-1));
        }
        Family::C => {
            chain(&mut m, n - 1);
            bond(&mut m, n - 1, n, g(-1), g(-2));
        }
        Family::D => {
            chain(&mut m, n - 1);
            bond(&mut m, n - 2, n, g(-1), g(-1));
        }
        Family::E => {
            chain(&mut m, n - 1);
            let branch = match n {
                6 => 3,
                7 => 4,
                _ => 5,
            };
            bond(&mut m, branch, n, g(-1), g(-1));
        }
        Family::F => {
            bond(&mut m, 1, 2, g(-1), g(-1));
            bond(&mut m, 2, 3, g(-2), g(-1));
            bond(&mut m, 3, 4, g(-1), g(-1));
        }
        Family::G => bond(&mut m, 1, 2, g(-3), g(-1)),
        Family::H => {
            let t = -GoldenNumber::tau();
            if n == 2 {
                bond(&mut m, 1, 2, t.clone(), t);
            } else {
                chain(&mut m, n - 1);
                bond(&mut m, n - 1, n, t.clone(), t);
            }
        }
        Family::I2 => {
            let (a, b) = dihedral_cartan_pair(t)?;
            bond(&mut m, 1, 2, a, b);
        }
    }
    Ok(m)
}

/// `2cos(πq/p)` when it lies in ℚ(τ).
fn two_cos(p: u64, q: u64) -> Option<GoldenNumber> {
    match (p, q) {
        (2, 1) => Some(GoldenNumber::zero()),
        (3, 1) => Some(GoldenNumber::one()),
        (5, 1) => Some(GoldenNumber::tau()),
        (5, 2) => Some(GoldenNumber::from_ints(-1, 1)),
        _ => None,
    }
}

/// `4cos²(πq/p)` when it lies in ℚ(τ).
fn four_cos_sq(p: u64, q: u64) -> Option<GoldenNumber> {
    match (p, q) {
        (4, 1) => Some(GoldenNumber::int(2)),
        (6, 1) => Some(GoldenNumber::int(3)),
        (10, 1) => Some(GoldenNumber::from_ints(2, 1)),
        (10, 3) => Some(GoldenNumber::from_ints(3, -1)),
        _ => None,
    }
}

fn dihedral_cartan_pair(t: &DiagramType) -> Result<(GoldenNumber, GoldenNumber)> {
    let (p, q) = t.label_parts();
    if let Some(s) = two_cos(p, q) {
        return Ok((-&s, -s));
    }
    if let Some(c) = four_cos_sq(p, q) {
        return Ok((-c, GoldenNumber::int(-1)));
    }
    Err(Error::UnsupportedType(format!("{t} needs scalars outside Q(tau)")))
}

fn dihedral_ambient(t: &DiagramType) -> Result<Matrix> {
    let (p, q) = t.label_parts();
    if let Some(s) = two_cos(p, q) {
        return Ok(Matrix::from_rows(vec![
            vec![GoldenNumber::int(2), -&s],
            vec![-s, GoldenNumber::int(2)],
        ]));
    }
    if let Some(c) = four_cos_sq(p, q) {
        let half = &c * &GoldenNumber::ratio(-1, 2);
        return Ok(Matrix::from_rows(vec![vec![c, half.clone()], vec![half, GoldenNumber::one()]]));
    }
    Err(Error::UnsupportedType(format!("{t} needs scalars outside Q(tau)")))
}

fn q(n: i64, d: i64) -> GoldenNumber {
    GoldenNumber::ratio(n, d)
}

fn e_minus(dim: usize, i: usize, j: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = GoldenNumber::one();
    v[j] = &v[j] - &GoldenNumber::one();
    v
}

fn e_plus(dim: usize, i: usize, j: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = GoldenNumber::one();
    v[j] = &v[j] + &GoldenNumber::one();
    v
}

pub(crate) fn a_roots(n: usize) -> Vec<Vector> {
    (0..n).map(|i| e_minus(n + 1, i, i + 1)).collect()
}

pub(crate) fn d_roots(n: usize) -> Vec<Vector> {
    let mut r: Vec<Vector> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
    r.push(e_plus(n, n - 2, n - 1));
    r
}

fn b_roots(n: usize) -> Vec<Vector> {
    let mut r: Vec<Vector> = (0..n - 1).map(|i| e_minus(n, i, i + 1)).collect();
    r.push(Vector::unit(n, n - 1));
    r
}

/// Bourbaki-numbered simple roots of E₈ in ℝ⁸.
fn bourbaki_e8() -> Vec<Vector> {
    let mut b1 = Vector::new(vec![q(-1, 2); 8]);
    b1[0] = q(1, 2);
    b1[7] = q(1, 2);
    let mut out = vec![b1, e_plus(8, 0, 1)];
    for i in 3..=8 {
        out.push(e_minus(8, i - 2, i - 3));
    }
    out
}

/// E-type simple roots: chain `α₁ … α_{n−1}`, `αₙ` hanging off the branch node.
pub(crate) fn e_roots(n: usize) -> Vec<Vector> {
    let b = bourbaki_e8();
    let order: &[usize] = match n {
        6 => &[1, 3, 4, 5, 6, 2],
        7 => &[7, 6, 5, 4, 3, 1, 2],
        _ => &[8, 7, 6, 5, 4, 3, 1, 2],
    };
    order.iter().map(|&i| b[i - 1].clone()).collect()
}

fn f4_roots() -> Vec<Vector> {
    vec![
        e_minus(4, 1, 2),
        e_minus(4, 2, 3),
        Vector::unit(4, 3),
        Vector::new(vec![q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)]),
    ]
}

/// Folded C-type roots `½(αᵢ + α_{2n−i})`, `αₙ` inside the `A_{2n−1}` ambient.
pub(crate) fn c_roots(n: usize) -> Vec<Vector> {
    let a = a_roots(2 * n - 1);
    let half = q(1, 2);
    let mut r: Vec<Vector> = (0..n - 1).map(|i| (&a[i] + &a[2 * n - 2 - i]).scale(&half)).collect();
    r.push(a[n - 1].clone());
    r
}

/// `α₂` and `⅓(α₁ + α₃ + α₄)` of D₄.
pub(crate) fn g2_roots() -> Vec<Vector> {
    let d = d_roots(4);
    let short = (&(&d[0] + &d[2]) + &d[3]).scale(&q(1, 3));
    vec![d[1].clone(), short]
}

/// Unnormalized `β₁ = α₁+τα₅, β₂ = α₂+τα₄, β₃ = τα₃+α₆` of D₆.
pub(crate) fn h3_roots() -> Vec<Vector> {
    let a = d_roots(6);
    let t = GoldenNumber::tau();
    vec![
        &a[0] + &a[4].scale(&t),
        &a[1] + &a[3].scale(&t),
        &a[2].scale(&t) + &a[5],
    ]
}

/// Unnormalized `β₁ = α₁+τα₇, …, β₄ = τα₄+α₈` of E₈.
pub(crate) fn h4_roots() -> Vec<Vector> {
    let a = e_roots(8);
    let t = GoldenNumber::tau();
    vec![
        &a[0] + &a[6].scale(&t),
        &a[1] + &a[5].scale(&t),
        &a[2] + &a[4].scale(&t),
        &a[3].scale(&t) + &a[7],
    ]
}

/// `β₀ = −τ(β₁ + 2β₂ + τβ₃)`.
pub(crate) fn h3_extended(b: &[Vector]) -> Vector {
    let t = GoldenNumber::tau();
    let inner = Vector::combination(&[GoldenNumber::one(), GoldenNumber::int(2), t.clone()], b);
    inner.scale(&-t)
}

/// `β₀ = −2τβ₁ − (3τ+1)β₂ − 2τ³β₃ − τ⁴β₄`.
pub(crate) fn h4_extended(b: &[Vector]) -> Vector {
    let t = GoldenNumber::tau();
    let coeffs = [
        -&(&t * &GoldenNumber::int(2)),
        -GoldenNumber::from_ints(1, 3),
        -&(&t.pow(3) * &GoldenNumber::int(2)),
        -t.pow(4),
    ];
    Vector::combination(&coeffs, b)
}

/// Simple roots and ambient for a point system.
fn construct(t: &DiagramType) -> Result<(Ambient, Vec<Vector>)> {
    let n = t.rank;
    Ok(match t.family {
        Family::A => (Ambient::Euclidean(n + 1), a_roots(n)),
        Family::B => (Ambient::Euclidean(n), b_roots(n)),
        Family::C => (Ambient::Euclidean(2 * n), c_roots(n)),
        Family::D => (Ambient::Euclidean(n), d_roots(n)),
        Family::E => (Ambient::Euclidean(8), e_roots(n)),
        Family::F => (Ambient::Euclidean(4), f4_roots()),
        Family::G => (Ambient::Euclidean(4), g2_roots()),
        Family::H => match n {
            2 => {
                let h2 = DiagramType::dihedral(Rational::from_i64(5))?;
                (Ambient::Gram(dihedral_ambient(&h2)?), vec![Vector::unit(2, 0), Vector::unit(2, 1)])
            }
            3 => (Ambient::Euclidean(6), h3_roots()),
            _ => (Ambient::Euclidean(8), h4_roots()),
        },
        Family::I2 => (Ambient::Gram(dihedral_ambient(t)?), vec![Vector::unit(2, 0), Vector::unit(2, 1)]),
    })
}

/// Point system of type `t`; call [`extend`] to attach `α₀`.
pub fn build_root_system(t: &DiagramType) -> Result<RootSystem> {
    let (ambient, simple_roots) = construct(t)?;
    let cartan = cartan_matrix_with(&simple_roots, &ambient)?;
    let (coxeter_number, group_order) = catalog(t);
    Ok(RootSystem {
        diagram: t.clone(),
        ambient,
        simple_roots,
        extended_root: None,
        cartan,
        coxeter_number,
        group_order,
    })
}

/// Attaches the extended root: `−θ` for the highest root `θ`, or the folded `β₀` for H₃/H₄.
pub fn extend(sys: &RootSystem) -> RootSystem {
    let alpha0 = match (sys.diagram.family, sys.diagram.rank) {
        (Family::H, 3) => h3_extended(&sys.simple_roots),
        (Family::H, 4) => h4_extended(&sys.simple_roots),
        _ => -&sys.highest_root(),
    };
    RootSystem { extended_root: Some(alpha0), ..sys.clone() }
}

pub fn build_extended(t: &DiagramType) -> Result<RootSystem> {
    Ok(extend(&build_root_system(t)?))
}
