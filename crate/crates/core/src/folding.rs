//! Graph foldings onto subgroups with the parent's Coxeter number.
//!
//! Word letters index `[r_{α₀}, r_{α₁}, …, r_{αₙ}]` of the (extended) source,
//! so letter `i ≥ 1` is the simple reflection of node `i`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{GoldenNumber, Matrix, Vector};
use crate::group::{
    coxeter_relations, element_order, enumerate_group, reflection_matrix, simple_reflections, two_coloring,
    verify_relations, RelationReport, Word,
};
use crate::rootsys::{build_extended, build_root_system, canonical_cartan, cartan_matrix_with, DiagramType, RootSystem};

#[derive(Clone, Debug)]
pub struct FoldingMap {
    pub source: RootSystem,
    pub target_type: DiagramType,
    /// `None` when the target needs scalars outside ℚ(τ).
    pub target: Option<RootSystem>,
    /// Row `i` expands folded root `i` in the source simple roots.
    pub coefficients: Vec<Vec<GoldenNumber>>,
    pub folded_roots: Vec<Vector>,
    pub generator_words: Vec<Word>,
    /// Expansion of the folded extended root in the source simple roots.
    pub extended_coefficients: Option<Vec<GoldenNumber>>,
    pub extended_root: Option<Vector>,
}

fn g(n: i64) -> GoldenNumber {
    GoldenNumber::int(n)
}

fn half() -> GoldenNumber {
    GoldenNumber::ratio(1, 2)
}

/// Coefficient row with the given `(1-based node, coefficient)` entries.
fn row(rank: usize, entries: &[(usize, GoldenNumber)]) -> Vec<GoldenNumber> {
    let mut r = vec![GoldenNumber::zero(); rank];
    for (i, c) in entries {
        r[i - 1] = c.clone();
    }
    r
}

impl FoldingMap {
    fn assemble(
        source: RootSystem,
        target_type: DiagramType,
        coefficients: Vec<Vec<GoldenNumber>>,
        generator_words: Vec<Word>,
        extended_root: Option<Vector>,
    ) -> Result<Self> {
        let folded_roots =
            coefficients.iter().map(|c| Vector::combination(c, &source.simple_roots)).collect::<Vec<_>>();
        let extended_coefficients = match &extended_root {
            Some(v) => Some(
                Matrix::from_columns(&source.simple_roots)
                    .solve_in_columns(v)
                    .ok_or_else(|| Error::InvalidDiagram("extended root outside the root span".into()))?,
            ),
            None => None,
        };
        let target = match build_root_system(&target_type) {
            Ok(t) => Some(t),
            Err(Error::UnsupportedType(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(FoldingMap {
            source,
            target_type,
            target,
            coefficients,
            folded_roots,
            generator_words,
            extended_coefficients,
            extended_root,
        })
    }

    pub fn name(&self) -> String {
        format!("{}->{}", self.source.diagram, self.target_type)
    }

    /// Whether the map folds roots (as opposed to only building `R₁`, `R₂`).
    pub fn has_roots(&self) -> bool {
        !self.folded_roots.is_empty()
    }

    /// `[r_{α₀}, r_{α₁}, …]`, the alphabet of the generator words.
    pub fn alphabet(&self) -> Result<Vec<Matrix>> {
        let mut out = Vec::with_capacity(self.source.rank() + 1);
        let alpha0 = self.source.extended_root.as_ref().expect("fold sources are extended");
        out.push(reflection_matrix(alpha0, &self.source.ambient)?);
        out.extend(simple_reflections(&self.source)?);
        Ok(out)
    }

    pub fn generator_matrices(&self) -> Result<Vec<Matrix>> {
        let alphabet = self.alphabet()?;
        self.generator_words.iter().map(|w| w.matrix(&alphabet)).collect()
    }

    /// Product of all folded generators in order.
    pub fn coxeter_element(&self) -> Result<Matrix> {
        let gens = self.generator_matrices()?;
        let dim = self.source.ambient_dim();
        Ok(gens.iter().fold(Matrix::identity(dim), |acc, m| acc.mul(m)))
    }

    pub fn folded_cartan(&self) -> Result<Option<Matrix>> {
        if !self.has_roots() {
            return Ok(None);
        }
        cartan_matrix_with(&self.folded_roots, &self.source.ambient).map(Some)
    }

    pub fn extended_folded_cartan(&self) -> Result<Option<Matrix>> {
        let Some(b0) = &self.extended_root else {
            return Ok(None);
        };
        let mut roots = vec![b0.clone()];
        roots.extend(self.folded_roots.iter().cloned());
        cartan_matrix_with(&roots, &self.source.ambient).map(Some)
    }

    /// Whether generator `i` maps every folded root as the reflection in folded root `i` does.
    pub fn words_act_as_reflections(&self) -> Result<Vec<bool>> {
        let gens = self.generator_matrices()?;
        Ok(gens
            .iter()
            .zip(&self.folded_roots)
            .map(|(m, b)| self.folded_roots.iter().all(|v| m.apply(v) == self.source.reflect(b, v)))
            .collect())
    }

    /// Whether each generator word agrees with the folded reflection on the whole ambient.
    pub fn words_equal_reflections(&self) -> Result<Vec<bool>> {
        let gens = self.generator_matrices()?;
        self.folded_roots
            .iter()
            .zip(&gens)
            .map(|(b, m)| Ok(reflection_matrix(b, &self.source.ambient)? == *m))
            .collect()
    }

    /// Coxeter relations of the target type, as words in the folded generators.
    pub fn target_relations(&self) -> Vec<(Word, u64)> {
        match &self.target {
            Some(t) if t.rank() == self.generator_words.len() => coxeter_relations(t),
            _ => {
                let h = self.source.coxeter_number;
                vec![(Word::new(vec![0]), 2), (Word::new(vec![1]), 2), (Word::new(vec![0, 1]), h)]
            }
        }
    }

    pub fn verify(&self, with_group_order: bool, cap: u64) -> Result<FoldReport> {
        let gens = self.generator_matrices()?;
        let parent_h = self.source.coxeter_number;
        let coxeter_order = element_order(&self.coxeter_element()?, 4 * parent_h);
        let canonical = canonical_cartan(&self.target_type).ok();
        let folded = self.folded_cartan()?;
        let cartan_matches = match (&folded, &canonical) {
            (Some(f), Some(c)) => Some(f == c),
            _ => None,
        };
        let cartan_det = folded.as_ref().map(|m| m.determinant()).transpose()?;
        let extended_det = match self.extended_folded_cartan()? {
            Some(m) if self.target_type.is_crystallographic() => Some(m.determinant()?),
            _ => None,
        };
        let extended_norm_matches = self.extended_root.as_ref().map(|b0| {
            self.source.norm2(b0) == self.folded_roots.iter().map(|b| self.source.norm2(b)).max().unwrap()
        });
        let acts_as_reflections = if self.has_roots() { Some(self.words_act_as_reflections()?) } else { None };
        let relations = verify_relations(&gens, &self.target_relations())?;
        let group_order = if with_group_order { Some(enumerate_group(&gens, cap)?) } else { None };
        let expected_order = crate::rootsys::catalog(&self.target_type).1;
        Ok(FoldReport {
            fold: self.name(),
            parent_h,
            coxeter_order,
            cartan_matches,
            cartan_det: cartan_det.map(|d| d.to_string()),
            extended_det: extended_det.map(|d| d.to_string()),
            extended_norm_matches,
            acts_as_reflections,
            relations,
            group_order: group_order.map(|o| o.to_string()),
            expected_group_order: expected_order.to_string(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldReport {
    pub fold: String,
    pub parent_h: u64,
    pub coxeter_order: Option<u64>,
    pub cartan_matches: Option<bool>,
    pub cartan_det: Option<String>,
    pub extended_det: Option<String>,
    pub extended_norm_matches: Option<bool>,
    pub acts_as_reflections: Option<Vec<bool>>,
    pub relations: RelationReport,
    pub group_order: Option<String>,
    pub expected_group_order: String,
}

impl FoldReport {
    pub fn passed(&self) -> bool {
        self.coxeter_order == Some(self.parent_h)
            && self.cartan_matches != Some(false)
            && self.extended_det.as_deref().is_none_or(|d| d == "0")
            && self.extended_norm_matches != Some(false)
            && self.acts_as_reflections.as_ref().is_none_or(|v| v.iter().all(|&b| b))
            && self.relations.all_passed()
            && self.group_order.as_ref().is_none_or(|o| *o == self.expected_group_order)
    }
}

/// `α′ᵢ = ½(αᵢ + α_{2n−i})` for `i < n`, `α′ₙ = αₙ`, with words `r_{αᵢ} r_{α_{2n−i}}`.
pub fn fold_a2n1_to_cn(n: usize) -> Result<FoldingMap> {
    if n < 2 {
        return Err(Error::InvalidDiagram(format!("C{n}")));
    }
    let m = 2 * n - 1;
    let source = build_extended(&DiagramType::a(m))?;
    let mut coeffs = Vec::new();
    let mut words = Vec::new();
    for i in 1..n {
        coeffs.push(row(m, &[(i, half()), (2 * n - i, half())]));
        words.push(Word::new(vec![i, 2 * n - i]));
    }
    coeffs.push(row(m, &[(n, g(1))]));
    words.push(Word::new(vec![n]));
    let alpha0 = source.extended_root.clone();
    FoldingMap::assemble(source, DiagramType::c(n), coeffs, words, alpha0)
}

/// `α′ᵢ = αᵢ` for `i ≤ n−2`, `α′_{n−1} = ½(α_{n−1} + αₙ)`.
pub fn fold_dn_to_bn1(n: usize) -> Result<FoldingMap> {
    if n < 4 {
        return Err(Error::InvalidDiagram(format!("D{n}")));
    }
    let source = build_extended(&DiagramType::d(n))?;
    let mut coeffs = Vec::new();
    let mut words = Vec::new();
    for i in 1..=n - 2 {
        coeffs.push(row(n, &[(i, g(1))]));
        words.push(Word::new(vec![i]));
    }
    coeffs.push(row(n, &[(n - 1, half()), (n, half())]));
    words.push(Word::new(vec![n - 1, n]));
    let alpha0 = source.extended_root.clone();
    FoldingMap::assemble(source, DiagramType::b(n - 1), coeffs, words, alpha0)
}

/// Point roots `α₂`, `⅓(α₁ + α₃ + α₄)`; the extended root is `α₀` of D₄.
pub fn fold_d4_to_g2() -> Result<FoldingMap> {
    let source = build_extended(&DiagramType::d(4))?;
    let third = GoldenNumber::ratio(1, 3);
    let coeffs = vec![row(4, &[(2, g(1))]), row(4, &[(1, third.clone()), (3, third.clone()), (4, third)])];
    let words = vec![Word::new(vec![2]), Word::new(vec![1, 3, 4])];
    let alpha0 = source.extended_root.clone();
    FoldingMap::assemble(source, DiagramType::g2(), coeffs, words, alpha0)
}

/// `β₁ = α₁+τα₅`, `β₂ = α₂+τα₄`, `β₃ = τα₃+α₆`, unnormalized.
pub fn fold_d6_to_h3() -> Result<FoldingMap> {
    let source = build_extended(&DiagramType::d(6))?;
    let t = GoldenNumber::tau();
    let coeffs = vec![
        row(6, &[(1, g(1)), (5, t.clone())]),
        row(6, &[(2, g(1)), (4, t.clone())]),
        row(6, &[(3, t), (6, g(1))]),
    ];
    let words = vec![Word::new(vec![1, 5]), Word::new(vec![2, 4]), Word::new(vec![3, 6])];
    let b: Vec<Vector> = coeffs.iter().map(|c| Vector::combination(c, &source.simple_roots)).collect();
    let beta0 = crate::rootsys::h3_extended(&b);
    FoldingMap::assemble(source, DiagramType::h(3), coeffs, words, Some(beta0))
}

/// `α′₁ = α₆`, `α′₂ = α₃`, `α′₃ = ½(α₂ + α₄)`, `α′₄ = ½(α₁ + α₅)`.
pub fn fold_e6_to_f4() -> Result<FoldingMap> {
    let source = build_extended(&DiagramType::e(6))?;
    let coeffs = vec![
        row(6, &[(6, g(1))]),
        row(6, &[(3, g(1))]),
        row(6, &[(2, half()), (4, half())]),
        row(6, &[(1, half()), (5, half())]),
    ];
    let words = vec![Word::new(vec![6]), Word::new(vec![3]), Word::new(vec![2, 4]), Word::new(vec![1, 5])];
    let alpha0 = source.extended_root.clone();
    FoldingMap::assemble(source, DiagramType::f4(), coeffs, words, alpha0)
}

/// `β₁ = α₁+τα₇`, `β₂ = α₂+τα₆`, `β₃ = α₃+τα₅`, `β₄ = τα₄+α₈`, unnormalized.
pub fn fold_e8_to_h4() -> Result<FoldingMap> {
    let source = build_extended(&DiagramType::e(8))?;
    let t = GoldenNumber::tau();
    let coeffs = vec![
        row(8, &[(1, g(1)), (7, t.clone())]),
        row(8, &[(2, g(1)), (6, t.clone())]),
        row(8, &[(3, g(1)), (5, t.clone())]),
        row(8, &[(4, t), (8, g(1))]),
    ];
    let words = vec![Word::new(vec![1, 7]), Word::new(vec![2, 6]), Word::new(vec![3, 5]), Word::new(vec![4, 8])];
    let b: Vec<Vector> = coeffs.iter().map(|c| Vector::combination(c, &source.simple_roots)).collect();
    let beta0 = crate::rootsys::h4_extended(&b);
    FoldingMap::assemble(source, DiagramType::h(4), coeffs, words, Some(beta0))
}

/// `R₁`, `R₂` as products over the two colour classes of `source`.
pub fn fold_to_dihedral(source_type: &DiagramType) -> Result<FoldingMap> {
    let source = build_extended(source_type)?;
    let (c1, c2) = two_coloring(&source)?;
    let words = vec![
        Word::new(c1.iter().map(|i| i + 1).collect::<Vec<_>>()),
        Word::new(c2.iter().map(|i| i + 1).collect::<Vec<_>>()),
    ];
    let target = DiagramType::i2(source.coxeter_number as i64);
    FoldingMap::assemble(source, target, Vec::new(), words, None)
}

pub fn fold_an_to_dihedral(n: usize) -> Result<FoldingMap> {
    if n < 2 {
        return Err(Error::InvalidDiagram(format!("A{n}")));
    }
    fold_to_dihedral(&DiagramType::a(n))
}

pub fn fold_dn_to_dihedral(n: usize) -> Result<FoldingMap> {
    fold_to_dihedral(&DiagramType::new(crate::rootsys::Family::D, n)?)
}

pub fn fold_e7_to_i218() -> Result<FoldingMap> {
    fold_to_dihedral(&DiagramType::e(7))
}

pub fn fold_e8_to_i230() -> Result<FoldingMap> {
    fold_to_dihedral(&DiagramType::e(8))
}

/// Dispatches a `(source, target)` pair to its folding.
pub fn fold(source: &DiagramType, target: &DiagramType) -> Result<FoldingMap> {
    use crate::rootsys::Family::*;
    let (sf, sn) = (source.family(), source.rank());
    let (tf, tn) = (target.family(), target.rank());
    let unsupported = || Error::UnsupportedType(format!("no folding {source} -> {target}"));
    match (sf, tf) {
        (A, C) if sn == 2 * tn - 1 => fold_a2n1_to_cn(tn),
        (D, B) if sn == tn + 1 => fold_dn_to_bn1(sn),
        (D, G) if sn == 4 => fold_d4_to_g2(),
        (D, H) if sn == 6 && tn == 3 => fold_d6_to_h3(),
        (E, F) if sn == 6 => fold_e6_to_f4(),
        (E, H) if sn == 8 && tn == 4 => fold_e8_to_h4(),
        (_, I2) => {
            let h = crate::rootsys::catalog(source).0;
            if target.label() != Some(&crate::exactnum::Rational::from_i64(h as i64)) {
                return Err(unsupported());
            }
            fold_to_dihedral(source)
        }
        _ => Err(unsupported()),
    }
}

/// The 24 norm-2 and 24 norm-4 vectors of the D₄ lattice.
pub fn f4_roots_from_d4() -> crate::lattice::PointSet {
    let ball = crate::lattice::lattice_ball(
        &crate::lattice::LatticeSpec::D(4),
        &crate::exactnum::Rational::from_i64(4),
        u64::MAX,
    )
    .expect("small ball");
    let points = ball.points.into_iter().filter(|v| !v.is_zero()).collect();
    crate::lattice::PointSet::new(points, "F4 roots from D4 shells", 4)
}

/// Order of the folded group, for reporting.
pub fn folded_group_order(map: &FoldingMap, cap: u64) -> Result<BigUint> {
    enumerate_group(&map.generator_matrices()?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cn_fold() {
        let m = fold_a2n1_to_cn(2).unwrap();
        assert_eq!(m.source.norm2(&m.folded_roots[0]), g(1));
        assert_eq!(m.source.norm2(&m.folded_roots[1]), g(2));
        for n in 2..=6 {
            let m = fold_a2n1_to_cn(n).unwrap();
            assert_eq!(m.folded_cartan().unwrap().unwrap().determinant().unwrap(), g(2));
            assert_eq!(m.folded_roots, m.target.as_ref().unwrap().simple_roots);
        }
        let m = fold_a2n1_to_cn(3).unwrap();
        assert_eq!(folded_group_order(&m, 1000).unwrap(), BigUint::from(48u32));
        assert!(m.verify(true, 1000).unwrap().passed());
    }

    #[test]
    fn bn_fold() {
        let m = fold_dn_to_bn1(5).unwrap();
        assert_eq!(element_order(&m.coxeter_element().unwrap(), 100), Some(8));
        let m4 = fold_dn_to_bn1(4).unwrap();
        let r = m4.verify(true, 1000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.group_order.as_deref(), Some("48"));
    }

    #[test]
    fn g2_fold() {
        let m = fold_d4_to_g2().unwrap();
        assert_eq!(m.source.norm2(&m.folded_roots[1]), GoldenNumber::ratio(2, 3));
        let c = m.folded_cartan().unwrap().unwrap();
        assert_eq!(c.determinant().unwrap(), g(1));
        let r = m.verify(true, 1000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.group_order.as_deref(), Some("12"));
        // the extended triple is affine G2
        assert_eq!(r.extended_det.as_deref(), Some("0"));
    }

    #[test]
    fn h3_fold() {
        let m = fold_d6_to_h3().unwrap();
        let r = m.verify(true, 10_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.coxeter_order, Some(10));
        assert_eq!(r.group_order.as_deref(), Some("120"));
        // only on the folded span, not on the whole ambient
        assert!(m.words_equal_reflections().unwrap().iter().all(|&b| !b));
    }

    #[test]
    fn f4_fold() {
        let m = fold_e6_to_f4().unwrap();
        assert_eq!(m.source.norm2(&m.folded_roots[2]), g(1));
        assert_eq!(m.source.norm2(&m.folded_roots[1]), g(2));
        let r = m.verify(false, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.coxeter_order, Some(12));
    }

    #[test]
    fn dihedral_folds() {
        for (s, h) in [("A3", 4), ("A4", 5), ("D6", 10), ("E7", 18), ("E8", 30)] {
            let m = fold_to_dihedral(&s.parse().unwrap()).unwrap();
            let r = m.verify(false, 0).unwrap();
            assert_eq!(r.coxeter_order, Some(h), "{s}");
            assert!(r.passed(), "{s}: {r:?}");
        }
        assert!(fold_e7_to_i218().unwrap().target.is_none());
        assert!(fold_an_to_dihedral(4).unwrap().target.is_some());
    }

    #[test]
    fn dispatch() {
        let f = |a: &str, b: &str| fold(&a.parse().unwrap(), &b.parse().unwrap());
        assert!(f("A5", "C3").is_ok());
        assert!(f("D6", "B5").is_ok());
        assert!(f("E8", "I2(30)").is_ok());
        assert!(f("E8", "I2(12)").is_err());
        assert!(f("E7", "F4").is_err());
    }
}
