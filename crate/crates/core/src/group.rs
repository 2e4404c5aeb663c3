//! Finite reflection groups as exact matrix groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{GoldenNumber, Matrix, Vector};
use crate::rootsys::{Ambient, RootSystem};

/// Default bound on enumerated elements.
pub const DEFAULT_CAP: u64 = 20_000_000;

/// `I − 2 α (Gα)ᵀ / (α,α)`, the reflection in the hyperplane orthogonal to `α`.
pub fn reflection_matrix(alpha: &Vector, ambient: &Ambient) -> Result<Matrix> {
    let norm = ambient.inner(alpha, alpha);
    if norm.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let g_alpha = ambient.gram().apply(alpha);
    let c = GoldenNumber::int(2) / norm;
    let n = alpha.dim();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        if alpha[i].is_zero() {
            continue;
        }
        let ai = &alpha[i] * &c;
        for j in 0..n {
            if !g_alpha[j].is_zero() {
                m[(i, j)] = &m[(i, j)] - &(&ai * &g_alpha[j]);
            }
        }
    }
    Ok(m)
}

/// `MᵀGM = G`.
pub fn is_orthogonal(m: &Matrix, ambient: &Ambient) -> bool {
    let g = ambient.gram();
    m.transpose().mul(&g).mul(m) == g
}

/// Smallest `k ≤ cap` with `Mᵏ = I`.
pub fn element_order(m: &Matrix, cap: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

/// Letters index a generator list; the caller fixes what index 0 means.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn matrix(&self, gens: &[Matrix]) -> Result<Matrix> {
        let dim = gens.first().map_or(0, Matrix::rows);
        let mut acc = Matrix::identity(dim);
        for &l in &self.0 {
            let g = gens
                .get(l)
                .ok_or_else(|| Error::InvalidDiagram(format!("word letter {l} has no generator")))?;
            acc = acc.mul(g);
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| format!("r{l}")).collect();
        write!(f, "{}", if parts.is_empty() { "1".to_string() } else { parts.join("·") })
    }
}

/// Simple reflections of a root system, in root order.
pub fn simple_reflections(sys: &RootSystem) -> Result<Vec<Matrix>> {
    sys.simple_roots.iter().map(|a| reflection_matrix(a, &sys.ambient)).collect()
}

/// Bipartition of the diagram nodes (0-based); each class is mutually orthogonal.
pub fn two_coloring(sys: &RootSystem) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = sys.rank();
    let edges = sys.edges();
    let mut color: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &(a, b) in &edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                match color[w] {
                    None => {
                        color[w] = Some(1 - c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return Err(Error::NonBipartite),
                    _ => {}
                }
            }
        }
    }
    let class = |k: u8| (0..n).filter(|&i| color[i] == Some(k)).collect::<Vec<_>>();
    let (i, j) = (class(0), class(1));
    for set in [&i, &j] {
        for (x, &a) in set.iter().enumerate() {
            for &b in &set[x + 1..] {
                if !sys.inner(&sys.simple_roots[a], &sys.simple_roots[b]).is_zero() {
                    return Err(Error::NonBipartite);
                }
            }
        }
    }
    Ok((i, j))
}

#[derive(Clone, Debug)]
pub struct Dihedral {
    pub r1: Matrix,
    pub r2: Matrix,
    pub class1: Vec<usize>,
    pub class2: Vec<usize>,
    /// Order of `R₁R₂`.
    pub h: u64,
}

impl Dihedral {
    pub fn coxeter_element(&self) -> Matrix {
        self.r1.mul(&self.r2)
    }
}

pub fn product_of(indices: &[usize], reflections: &[Matrix], dim: usize) -> Matrix {
    indices.iter().fold(Matrix::identity(dim), |acc, &i| acc.mul(&reflections[i]))
}

/// `R₁`, `R₂` from the two colour classes, and the order of `R₁R₂`.
pub fn dihedral_generators(sys: &RootSystem) -> Result<Dihedral> {
    let (class1, class2) = two_coloring(sys)?;
    let refl = simple_reflections(sys)?;
    let dim = sys.ambient_dim();
    let r1 = product_of(&class1, &refl, dim);
    let r2 = product_of(&class2, &refl, dim);
    let cap = 4 * sys.coxeter_number.max(1);
    let h = element_order(&r1.mul(&r2), cap).ok_or(Error::CapExceeded(cap))?;
    Ok(Dihedral { r1, r2, class1, class2, h })
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub seed: Vector,
    /// Sorted by exact lexicographic order.
    pub points: Vec<Vector>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.points.binary_search(v).is_ok()
    }
}

pub fn orbit(gens: &[Matrix], seed: &Vector, cap: u64) -> Result<Orbit> {
    let mut seen: HashSet<Vector> = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = g.apply(&v);
            if !seen.contains(&w) {
                if seen.len() as u64 >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut points: Vec<Vector> = seen.into_iter().collect();
    points.sort();
    Ok(Orbit { seed: seed.clone(), points })
}

/// Basis of `Σ Im(gᵢ − I)`, the smallest subspace carrying the whole action.
fn moved_subspace(gens: &[Matrix]) -> Vec<Vector> {
    let dim = gens.first().map_or(0, Matrix::rows);
    let id = Matrix::identity(dim);
    let cols: Vec<Vector> = gens
        .iter()
        .flat_map(|g| {
            let d = g - &id;
            (0..dim).map(move |j| d.column(j))
        })
        .filter(|v| !v.is_zero())
        .collect();
    if cols.is_empty() {
        return Vec::new();
    }
    let (_, pivots) = Matrix::from_columns(&cols).row_echelon();
    pivots.into_iter().map(|j| cols[j].clone()).collect()
}

/// Generators restricted to the moved subspace, in a basis of it.
pub fn restrict_to_moved(gens: &[Matrix]) -> Vec<Matrix> {
    let basis = moved_subspace(gens);
    let b = Matrix::from_columns(&basis);
    gens.iter()
        .map(|g| {
            let cols: Vec<Vector> = basis
                .iter()
                .map(|v| {
                    let image = g.apply(v);
                    Vector::new(b.solve_in_columns(&image).expect("moved subspace is invariant"))
                })
                .collect();
            Matrix::from_columns(&cols)
        })
        .collect()
}

/// Exact order of the group generated by `gens`, by breadth-first closure.
///
/// The action on the complement of the moved subspace is unipotent, so for a
/// finite group the restriction is faithful and the count is exact.
pub fn enumerate_group(gens: &[Matrix], cap: u64) -> Result<BigUint> {
    let small = restrict_to_moved(gens);
    let k = small.first().map_or(0, Matrix::rows);
    let id = Matrix::identity(k);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &small {
                let p = m.mul(g);
                if !seen.contains(&p) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    seen.insert(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(BigUint::from(seen.len()))
}

/// Group order as `|W·ρ| · |Stab(ρ)|` with `ρ` dominant, recursing into the
/// parabolic stabilizer generated by the simple roots orthogonal to `ρ`.
pub fn order_by_orbit_stabilizer(roots: &[Vector], ambient: &Ambient) -> BigUint {
    if roots.is_empty() {
        return BigUint::from(1u8);
    }
    let reflect = |a: &Vector, v: &Vector| {
        let c = ambient.inner(v, a) * GoldenNumber::int(2) / ambient.inner(a, a);
        v - &a.scale(&c)
    };
    let seed = roots[0].clone();
    let mut seen: HashSet<Vector> = HashSet::from([seed.clone()]);
    let mut list = vec![seed];
    let mut i = 0;
    while i < list.len() {
        let v = list[i].clone();
        i += 1;
        for a in roots {
            let w = reflect(a, &v);
            if seen.insert(w.clone()) {
                list.push(w);
            }
        }
    }
    let dominant = list
        .iter()
        .find(|v| roots.iter().all(|a| ambient.inner(v, a).signum() >= 0))
        .expect("orbit contains a dominant element");
    let stabilizer: Vec<Vector> =
        roots.iter().filter(|a| ambient.inner(dominant, a).is_zero()).cloned().collect();
    BigUint::from(list.len()) * order_by_orbit_stabilizer(&stabilizer, ambient)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub word: String,
    pub expected: u64,
    pub holds: bool,
    pub minimal: bool,
    pub measured: Option<u64>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.holds && self.minimal
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

fn proper_divisors(m: u64) -> Vec<u64> {
    (1..m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Checks `word^m = I` with `m` minimal, for each `(word, m)`.
pub fn verify_relations(gens: &[Matrix], relations: &[(Word, u64)]) -> Result<RelationReport> {
    let mut checks = Vec::new();
    for (word, m) in relations {
        let w = word.matrix(gens)?;
        let holds = w.pow(*m).is_identity();
        let minimal = proper_divisors(*m).iter().all(|&d| !w.pow(d).is_identity());
        let measured = element_order(&w, 4 * m.max(&1));
        checks.push(RelationCheck { word: word.to_string(), expected: *m, holds, minimal, measured });
    }
    Ok(RelationReport { checks })
}

/// Coxeter relations `rᵢ² = 1`, `(rᵢrⱼ)^{mᵢⱼ} = 1` read off the Cartan matrix.
pub fn coxeter_relations(sys: &RootSystem) -> Vec<(Word, u64)> {
    let n = sys.rank();
    let mut out: Vec<(Word, u64)> = (0..n).map(|i| (Word::new(vec![i]), 2)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let prod = &sys.cartan[(i, j)] * &sys.cartan[(j, i)];
            out.push((Word::new(vec![i, j]), bond_order(&prod)));
        }
    }
    out
}

/// Order of `rᵢrⱼ` from `MᵢⱼMⱼᵢ = 4cos²(πq/p)`: the numerator `p`.
fn bond_order(prod: &GoldenNumber) -> u64 {
    let x = prod.to_f64();
    if x.abs() < 1e-12 {
        return 2;
    }
    let ratio = std::f64::consts::PI / (x.sqrt() / 2.0).clamp(-1.0, 1.0).acos();
    (1..=12u64)
        .map(|q| ratio * q as f64)
        .find(|p| (p - p.round()).abs() < 1e-9)
        .map_or(0, |p| p.round() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, k_basis, weights_an, DiagramType};

    fn sys(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn reflection_basics() {
        let a2 = sys("A2");
        let r1 = reflection_matrix(&a2.simple_roots[0], &a2.ambient).unwrap();
        assert_eq!(r1.apply(&a2.simple_roots[0]), -&a2.simple_roots[0]);
        assert!(r1.mul(&r1).is_identity());
        assert_eq!(r1.apply(&a2.simple_roots[1]), &a2.simple_roots[0] + &a2.simple_roots[1]);
        assert!(is_orthogonal(&r1, &a2.ambient));
        assert_eq!(reflection_matrix(&Vector::zeros(3), &a2.ambient), Err(Error::ZeroRoot));
    }

    #[test]
    fn reflections_in_gram_ambient_are_orthogonal() {
        let h2 = sys("H2");
        for m in simple_reflections(&h2).unwrap() {
            assert!(is_orthogonal(&m, &h2.ambient));
            assert_eq!(element_order(&m, 10), Some(2));
        }
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(&Matrix::identity(3), 5), Some(1));
        assert_eq!(dihedral_generators(&sys("A4")).unwrap().h, 5);
        assert_eq!(dihedral_generators(&sys("E8")).unwrap().h, 30);
        assert_eq!(element_order(&dihedral_generators(&sys("E8")).unwrap().coxeter_element(), 29), None);
    }

    #[test]
    fn colorings() {
        let one_based = |(i, j): (Vec<usize>, Vec<usize>)| {
            (i.iter().map(|x| x + 1).collect::<Vec<_>>(), j.iter().map(|x| x + 1).collect::<Vec<_>>())
        };
        assert_eq!(one_based(two_coloring(&sys("A4")).unwrap()), (vec![1, 3], vec![2, 4]));
        assert_eq!(one_based(two_coloring(&sys("E8")).unwrap()), (vec![1, 3, 5, 7], vec![2, 4, 6, 8]));
        assert_eq!(one_based(two_coloring(&sys("E7")).unwrap()), (vec![1, 3, 5, 7], vec![2, 4, 6]));
        assert_eq!(one_based(two_coloring(&sys("E6")).unwrap()), (vec![1, 3, 5], vec![2, 4, 6]));
        assert_eq!(one_based(two_coloring(&sys("D6")).unwrap()), (vec![1, 3, 5, 6], vec![2, 4]));
    }

    #[test]
    fn weight_orbits() {
        let a4 = sys("A4");
        let gens = simple_reflections(&a4).unwrap();
        let w = weights_an(4);
        let k = k_basis(4);
        let o1 = orbit(&gens, &w[0], 1000).unwrap();
        assert_eq!(o1.len(), 5);
        assert!(k.iter().all(|v| o1.contains(v)));
        let o4 = orbit(&gens, &w[3], 1000).unwrap();
        assert!(k.iter().all(|v| o4.contains(&-v)));
        assert_eq!(orbit(&gens, &w[1], 3).unwrap_err(), Error::CapExceeded(3));
    }

    #[test]
    fn small_group_orders() {
        for n in 1..=5 {
            let gens = simple_reflections(&sys(&format!("A{n}"))).unwrap();
            let fact: u64 = (1..=n as u64 + 1).product();
            assert_eq!(enumerate_group(&gens, 10_000).unwrap(), BigUint::from(fact));
        }
        let g2 = simple_reflections(&sys("G2")).unwrap();
        assert_eq!(enumerate_group(&g2, 100).unwrap(), BigUint::from(12u32));
        assert_eq!(enumerate_group(&g2, 5), Err(Error::CapExceeded(5)));
    }

    #[test]
    fn orbit_stabilizer_matches_catalog() {
        for s in ["A5", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(5/2)"] {
            let r = sys(s);
            assert_eq!(order_by_orbit_stabilizer(&r.simple_roots, &r.ambient), r.group_order, "{s}");
        }
    }

    #[test]
    fn coxeter_relations_hold() {
        for s in ["B3", "F4", "H3", "G2", "I2(10/3)"] {
            let r = sys(s);
            let report = verify_relations(&simple_reflections(&r).unwrap(), &coxeter_relations(&r)).unwrap();
            assert!(report.all_passed(), "{s}: {report:?}");
        }
        let bad = verify_relations(&simple_reflections(&sys("A2")).unwrap(), &[(Word::new(vec![0, 1]), 6)])
            .unwrap();
        assert!(bad.checks[0].holds && !bad.checks[0].minimal);
    }

    #[test]
    fn i2_label_orders() {
        // 5/2 is a rotation of order 5
        let r = sys("I2(5/2)");
        let d = dihedral_generators(&r).unwrap();
        assert_eq!(d.h, 5);
        assert_eq!(r.diagram, DiagramType::dihedral("5/2".parse().unwrap()).unwrap());
    }
}
