//! Finite subgroups of SO(3), isotypic decompositions of `H₃`, invariant 3-planes and
//! stabilizers of 3-planes.

use std::collections::HashSet;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::g2::{planes, ThreePlane};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::rep::{so3_basis, HarmonicModule};
use crate::scalar::{exact_cos_sin, FieldScalar, RealScalar, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabError {
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("group {0} has no exact generators in the field")]
    NotExact(String),
}

pub const DEFAULT_CAP: usize = 10_000;

/// A finite matrix group given by its full list of elements.
#[derive(Clone, Debug)]
pub struct FiniteGroup<S: Scalar> {
    pub name: String,
    pub elements: Vec<Matrix<S>>,
}

impl<S: Scalar> FiniteGroup<S> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Breadth-first closure of a generating set under multiplication; `key` decides equality.
pub fn group_closure_by<S: Scalar, K: Hash + Eq>(
    name: &str,
    generators: &[Matrix<S>],
    cap: usize,
    key: impl Fn(&Matrix<S>) -> K,
) -> Result<FiniteGroup<S>, StabError> {
    let n = generators.first().map_or(3, Matrix::rows);
    let id = Matrix::identity(n);
    let mut seen = HashSet::new();
    seen.insert(key(&id));
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let m = elements[i].mul(g);
            if seen.insert(key(&m)) {
                if elements.len() >= cap {
                    return Err(StabError::CapExceeded(cap));
                }
                elements.push(m);
            }
        }
        i += 1;
    }
    Ok(FiniteGroup {
        name: name.to_string(),
        elements,
    })
}

/// Exact closure over Q(√2, √3, √5).
pub fn group_closure(
    name: &str,
    generators: &[Matrix<FieldScalar>],
    cap: usize,
) -> Result<FiniteGroup<FieldScalar>, StabError> {
    group_closure_by(name, generators, cap, |m| m.entries().to_vec())
}

/// Floating-point closure, identifying matrices that agree to about 1e-9.
pub fn group_closure_f64(name: &str, generators: &[Matrix<f64>], cap: usize) -> Result<FiniteGroup<f64>, StabError> {
    group_closure_by(name, generators, cap, |m| {
        m.entries().iter().map(|x| (x * 1e9).round() as i64).collect::<Vec<_>>()
    })
}

/// The finite subgroups of SO(3) that appear in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogueGroup {
    Trivial,
    /// Rotations about the x-axis by multiples of 2π/n.
    Cyclic(u32),
    /// `Z_n` together with `diag(−1, −1, 1)`.
    Dihedral(u32),
    Tet,
    Oct,
    /// The icosahedral group with the icosahedron `(0, ±τ, ±1)` and its cyclic permutations.
    Ico,
    /// The icosahedral group preserving the dodecahedron with vertices `(0, ±τ, ±1/τ)`, ….
    Dodeca,
}

impl CatalogueGroup {
    pub fn parse(s: &str) -> Option<Self> {
        let lower = s.to_ascii_lowercase();
        Some(match lower.as_str() {
            "trivial" | "1" | "z1" => Self::Trivial,
            "tet" => Self::Tet,
            "oct" => Self::Oct,
            "ico" => Self::Ico,
            "dodeca" => Self::Dodeca,
            _ => {
                if let Some(n) = lower.strip_prefix('z') {
                    Self::Cyclic(n.parse().ok()?)
                } else {
                    let n = lower.strip_prefix('d')?;
                    Self::Dihedral(n.parse().ok()?)
                }
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Trivial => "trivial".into(),
            Self::Cyclic(n) => format!("Z{n}"),
            Self::Dihedral(n) => format!("D{n}"),
            Self::Tet => "Tet".into(),
            Self::Oct => "Oct".into(),
            Self::Ico => "Ico".into(),
            Self::Dodeca => "Dodeca".into(),
        }
    }

    fn cyclic_generator<S: Scalar>(c: S, s: S) -> Matrix<S> {
        crate::rep::axis_rotation(0, c, s)
    }

    /// Generators with entries in a scalar type able to hold them.
    fn generators_generic<S: Scalar>(&self, cos_sin: impl Fn(u32) -> Option<(S, S)>) -> Option<Vec<Matrix<S>>> {
        let int = |rows: &[&[i64]]| Matrix::<S>::from_int_rows(rows);
        let cyc = int(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let c2 = int(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        let tau = S::from_ratio(1, 2) + S::radical(1, 2, 5);
        let tau_inv = tau.clone() - S::one();
        let half = S::from_ratio(1, 2);
        let one = S::one;
        Some(match *self {
            Self::Trivial => vec![Matrix::identity(3)],
            Self::Cyclic(n) => {
                let (c, s) = cos_sin(n)?;
                vec![Self::cyclic_generator(c, s)]
            }
            Self::Dihedral(n) => {
                let (c, s) = cos_sin(n)?;
                vec![Self::cyclic_generator(c, s), c2]
            }
            Self::Tet => vec![c2, cyc],
            Self::Oct => vec![
                int(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
                cyc,
                int(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            ],
            Self::Ico => vec![
                c2,
                cyc,
                Matrix::from_rows(vec![
                    vec![one(), -tau.clone(), tau_inv.clone()],
                    vec![tau.clone(), tau_inv.clone(), -one()],
                    vec![tau_inv, one(), tau],
                ])
                .scale(&half),
            ],
            Self::Dodeca => vec![
                c2,
                cyc,
                Matrix::from_rows(vec![
                    vec![one(), -tau_inv.clone(), -tau.clone()],
                    vec![-tau_inv.clone(), tau.clone(), -one()],
                    vec![tau, one(), tau_inv],
                ])
                .scale(&half),
            ],
        })
    }

    pub fn generators_f64(&self) -> Vec<Matrix<f64>> {
        self.generators_generic(|n| {
            let t = 2.0 * std::f64::consts::PI / n as f64;
            Some((t.cos(), t.sin()))
        })
        .expect("float generators always exist")
    }

    /// Exact generators; `None` for cyclic and dihedral groups whose rotation angle leaves the field.
    pub fn generators_exact(&self) -> Option<Vec<Matrix<FieldScalar>>> {
        self.generators_generic(|n| exact_cos_sin(2, n as i64))
    }

    pub fn elements_f64(&self) -> FiniteGroup<f64> {
        let mut g = group_closure_f64(&self.name(), &self.generators_f64(), DEFAULT_CAP).expect("finite group");
        g.name = self.name();
        g
    }

    pub fn elements_exact(&self) -> Result<FiniteGroup<FieldScalar>, StabError> {
        let gens = self.generators_exact().ok_or_else(|| StabError::NotExact(self.name()))?;
        group_closure(&self.name(), &gens, DEFAULT_CAP)
    }
}

/// `ρ₃` applied to each element of a group.
pub fn rho3_all<S: Scalar>(group: &FiniteGroup<S>) -> Vec<Matrix<S>> {
    let h3 = HarmonicModule::<S>::new(3);
    group.elements.iter().map(|g| h3.rho(g)).collect()
}

/// One isotypic component of `H₃` under a finite group.
#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    /// Orthonormal basis, one column per vector.
    pub basis: Matrix<f64>,
    pub irrep_dim: usize,
    pub multiplicity: usize,
    /// Orthonormal bases of the irreducible summands found by the commutant split.
    pub irreducibles: Vec<Matrix<f64>>,
}

impl IsotypicBlock {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// Isotypic decomposition of `H₃` under `ρ₃(G)` by diagonalizing a random element of the commutant.
pub fn invariant_subspaces(group: &FiniteGroup<f64>, seed: u64) -> Vec<IsotypicBlock> {
    let rhos = rho3_all(group);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..8 {
        let m = {
            let entries: Vec<f64> = (0..49).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = Matrix::from_fn(7, 7, |i, j| entries[7 * i + j]);
            a.add(&a.transpose())
        };
        let mut c = Matrix::zeros(7, 7);
        for r in &rhos {
            c = c.add(&r.mul(&m).mul(&r.transpose()));
        }
        let c = c.scale(&(1.0 / rhos.len() as f64));
        let (vals, vecs) = symmetric_eigen(&c);
        // Cluster equal eigenvalues.
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            match clusters.last_mut() {
                Some(cl) if (vals[*cl.last().unwrap()] - v).abs() < 1e-8 => cl.push(i),
                _ => clusters.push(vec![i]),
            }
        }
        let irreducibles: Vec<Matrix<f64>> = clusters
            .iter()
            .map(|cl| Matrix::from_fn(7, cl.len(), |r, k| vecs[(r, cl[k])]))
            .collect();
        // Reject accidental coincidences: each cluster must be invariant.
        let invariant = irreducibles.iter().all(|q| {
            let p = q.mul(&q.transpose());
            rhos.iter().all(|r| r.mul(&p).sub(&p.mul(r)).max_abs() < 1e-8)
        });
        if !invariant {
            continue;
        }
        let characters: Vec<Vec<f64>> = irreducibles
            .iter()
            .map(|q| rhos.iter().map(|r| q.transpose().mul(r).mul(q).trace()).collect())
            .collect();
        let mut blocks: Vec<(Vec<usize>, Vec<f64>)> = Vec::new();
        for (i, ch) in characters.iter().enumerate() {
            let found = blocks.iter_mut().find(|(_, c)| {
                c.len() == ch.len() && c.iter().zip(ch).all(|(a, b)| (a - b).abs() < 1e-6)
            });
            match found {
                Some((members, _)) => members.push(i),
                None => blocks.push((vec![i], ch.clone())),
            }
        }
        let mut out: Vec<IsotypicBlock> = blocks
            .into_iter()
            .map(|(members, _)| {
                let parts: Vec<Matrix<f64>> = members.iter().map(|&i| irreducibles[i].clone()).collect();
                let cols: Vec<Vec<f64>> = parts.iter().flat_map(|p| p.columns()).collect();
                IsotypicBlock {
                    basis: Matrix::from_columns(&cols),
                    irrep_dim: parts[0].cols(),
                    multiplicity: parts.len(),
                    irreducibles: parts,
                }
            })
            .collect();
        out.sort_by_key(|b| std::cmp::Reverse(b.dim()));
        return out;
    }
    panic!("commutant element kept producing degenerate spectra")
}

/// Whether span(`basis`) is invariant under every matrix in `rhos` (exact for exact scalars).
pub fn is_invariant_subspace<S: Scalar>(basis: &[Vec<S>], rhos: &[Matrix<S>], tol: f64) -> bool {
    let b = Matrix::from_columns(basis);
    let k = basis.len();
    rhos.iter().all(|r| {
        let img = r.mul(&b);
        let mut cols = b.columns();
        cols.extend(img.columns());
        Matrix::from_columns(&cols).rank(tol) == k
    })
}

/// Commutation defect `max |ρP − Pρ|` of the orthogonal projector onto span(`basis`).
pub fn projector_commutation<S: Scalar>(basis: &[Vec<S>], rhos: &[Matrix<S>]) -> (bool, f64) {
    let b = Matrix::from_columns(basis);
    let bt = b.transpose();
    let p = b.mul(&bt.mul(&b).inverse().expect("independent basis")).mul(&bt);
    let mut exact = true;
    let mut worst = 0.0f64;
    for r in rhos {
        let d = r.mul(&p).sub(&p.mul(r));
        exact &= d.is_zero();
        worst = worst.max(d.max_abs());
    }
    (exact, worst)
}

/// How an invariant 3-plane occurs in the classification for a group.
#[derive(Clone, Debug)]
pub enum PlaneKind {
    Isolated(ThreePlane<f64>),
    /// A continuous family, with a representative member.
    Family { representative: ThreePlane<f64>, parameters: usize },
}

#[derive(Clone, Debug)]
pub struct PlaneEntry {
    pub name: String,
    pub kind: PlaneKind,
    pub associative: bool,
    pub calibration_value: f64,
}

fn entry(name: &str, kind: PlaneKind) -> PlaneEntry {
    let plane = match &kind {
        PlaneKind::Isolated(p) => p.clone(),
        PlaneKind::Family { representative, .. } => representative.clone(),
    };
    let v = plane.calibration_value();
    PlaneEntry {
        name: name.to_string(),
        associative: (v.abs() - 1.0).abs() < 1e-10,
        calibration_value: v,
        kind,
    }
}

/// The invariant 3-planes of a catalogued group, up to the equivalences used in the
/// classification (the isolated planes and one representative per family).
pub fn invariant_three_planes(group: CatalogueGroup) -> Vec<PlaneEntry> {
    use planes::*;
    use PlaneKind::*;
    let iso = |p: ThreePlane<f64>| Isolated(p);
    let fam = |p: ThreePlane<f64>, n: usize| Family {
        representative: p,
        parameters: n,
    };
    match group {
        CatalogueGroup::Cyclic(n) if n > 6 => vec![
            entry("A123", iso(a123())),
            entry("A145", iso(a145())),
            entry("A167", iso(a167())),
        ],
        CatalogueGroup::Cyclic(6) => vec![
            entry("A123", iso(a123())),
            entry("A145", iso(a145())),
            entry("A167", iso(a167())),
            entry("span(e2,e3,e6)", iso(ThreePlane::coordinate(2, 3, 6))),
            entry("span(e2,e3,e7)", iso(ThreePlane::coordinate(2, 3, 7))),
            entry("span(e4,e5,e6)", iso(ThreePlane::coordinate(4, 5, 6))),
            entry("span(e4,e5,e7)", iso(ThreePlane::coordinate(4, 5, 7))),
        ],
        CatalogueGroup::Cyclic(5) => vec![entry("A123", iso(a123())), entry("Q5", fam(q5(0.4), 1))],
        CatalogueGroup::Cyclic(4) => vec![
            entry("A145", iso(a145())),
            entry("Q4a", fam(q4a(0.4), 1)),
            entry("Q4b", fam(q4b(0.3, 0.4), 2)),
        ],
        CatalogueGroup::Cyclic(3) => vec![
            entry("A167", iso(a167())),
            entry("Q3", fam(q3(0.4, [0.6, 0.0, 0.8]), 3)),
        ],
        CatalogueGroup::Tet => vec![entry("P", fam(p_theta(0.4), 1))],
        CatalogueGroup::Oct => vec![
            entry("A_Oct", iso(a_oct::<f64>())),
            entry("W", iso(w_oct::<f64>())),
        ],
        CatalogueGroup::Ico | CatalogueGroup::Dodeca => {
            let mut p = a_ico::<f64>();
            if group == CatalogueGroup::Dodeca {
                // The two icosahedral groups are conjugate by a quarter turn about the x-axis.
                let h3 = HarmonicModule::<f64>::new(3);
                let q = crate::rep::rotation_x(std::f64::consts::FRAC_PI_2);
                p = p.transform(&h3.rho(&q));
            }
            vec![entry("A_Ico", iso(p))]
        }
        _ => Vec::new(),
    }
}

/// Invariant 3-planes that arise as sums of whole isotypic blocks, and the block
/// combinations that produce continuous families.
#[derive(Clone, Debug, Default)]
pub struct BlockEnumeration {
    pub isolated: Vec<Matrix<f64>>,
    /// `(block index, number of irreducible summands taken)` for each family.
    pub families: Vec<Vec<(usize, usize)>>,
}

pub fn enumerate_from_blocks(blocks: &[IsotypicBlock]) -> BlockEnumeration {
    let mut out = BlockEnumeration::default();
    fn rec(blocks: &[IsotypicBlock], i: usize, remaining: usize, pick: &mut Vec<(usize, usize)>, out: &mut BlockEnumeration) {
        if remaining == 0 {
            let whole = pick.iter().all(|&(b, j)| j == blocks[b].multiplicity);
            if whole {
                let cols: Vec<Vec<f64>> = pick.iter().flat_map(|&(b, _)| blocks[b].basis.columns()).collect();
                out.isolated.push(Matrix::from_columns(&cols));
            } else {
                out.families.push(pick.clone());
            }
            return;
        }
        if i == blocks.len() {
            return;
        }
        rec(blocks, i + 1, remaining, pick, out);
        let b = &blocks[i];
        for j in 1..=b.multiplicity {
            let d = j * b.irrep_dim;
            if d > remaining {
                break;
            }
            pick.push((i, j));
            rec(blocks, i + 1, remaining - d, pick, out);
            pick.pop();
        }
    }
    rec(blocks, 0, 3, &mut Vec::new(), &mut out);
    out
}

/// Dimension of `{X ∈ so(3) : ρ₃'(X) E ⊆ E}`.
pub fn lie_stabilizer_dim<S: Scalar>(plane: &ThreePlane<S>, tol: f64) -> usize {
    let h3 = HarmonicModule::<S>::new(3);
    let gens: Vec<Matrix<S>> = so3_basis::<S>().iter().map(|x| h3.drho(x)).collect();
    lie_stabilizer_dim_with(plane, &gens, tol)
}

/// Same as [`lie_stabilizer_dim`] with precomputed `ρ₃'(Lᵢ)`.
pub fn lie_stabilizer_dim_with<S: Scalar>(plane: &ThreePlane<S>, drho: &[Matrix<S>], tol: f64) -> usize {
    // Linear conditions on x ∈ R³: the images Σ xᵢ ρ'(Lᵢ)uⱼ lie in E, i.e. are killed by the
    // annihilator of E.
    let b = plane.basis_matrix();
    let ann = b.transpose().nullspace(tol);
    let mut rows = Vec::new();
    for a in &ann {
        for j in 0..3 {
            let row: Vec<S> = drho
                .iter()
                .map(|d| crate::linalg::dot(a, &d.mul_vec(&plane.basis[j])))
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return drho.len();
    }
    drho.len() - Matrix::from_rows(rows).rank(tol)
}

/// Whether every element of the group (through `ρ₃`) maps the plane to itself.
pub fn stabilizer_contains<S: Scalar>(plane: &ThreePlane<S>, rhos: &[Matrix<S>], tol: f64) -> bool {
    is_invariant_subspace(&plane.basis, rhos, tol)
}

/// Orthonormal basis matrix (7×3) of a plane as `f64`.
pub fn plane_frame<S: RealScalar>(plane: &ThreePlane<S>) -> Matrix<f64> {
    plane.to_f64().frame()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_parsing() {
        assert_eq!(CatalogueGroup::parse("Z6"), Some(CatalogueGroup::Cyclic(6)));
        assert_eq!(CatalogueGroup::parse("d3"), Some(CatalogueGroup::Dihedral(3)));
        assert_eq!(CatalogueGroup::parse("Ico"), Some(CatalogueGroup::Ico));
        assert_eq!(CatalogueGroup::parse("x"), None);
    }

    #[test]
    fn exact_orders() {
        assert_eq!(CatalogueGroup::Ico.elements_exact().unwrap().order(), 60);
        assert_eq!(CatalogueGroup::Oct.elements_exact().unwrap().order(), 24);
        assert_eq!(CatalogueGroup::Tet.elements_exact().unwrap().order(), 12);
        assert_eq!(CatalogueGroup::Trivial.elements_exact().unwrap().order(), 1);
        assert!(CatalogueGroup::Cyclic(5).elements_exact().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = CatalogueGroup::Ico.generators_exact().unwrap();
        assert_eq!(group_closure("Ico", &g, 10).unwrap_err(), StabError::CapExceeded(10));
    }
}
