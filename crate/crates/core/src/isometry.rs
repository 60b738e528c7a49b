//! Certified integral isometries and seeded sampling of isometry words.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::{vectors_of_norm, BoxIter};
use crate::error::{LatticeError, Result};
use crate::lattice::{builtin, Lattice};
use crate::matrix::SquareMatrix;
use crate::vector::LatticeVector;

/// An integer matrix `M` with `Mᵀ G M = G` and `det M = ±1`, acting on
/// coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    lattice: Arc<Lattice>,
    matrix: SquareMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryJson {
    pub lattice: String,
    pub matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn certify(lattice: Arc<Lattice>, matrix: SquareMatrix) -> Result<Self> {
        let n = lattice.rank();
        if matrix.dim() != n {
            return Err(LatticeError::RankMismatch { expected: n, found: matrix.dim() });
        }
        let g = lattice.gram();
        let pulled = matrix.transpose().mul(g)?.mul(&matrix)?;
        if &pulled != g {
            return Err(LatticeError::NotIsometry);
        }
        // det(M)² det(G) = det(G) settles |det M| = 1 when G is nondegenerate
        if !lattice.is_nondegenerate() && !matrix.determinant().abs().is_one() {
            return Err(LatticeError::NotIsometry);
        }
        Ok(Isometry { lattice, matrix })
    }

    pub fn from_json(json: &IsometryJson) -> Result<Self> {
        Isometry::certify(Arc::new(builtin(&json.lattice)?), SquareMatrix::from_rows(json.matrix.clone())?)
    }

    pub fn to_json(&self) -> IsometryJson {
        IsometryJson { lattice: self.lattice.name().to_string(), matrix: self.matrix.rows() }
    }

    pub fn identity(lattice: Arc<Lattice>) -> Self {
        let n = lattice.rank();
        Isometry { lattice, matrix: SquareMatrix::identity(n) }
    }

    pub fn negation(lattice: Arc<Lattice>) -> Self {
        let n = lattice.rank();
        let matrix = SquareMatrix::identity(n).scale(-1).expect("no overflow");
        Isometry { lattice, matrix }
    }

    /// Coordinate permutation exchanging basis vectors `i` and `j`.
    pub fn swap(lattice: Arc<Lattice>, i: usize, j: usize) -> Result<Self> {
        let n = lattice.rank();
        let mut m = SquareMatrix::identity(n);
        m.set(i, i, 0);
        m.set(j, j, 0);
        m.set(i, j, 1);
        m.set(j, i, 1);
        Isometry::certify(lattice, m)
    }

    /// `σ_δ(w) = w − (2⟨w,δ⟩/⟨δ,δ⟩) δ`.
    pub fn reflection(delta: &LatticeVector) -> Result<Self> {
        let lattice = delta.lattice().clone();
        let d = delta.coords();
        let norm = delta.norm()?;
        if norm == 0 {
            return Err(LatticeError::IsotropicReflectionVector);
        }
        let pairings = lattice.pairings(d)?;
        let mut columns = Vec::with_capacity(d.len());
        for (j, &p) in pairings.iter().enumerate() {
            let twice = p.checked_mul(2).ok_or(LatticeError::Overflow)?;
            if twice % norm != 0 {
                return Err(LatticeError::NotIntegralReflection { norm });
            }
            let k = twice / norm;
            let mut col = lattice.basis_vector(j);
            for (c, &di) in col.iter_mut().zip(d) {
                *c = c
                    .checked_sub(k.checked_mul(di).ok_or(LatticeError::Overflow)?)
                    .ok_or(LatticeError::Overflow)?;
            }
            columns.push(col);
        }
        Isometry::certify(lattice, SquareMatrix::from_columns(&columns)?)
    }

    /// Eichler transvection
    /// `t(w) = w − ⟨x,w⟩e + ⟨e,w⟩x − ½⟨x,x⟩⟨e,w⟩e`
    /// for isotropic `e` orthogonal to `x` in an even lattice.
    pub fn eichler(e: &LatticeVector, x: &LatticeVector) -> Result<Self> {
        e.same_lattice(x)?;
        let lattice = e.lattice().clone();
        if !lattice.is_even() {
            return Err(LatticeError::OddLattice);
        }
        if e.norm()? != 0 {
            return Err(LatticeError::NotIsotropic);
        }
        if e.inner(x)? != 0 {
            return Err(LatticeError::NotOrthogonal);
        }
        let half_xx = x.norm()? / 2;
        let xe = lattice.pairings(x.coords())?;
        let ee = lattice.pairings(e.coords())?;
        let ov = |o: Option<i64>| o.ok_or(LatticeError::Overflow);
        let mut columns = Vec::with_capacity(lattice.rank());
        for j in 0..lattice.rank() {
            let mut col = lattice.basis_vector(j);
            let coef_e = ov(ov(half_xx.checked_mul(ee[j]))?.checked_add(xe[j]))?;
            for (i, c) in col.iter_mut().enumerate() {
                let shift = ov(ov(ee[j].checked_mul(x.coords()[i]))?
                    .checked_sub(ov(coef_e.checked_mul(e.coords()[i]))?))?;
                *c = ov(c.checked_add(shift))?;
            }
            columns.push(col);
        }
        Isometry::certify(lattice, SquareMatrix::from_columns(&columns)?)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == SquareMatrix::identity(self.matrix.dim())
    }

    fn check_lattice(&self, other: &Lattice) -> Result<()> {
        if self.lattice.as_ref() == other {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch { left: self.lattice.name().into(), right: other.name().into() })
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        self.check_lattice(&other.lattice)?;
        Isometry::certify(self.lattice.clone(), self.matrix.mul(&other.matrix)?)
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        self.check_lattice(v.lattice())?;
        LatticeVector::new(v.lattice().clone(), self.matrix.mul_vec(v.coords())?)
    }
}

/// Curated generators for one built-in lattice.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    lattice: Arc<Lattice>,
    reflections: Vec<Isometry>,
    /// Isotropic centers `e` with the pool of partners `x ⊥ e`.
    transvections: Vec<(LatticeVector, Arc<Vec<LatticeVector>>)>,
    swaps: Vec<Isometry>,
}

const REFLECTION_NORMS: [i64; 6] = [-4, -2, -1, 1, 2, 4];

/// Canonical representative of `±v`: first nonzero coordinate positive.
fn canonical_sign(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    v
}

fn embed(rank: usize, offset: usize, part: &[i64]) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[offset..offset + part.len()].copy_from_slice(part);
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl GeneratorSet {
    /// Generator recipe for a built-in lattice: `Lminus`, `U2U`, `I_s_t`,
    /// `U_I11`, `E8U_I11`.
    pub fn for_lattice(lattice: Arc<Lattice>) -> Result<Self> {
        let n = lattice.rank();
        let name = lattice.name().to_string();
        let no_recipe = || LatticeError::NoGeneratorRecipe(name.clone());
        if builtin(&name).map(|b| b.gram() != lattice.gram()).unwrap_or(true) {
            return Err(no_recipe());
        }
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let mut swaps: Vec<(usize, usize)> = Vec::new();
        let mut transvections = Vec::new();
        match name.as_str() {
            "Lminus" | "E8U_I11" => {
                // E8 roots scaled or not, a box in the last four coordinates,
                // and mixtures of the two
                let roots = vectors_of_norm(&Lattice::e8(), -2)?;
                let tail: Vec<Vec<i64>> = BoxIter::new(4, 3).collect();
                for r in &roots {
                    candidates.push(embed(n, 0, r));
                }
                for t in &tail {
                    candidates.push(embed(n, 8, t));
                }
                for r in &roots {
                    for t in BoxIter::new(4, 1) {
                        candidates.push(add(&embed(n, 0, r), &embed(n, 8, &t)));
                    }
                }
                if name == "Lminus" {
                    swaps.extend([(8, 9), (10, 11)]);
                    let mut partners = Vec::new();
                    let mut e8_parts: Vec<Vec<i64>> = vec![vec![0; 8]];
                    for i in 0..8 {
                        for s in [1, -1] {
                            e8_parts.push(embed(8, i, &[s]));
                        }
                    }
                    e8_parts.extend(roots.iter().cloned());
                    for a in &e8_parts {
                        for t in BoxIter::new(2, 1) {
                            let x = [a.as_slice(), t.as_slice(), &[0, 0]].concat();
                            if x.iter().any(|&c| c != 0) {
                                partners.push(LatticeVector::new(lattice.clone(), x)?);
                            }
                        }
                    }
                    let partners = Arc::new(partners);
                    for center in [10, 11] {
                        let e = LatticeVector::new(lattice.clone(), lattice.basis_vector(center))?;
                        transvections.push((e, partners.clone()));
                    }
                } else {
                    swaps.push((8, 9));
                }
            }
            "U2U" => {
                candidates.extend(BoxIter::new(4, 3));
                swaps.extend([(0, 1), (2, 3)]);
                let partners: Vec<LatticeVector> = BoxIter::new(2, 2)
                    .filter(|t| t.iter().any(|&c| c != 0))
                    .map(|t| LatticeVector::new(lattice.clone(), vec![t[0], t[1], 0, 0]))
                    .collect::<Result<_>>()?;
                let partners = Arc::new(partners);
                for center in [2, 3] {
                    let e = LatticeVector::new(lattice.clone(), lattice.basis_vector(center))?;
                    transvections.push((e, partners.clone()));
                }
            }
            "U_I11" => {
                candidates.extend(BoxIter::new(4, 3));
                swaps.push((0, 1));
            }
            _ if name.starts_with("I_") => {
                if n > 10 {
                    return Err(no_recipe());
                }
                candidates.extend(BoxIter::new(n, 1));
            }
            _ => return Err(no_recipe()),
        }

        let mut seen = BTreeSet::new();
        let mut reflections = Vec::new();
        for c in candidates {
            let c = canonical_sign(c);
            if !seen.insert(c.clone()) {
                continue;
            }
            let delta = LatticeVector::new(lattice.clone(), c)?;
            if !REFLECTION_NORMS.contains(&delta.norm()?) {
                continue;
            }
            match Isometry::reflection(&delta) {
                Ok(r) => reflections.push(r),
                Err(LatticeError::NotIntegralReflection { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let swaps = swaps.into_iter().map(|(i, j)| Isometry::swap(lattice.clone(), i, j)).collect::<Result<_>>()?;
        Ok(GeneratorSet { lattice, reflections, transvections, swaps })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    pub fn has_transvections(&self) -> bool {
        !self.transvections.is_empty()
    }

    /// One generator drawn uniformly by kind, then uniformly within kind.
    pub fn sample_generator<R: Rng>(&self, rng: &mut R) -> Result<Isometry> {
        let mut kinds = vec![0u8];
        if !self.reflections.is_empty() {
            kinds.push(1);
        }
        if !self.transvections.is_empty() {
            kinds.push(2);
        }
        if !self.swaps.is_empty() {
            kinds.push(4);
        }
        match *kinds.choose(rng).unwrap() {
            1 => Ok(self.reflections.choose(rng).unwrap().clone()),
            2 => {
                let (e, pool) = self.transvections.choose(rng).unwrap();
                Isometry::eichler(e, pool.choose(rng).unwrap())
            }
            4 => Ok(self.swaps.choose(rng).unwrap().clone()),
            _ => Ok(Isometry::negation(self.lattice.clone())),
        }
    }

    /// Product of `length` generators; deterministic in `seed`.
    pub fn sample_word(&self, seed: u64, length: usize) -> Result<Isometry> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_word_with(&mut rng, length)
    }

    pub fn sample_word_with<R: Rng>(&self, rng: &mut R, length: usize) -> Result<Isometry> {
        let mut g = Isometry::identity(self.lattice.clone());
        for _ in 0..length {
            g = self.sample_generator(rng)?.compose(&g)?;
        }
        Ok(g)
    }
}

/// Convenience wrapper building the generator set for `lattice`.
pub fn sample_word(lattice: Arc<Lattice>, seed: u64, length: usize) -> Result<Isometry> {
    GeneratorSet::for_lattice(lattice)?.sample_word(seed, length)
}
