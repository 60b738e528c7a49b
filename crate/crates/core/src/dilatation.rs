//! The dilatation `φ: B(2) ⊕ U → B ⊕ (½)I_{1,1}`,
//! `(a, b₁, b₂) ↦ (a, (b₁+b₂)/2, (b₁−b₂)/2)`, which halves the form.
//!
//! Elements of `B ⊕ (½)I_{1,1}` are stored with doubled coordinates so all
//! arithmetic stays in the integers.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::lattice::{builtin, Lattice, Shape};
use crate::vector::LatticeVector;

/// An element of `B ⊕ (½)I_{1,1}`; `doubled` holds twice the true
/// coordinates. The `B` part of `doubled` is even and the last two entries
/// share a parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfVector {
    base: Arc<Lattice>,
    doubled: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfVectorJson {
    pub base: String,
    pub doubled_coords: Vec<i64>,
}

impl HalfVector {
    /// Validates the half-lattice conditions. `base` must be a `B ⊕ I_{1,1}`
    /// lattice.
    pub fn new(base: Arc<Lattice>, doubled: Vec<i64>) -> Result<Self> {
        if !matches!(base.shape(), Shape::PlusI11 { .. }) {
            return Err(base.shape_mismatch("B+I_{1,1}"));
        }
        base.check_len(&doubled)?;
        let r = doubled.len() - 2;
        if let Some(i) = doubled[..r].iter().position(|c| c % 2 != 0) {
            return Err(LatticeError::NotInHalfLattice(format!("B coordinate {i} is not integral")));
        }
        if (doubled[r] - doubled[r + 1]).rem_euclid(2) != 0 {
            return Err(LatticeError::NotInHalfLattice("I_{1,1} coordinates of mixed parity".into()));
        }
        Ok(HalfVector { base, doubled })
    }

    pub fn from_json(json: &HalfVectorJson) -> Result<Self> {
        HalfVector::new(Arc::new(builtin(&json.base)?), json.doubled_coords.clone())
    }

    pub fn to_json(&self) -> HalfVectorJson {
        HalfVectorJson { base: self.base.name().to_string(), doubled_coords: self.doubled.clone() }
    }

    pub fn base(&self) -> &Arc<Lattice> {
        &self.base
    }

    pub fn doubled_coords(&self) -> &[i64] {
        &self.doubled
    }

    /// True coordinates as `(numerator, denominator)` pairs in lowest terms.
    pub fn true_coords(&self) -> Vec<(i64, i64)> {
        self.doubled.iter().map(|&d| if d % 2 == 0 { (d / 2, 1) } else { (d, 2) }).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|c| c % 2 == 0)
    }

    /// `q(h) = ⟨h,h⟩`, computed as `⟨2h,2h⟩ / 4`. Always an integer on
    /// valid half vectors.
    pub fn quadratic_value(&self) -> Result<i64> {
        let four_q = self.base.norm(&self.doubled)?;
        if four_q % 4 != 0 {
            return Err(LatticeError::InvariantViolation(format!("4q = {four_q} not divisible by 4")));
        }
        Ok(four_q / 4)
    }

    /// `2h` as a vector of `B ⊕ I_{1,1}`.
    pub fn double(&self) -> LatticeVector {
        LatticeVector::new(self.base.clone(), self.doubled.clone()).expect("length checked at construction")
    }
}

/// `φ(v)` for `v` in a lattice tagged `B(2) ⊕ U`.
pub fn phi(v: &LatticeVector) -> Result<HalfVector> {
    let source = v.lattice();
    let target = Arc::new(source.dilatation_target()?);
    let c = v.coords();
    let r = c.len() - 2;
    let (b1, b2) = (c[r], c[r + 1]);
    let mut doubled = Vec::with_capacity(c.len());
    for &a in &c[..r] {
        doubled.push(a.checked_mul(2).ok_or(LatticeError::Overflow)?);
    }
    doubled.push(b1.checked_add(b2).ok_or(LatticeError::Overflow)?);
    doubled.push(b1.checked_sub(b2).ok_or(LatticeError::Overflow)?);
    HalfVector::new(target, doubled)
}

/// Inverse of [`phi`]: `b₁ = x + y`, `b₂ = x − y`. `source` is the
/// `B(2) ⊕ U` lattice whose `B` matches the half vector's base.
pub fn phi_inverse(h: &HalfVector, source: Arc<Lattice>) -> Result<LatticeVector> {
    let expected = source.dilatation_target()?;
    if expected.gram() != h.base.gram() {
        return Err(LatticeError::LatticeMismatch {
            left: expected.name().into(),
            right: h.base.name().into(),
        });
    }
    let d = &h.doubled;
    let r = d.len() - 2;
    let mut coords: Vec<i64> = d[..r].iter().map(|x| x / 2).collect();
    let (x2, y2) = (d[r], d[r + 1]);
    coords.push(x2.checked_add(y2).ok_or(LatticeError::Overflow)? / 2);
    coords.push(x2.checked_sub(y2).ok_or(LatticeError::Overflow)? / 2);
    LatticeVector::new(source, coords)
}

/// The `B(2) ⊕ U` lattice a half-vector base belongs to, for built-ins.
pub fn source_for_base(base: &Lattice) -> Result<Lattice> {
    match base.name() {
        "E8U_I11" => builtin("Lminus"),
        "U_I11" => builtin("U2U"),
        other => match base.shape() {
            Shape::PlusI11 { b } => Lattice::twisted_plus_u(b, format!("{}(2)+U", b.name())),
            _ => Err(LatticeError::LatticeShapeMismatch { expected: "B+I_{1,1}".into(), found: other.into() }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::BoxIter;
    use crate::lattice::{lminus, u2u};
    use crate::vector::VectorType;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lm(tail: &[i64]) -> LatticeVector {
        let mut c = vec![0; 12 - tail.len()];
        c.extend_from_slice(tail);
        LatticeVector::new(Arc::new(lminus()), c).unwrap()
    }

    fn pad(tail: &[i64]) -> Vec<i64> {
        let mut c = vec![0; 12 - tail.len()];
        c.extend_from_slice(tail);
        c
    }

    #[test]
    fn phi_examples() {
        let v = lm(&[1, 3]);
        let h = phi(&v).unwrap();
        assert_eq!(h.doubled_coords(), pad(&[4, -2]).as_slice());
        assert_eq!(h.true_coords()[10..], [(2, 1), (-1, 1)]);
        assert_eq!(v.norm().unwrap(), 6);
        assert_eq!(h.quadratic_value().unwrap(), 3);

        let h = phi(&lm(&[1, 4])).unwrap();
        assert_eq!(h.true_coords()[10..], [(5, 2), (-3, 2)]);
        assert!(!h.is_integral());

        let h = phi(&lm(&[1, 2, 0, 0])).unwrap();
        assert!(h.is_integral());
        assert_eq!(h.doubled_coords(), pad(&[2, 4, 0, 0]).as_slice());
        assert_eq!(h.base().name(), "E8U_I11");
    }

    #[test]
    fn phi_requires_shape() {
        let v = LatticeVector::new(Arc::new(builtin("U_I11").unwrap()), vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(phi(&v), Err(LatticeError::LatticeShapeMismatch { .. })));
    }

    #[test]
    fn inverse_examples() {
        let base = Arc::new(builtin("E8U_I11").unwrap());
        let src = Arc::new(lminus());
        let h = HalfVector::new(base.clone(), pad(&[4, -2])).unwrap();
        assert_eq!(phi_inverse(&h, src.clone()).unwrap().coords(), pad(&[1, 3]).as_slice());
        let h = HalfVector::new(base.clone(), pad(&[5, -3])).unwrap();
        assert_eq!(phi_inverse(&h, src).unwrap().coords(), pad(&[1, 4]).as_slice());
        assert!(matches!(HalfVector::new(base.clone(), pad(&[5, -2])), Err(LatticeError::NotInHalfLattice(_))));
        assert!(matches!(HalfVector::new(base, pad(&[1, 0, 0, 0])), Err(LatticeError::NotInHalfLattice(_))));
    }

    #[test]
    fn integrality_examples() {
        for k in -4..=4 {
            assert!(phi(&lm(&[k, 1, 0, 0])).unwrap().is_integral());
            assert!(!phi(&lm(&[2 * k, 1])).unwrap().is_integral());
        }
        assert!(phi(&lm(&[])).unwrap().is_integral());
    }

    #[test]
    fn doubling_examples() {
        let d = phi(&lm(&[1, 4])).unwrap().double();
        assert_eq!(d.coords(), pad(&[5, -3]).as_slice());
        assert_eq!(d.vector_type().unwrap(), VectorType::Characteristic);
        assert_eq!(d.char_fastpath_bi11().unwrap(), VectorType::Characteristic);
        assert_eq!(phi(&lm(&[1, 3])).unwrap().double().coords(), pad(&[4, -2]).as_slice());
        assert!(phi(&lm(&[])).unwrap().double().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let h = phi(&lm(&[1, 4])).unwrap();
        let back = HalfVector::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        let src = source_for_base(back.base()).unwrap();
        assert_eq!(src.name(), "Lminus");
    }

    fn check_contracts(v: &LatticeVector) {
        let h = phi(v).unwrap();
        assert_eq!(v.norm().unwrap(), 2 * h.quadratic_value().unwrap(), "{v}");
        let back = phi_inverse(&h, v.lattice().clone()).unwrap();
        assert_eq!(back.coords(), v.coords());
        assert_eq!(phi(&back).unwrap(), h);
    }

    #[test]
    fn contracts_random_lminus() {
        let l = Arc::new(lminus());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let c: Vec<i64> = (0..12).map(|_| rng.gen_range(-20..=20)).collect();
            check_contracts(&LatticeVector::new(l.clone(), c).unwrap());
        }
    }

    #[test]
    fn contracts_and_parities_exhaustive_rank4() {
        let l = Arc::new(u2u());
        for c in BoxIter::new(4, 5) {
            let v = LatticeVector::new(l.clone(), c).unwrap();
            check_contracts(&v);
            if v.is_zero() || !v.is_primitive().unwrap() {
                continue;
            }
            let n = v.norm().unwrap() / 2;
            let (b1, b2) = (v.coords()[2], v.coords()[3]);
            if n % 2 != 0 {
                assert!(b1 % 2 != 0 && b2 % 2 != 0, "{v}");
            } else {
                assert!(b1 % 2 == 0 || b2 % 2 == 0, "{v}");
                assert_eq!(phi(&v).unwrap().is_integral(), b1 % 2 == 0 && b2 % 2 == 0, "{v}");
            }
        }
    }

    /// Inverse direction over every valid half vector in a box.
    #[test]
    fn inverse_then_phi_is_identity() {
        let base = Arc::new(builtin("U_I11").unwrap());
        let src = Arc::new(u2u());
        for d in BoxIter::new(4, 5) {
            let Ok(h) = HalfVector::new(base.clone(), d) else { continue };
            let v = phi_inverse(&h, src.clone()).unwrap();
            assert_eq!(phi(&v).unwrap(), h);
        }
    }
}
