//! Vectors bound to a lattice and their orbit invariants: norm,
//! primitivity and type.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumerate::content;
use crate::error::{LatticeError, Result};
use crate::lattice::{builtin, Lattice, LatticeJson, Shape};

/// Characteristic vectors satisfy `⟨v,η⟩ ≡ ⟨η,η⟩ (mod 2)` for every `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorType {
    Characteristic,
    Ordinary,
}

impl fmt::Display for VectorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorType::Characteristic => "characteristic",
            VectorType::Ordinary => "ordinary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Arc<Lattice>,
    coords: Vec<i64>,
}

/// A lattice given by built-in name or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Name(String),
    Inline(LatticeJson),
}

impl LatticeRef {
    pub fn resolve(&self) -> Result<Lattice> {
        match self {
            LatticeRef::Name(name) => builtin(name),
            LatticeRef::Inline(json) => Lattice::from_json(json),
        }
    }
}

/// Wire format of a vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub lattice: LatticeRef,
    pub coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(lattice: Arc<Lattice>, coords: Vec<i64>) -> Result<Self> {
        lattice.check_len(&coords)?;
        Ok(LatticeVector { lattice, coords })
    }

    pub fn zero(lattice: Arc<Lattice>) -> Self {
        let n = lattice.rank();
        LatticeVector { lattice, coords: vec![0; n] }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn to_json(&self) -> VectorJson {
        VectorJson { lattice: LatticeRef::Name(self.lattice.name().to_string()), coords: self.coords.clone() }
    }

    pub fn from_json(json: &VectorJson) -> Result<Self> {
        LatticeVector::new(Arc::new(json.lattice.resolve()?), json.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn norm(&self) -> Result<i64> {
        self.lattice.norm(&self.coords)
    }

    pub fn inner(&self, other: &LatticeVector) -> Result<i64> {
        self.same_lattice(other)?;
        self.lattice.inner(&self.coords, &other.coords)
    }

    pub(crate) fn same_lattice(&self, other: &LatticeVector) -> Result<()> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch {
                left: self.lattice.name().into(),
                right: other.lattice.name().into(),
            })
        }
    }

    /// gcd of the coordinates is 1. Coordinates are in a lattice basis, so
    /// this does not depend on which basis was chosen.
    pub fn is_primitive(&self) -> Result<bool> {
        match content(&self.coords) {
            0 => Err(LatticeError::ZeroVector),
            g => Ok(g == 1),
        }
    }

    /// Errors with `ZeroVector` or `NonPrimitive` unless the vector is primitive.
    pub fn require_primitive(&self) -> Result<()> {
        match content(&self.coords) {
            0 => Err(LatticeError::ZeroVector),
            1 => Ok(()),
            gcd => Err(LatticeError::NonPrimitive { gcd }),
        }
    }

    /// Type via the basis: `⟨v,η⟩ - ⟨η,η⟩ mod 2` is additive in `η` modulo
    /// 2 (the cross term `2⟨η₁,η₂⟩` vanishes), so checking each basis
    /// vector decides the condition for all of `L`.
    pub fn vector_type(&self) -> Result<VectorType> {
        let pairings = self.lattice.pairings(&self.coords)?;
        let gram = self.lattice.gram();
        let characteristic =
            pairings.iter().enumerate().all(|(i, &p)| (p - gram.get(i, i)).rem_euclid(2) == 0);
        Ok(if characteristic { VectorType::Characteristic } else { VectorType::Ordinary })
    }

    /// Coordinate test on `B ⊕ I_{1,1}` with `B` even unimodular:
    /// characteristic iff both `I_{1,1}` coordinates are odd and every
    /// `B` coordinate is even.
    pub fn char_fastpath_bi11(&self) -> Result<VectorType> {
        if !matches!(self.lattice.shape(), Shape::PlusI11 { .. }) {
            return Err(self.lattice.shape_mismatch("B+I_{1,1}"));
        }
        let r = self.coords.len() - 2;
        let (a, mn) = self.coords.split_at(r);
        let characteristic = mn.iter().all(|c| c % 2 != 0) && a.iter().all(|c| c % 2 == 0);
        Ok(if characteristic { VectorType::Characteristic } else { VectorType::Ordinary })
    }

    /// `norm(v) ≡ s - t (mod 8)` for a characteristic `v` in a unimodular
    /// lattice of signature `(s,t)`.
    pub fn wall_congruence_holds(&self) -> Result<bool> {
        if !self.lattice.is_unimodular() {
            return Err(LatticeError::NotUnimodular(self.lattice.name().into()));
        }
        if self.vector_type()? != VectorType::Characteristic {
            return Err(LatticeError::NotCharacteristic);
        }
        let diff = self.lattice.signature().difference();
        Ok((self.norm()? - diff).rem_euclid(8) == 0)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.lattice.name())?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
