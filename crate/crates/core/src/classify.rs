//! Orbit labels for primitive vectors of `B(2) ⊕ U`.
//!
//! A primitive vector of norm `2n` is classified by `n` and its type:
//! one orbit for odd `n`; for even `n` the characteristic vectors (both
//! hyperbolic coordinates even, integral dilatation image) and the ordinary
//! ones (exactly one hyperbolic coordinate even, half-integral image) form
//! two orbits.
//!
//! Labels follow the type of the vector in the lattice itself. The image
//! under the dilatation has the opposite type: for a characteristic `v` the
//! integral `φ(v)` is ordinary, for an ordinary `v` the doubled image
//! `2φ(v)` is characteristic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dilatation::phi;
use crate::enumerate::{content, ProductIter};
use crate::error::{LatticeError, Result};
use crate::lattice::{k3, lminus, lplus, Lattice, Shape};
use crate::vector::{LatticeVector, VectorType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitLabel {
    #[serde(rename = "odd")]
    OddOrbit,
    #[serde(rename = "even_characteristic")]
    EvenCharacteristic,
    #[serde(rename = "even_ordinary")]
    EvenOrdinary,
}

impl OrbitLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitLabel::OddOrbit => "odd",
            OrbitLabel::EvenCharacteristic => "even_characteristic",
            OrbitLabel::EvenOrdinary => "even_ordinary",
        }
    }

    /// Whether the label can occur for vectors of norm `2n`.
    pub fn fits_half_norm(&self, n: i64) -> bool {
        (n % 2 != 0) == (*self == OrbitLabel::OddOrbit)
    }

    /// Labels realized by primitive vectors of norm `2n`.
    pub fn for_half_norm(n: i64) -> &'static [OrbitLabel] {
        if n % 2 != 0 {
            &[OrbitLabel::OddOrbit]
        } else {
            &[OrbitLabel::EvenCharacteristic, OrbitLabel::EvenOrdinary]
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrbitLabel {
    type Err = String;

    /// Accepts the wire names plus the short forms `characteristic`,
    /// `ordinary`, `c`, `o`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "odd" => Ok(OrbitLabel::OddOrbit),
            "even_characteristic" | "characteristic" | "c" => Ok(OrbitLabel::EvenCharacteristic),
            "even_ordinary" | "ordinary" | "o" => Ok(OrbitLabel::EvenOrdinary),
            other => Err(format!("unknown orbit label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub vector: LatticeVector,
    pub norm: i64,
    pub half_n: i64,
    pub primitive: bool,
    pub type_in_lattice: VectorType,
    pub phi_integral: bool,
    pub label: OrbitLabel,
}

/// Wire format of [`ClassificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub coords: Vec<i64>,
    pub norm: i64,
    pub n: i64,
    pub primitive: bool,
    #[serde(rename = "type")]
    pub vector_type: VectorType,
    pub phi_integral: bool,
    pub label: OrbitLabel,
}

impl ClassificationReport {
    pub fn to_json(&self) -> ClassificationJson {
        ClassificationJson {
            coords: self.vector.coords().to_vec(),
            norm: self.norm,
            n: self.half_n,
            primitive: self.primitive,
            vector_type: self.type_in_lattice,
            phi_integral: self.phi_integral,
            label: self.label,
        }
    }
}

fn require_twisted(lattice: &Lattice) -> Result<&Arc<Lattice>> {
    match lattice.shape() {
        Shape::TwistedPlusU { b } => Ok(b),
        _ => Err(lattice.shape_mismatch("B(2)+U")),
    }
}

/// Checks that `B` satisfies the hypotheses of the orbit count: even,
/// unimodular, indefinite, signature difference divisible by 8.
fn check_classifier_input(b: &Lattice) -> Result<()> {
    let sig = b.signature();
    if !sig.is_indefinite() || sig.difference().rem_euclid(8) != 0 {
        return Err(LatticeError::LatticeShapeMismatch {
            expected: "B even unimodular indefinite with s-t = 0 mod 8".into(),
            found: b.name().into(),
        });
    }
    Ok(())
}

/// Labels a primitive vector of a `B(2) ⊕ U` lattice. The three
/// characterizations of the characteristic class for even `n` (type in the
/// lattice, parity of `b₁, b₂`, integrality of `φ(v)`) are all computed and
/// must agree.
pub fn classify(v: &LatticeVector) -> Result<ClassificationReport> {
    let b = require_twisted(v.lattice())?;
    check_classifier_input(b)?;
    v.require_primitive()?;
    let norm = v.norm()?;
    let half_n = norm / 2;
    let type_in_lattice = v.vector_type()?;
    let phi_integral = phi(v)?.is_integral();
    let c = v.coords();
    let (b1, b2) = (c[c.len() - 2], c[c.len() - 1]);
    let b_even = b1 % 2 == 0 && b2 % 2 == 0;
    let characteristic = type_in_lattice == VectorType::Characteristic;

    let label = if half_n % 2 != 0 {
        if characteristic || b1 % 2 == 0 || b2 % 2 == 0 {
            return Err(LatticeError::InvariantViolation(format!(
                "odd n = {half_n} but {v} is {type_in_lattice} with b = ({b1},{b2})"
            )));
        }
        OrbitLabel::OddOrbit
    } else {
        if characteristic != b_even || characteristic != phi_integral {
            return Err(LatticeError::InvariantViolation(format!(
                "{v}: type {type_in_lattice}, b = ({b1},{b2}), phi integral {phi_integral}"
            )));
        }
        if characteristic {
            OrbitLabel::EvenCharacteristic
        } else {
            OrbitLabel::EvenOrdinary
        }
    };
    Ok(ClassificationReport {
        vector: v.clone(),
        norm,
        half_n,
        primitive: true,
        type_in_lattice,
        phi_integral,
        label,
    })
}

/// Canonical representative in `Λ⁻`; see [`representative_in`].
pub fn representative(norm: i64, label: OrbitLabel) -> Result<LatticeVector> {
    representative_in(Arc::new(lminus()), norm, label)
}

/// Canonical representative of the class `(norm, label)` in a `B(2) ⊕ U`
/// lattice whose `B` ends in a hyperbolic plane:
/// `(0,…,0,1,n)` for the odd and even-ordinary classes, and `(1,k)` in the
/// twisted hyperbolic plane of `B(2)` (norm `4k`, `n = 2k`) for the
/// even-characteristic class.
pub fn representative_in(lattice: Arc<Lattice>, norm: i64, label: OrbitLabel) -> Result<LatticeVector> {
    let b = require_twisted(&lattice)?;
    if norm % 2 != 0 {
        return Err(LatticeError::OddNormInEvenLattice(norm));
    }
    let n = norm / 2;
    if !label.fits_half_norm(n) {
        return Err(LatticeError::LabelParityMismatch { norm, label: label.as_str().into() });
    }
    let rank = lattice.rank();
    let mut coords = vec![0; rank];
    match label {
        OrbitLabel::OddOrbit | OrbitLabel::EvenOrdinary => {
            coords[rank - 2] = 1;
            coords[rank - 1] = n;
        }
        OrbitLabel::EvenCharacteristic => {
            let r = b.rank();
            let tail_is_u = r >= 2
                && b.gram().get(r - 2, r - 2) == 0
                && b.gram().get(r - 1, r - 1) == 0
                && b.gram().get(r - 2, r - 1) == 1
                && (0..r - 2).all(|i| b.gram().get(i, r - 2) == 0 && b.gram().get(i, r - 1) == 0);
            if !tail_is_u {
                return Err(lattice.shape_mismatch("B ending in a hyperbolic plane"));
            }
            coords[r - 2] = 1;
            coords[r - 1] = n / 2;
        }
    }
    LatticeVector::new(lattice, coords)
}

fn require_rank(v: &LatticeVector, rank: usize, expected: &str) -> Result<()> {
    if v.lattice().rank() == rank && v.lattice().is_even() {
        Ok(())
    } else {
        Err(v.lattice().shape_mismatch(expected))
    }
}

/// `Λ⁻ → Λ`, `(e, u, v) ↦ (e, −e, u, −u, v)`.
pub fn embed_minus(v: &LatticeVector) -> Result<LatticeVector> {
    require_rank(v, 12, "Lminus = E8(2)+U(2)+U")?;
    if v.lattice().gram() != lminus().gram() {
        return Err(v.lattice().shape_mismatch("Lminus = E8(2)+U(2)+U"));
    }
    let c = v.coords();
    let (e, u, w) = (&c[..8], &c[8..10], &c[10..12]);
    let neg = |s: &[i64]| s.iter().map(|x| -x).collect::<Vec<_>>();
    let coords = [e, &neg(e), u, &neg(u), w].concat();
    LatticeVector::new(Arc::new(k3()), coords)
}

/// `Λ⁺ → Λ`, `(e, u) ↦ (e, e, u, u, 0)`.
pub fn embed_plus(w: &LatticeVector) -> Result<LatticeVector> {
    require_rank(w, 10, "Lplus = E8(2)+U(2)")?;
    if w.lattice().gram() != lplus().gram() {
        return Err(w.lattice().shape_mismatch("Lplus = E8(2)+U(2)"));
    }
    let c = w.coords();
    let (e, u) = (&c[..8], &c[8..10]);
    let coords = [e, e, u, u, &[0, 0]].concat();
    LatticeVector::new(Arc::new(k3()), coords)
}

fn require_even_n(v: &LatticeVector) -> Result<i64> {
    v.require_primitive()?;
    let n = v.norm()? / 2;
    if n % 2 != 0 {
        return Err(LatticeError::EvenTypeUndefinedForOddN(n));
    }
    Ok(n)
}

/// Even type for a primitive vector of norm `2n`, `n` even: the dilatation
/// image is integral.
pub fn is_even_type(v: &LatticeVector) -> Result<bool> {
    require_twisted(v.lattice())?;
    require_even_n(v)?;
    Ok(phi(v)?.is_integral())
}

/// Why no witness can exist, independent of any search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// A `U` coordinate of `v` is odd. `embed_plus` is zero on the last
    /// `U` summand of `Λ`, so that coordinate of any sum stays odd.
    OddHyperbolicCoordinate { lambda_index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// The reduction of `v` to `Λ⁺` already has the right norm.
    Known,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found { witness: LatticeVector, sum: LatticeVector, source: WitnessSource },
    NotFound { obstruction: Option<Obstruction> },
}

impl WitnessOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, WitnessOutcome::Found { .. })
    }
}

/// Checks the defining condition directly: `w` primitive in `Λ⁺` with the
/// norm of `v`, and `embed_minus(v) + embed_plus(w) ∈ 2Λ`.
pub fn verify_witness(v: &LatticeVector, w: &LatticeVector) -> Result<bool> {
    let (im, ip) = (embed_minus(v)?, embed_plus(w)?);
    let parity_ok = im.coords().iter().zip(ip.coords()).all(|(a, b)| (a + b) % 2 == 0);
    Ok(parity_ok && w.is_primitive()? && w.norm()? == v.norm()?)
}

/// Looks for a witness `ω' ∈ Λ⁺` of even type. Any witness must reduce to
/// `(e, u)` modulo 2 where `v = (e, u, b)`; the search enumerates exactly
/// those points of the box `[-bound, bound]^10`, so it is exhaustive over
/// the box.
pub fn even_witness(v: &LatticeVector, search_bound: i64) -> Result<WitnessOutcome> {
    require_even_n(v)?;
    let im = embed_minus(v)?;
    let c = v.coords();
    if let Some(i) = (10..12).find(|&i| c[i] % 2 != 0) {
        return Ok(WitnessOutcome::NotFound {
            obstruction: Some(Obstruction::OddHyperbolicCoordinate { lambda_index: i + 10 }),
        });
    }
    let lp = Arc::new(lplus());
    let target = v.norm()?;
    let reduction = c[..10].to_vec();
    let found = |w: LatticeVector, source| -> Result<WitnessOutcome> {
        let ip = embed_plus(&w)?;
        let sum: Vec<i64> = im.coords().iter().zip(ip.coords()).map(|(a, b)| a + b).collect();
        Ok(WitnessOutcome::Found { witness: w, sum: LatticeVector::new(im.lattice().clone(), sum)?, source })
    };
    // ⟨(e,u),(e,u)⟩ = ⟨v,v⟩ − 2 b₁ b₂, so the reduction works when b₁ b₂ = 0
    if content(&reduction) == 1 {
        let w = LatticeVector::new(lp.clone(), reduction.clone())?;
        if w.norm()? == target {
            return found(w, WitnessSource::Known);
        }
    }
    let choices: Vec<Vec<i64>> = reduction
        .iter()
        .map(|x| (-search_bound..=search_bound).filter(|y| (y - x).rem_euclid(2) == 0).collect())
        .collect();
    for coords in ProductIter::new(choices) {
        if content(&coords) != 1 {
            continue;
        }
        let w = LatticeVector::new(lp.clone(), coords)?;
        if w.norm()? == target {
            return found(w, WitnessSource::Search);
        }
    }
    Ok(WitnessOutcome::NotFound { obstruction: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeegnerComponent {
    pub label: OrbitLabel,
    pub representative: Vec<i64>,
}

/// Components of the divisor attached to primitive vectors of norm `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeegnerReport {
    pub n: i64,
    pub norm: i64,
    pub component_count: usize,
    pub components: Vec<HeegnerComponent>,
}

/// One report per `n` in `n_min..=n_max`, with every representative
/// re-classified before it is emitted.
pub fn heegner_report(n_min: i64, n_max: i64) -> Result<Vec<HeegnerReport>> {
    let lattice = Arc::new(lminus());
    (n_min..=n_max).map(|n| heegner_for(&lattice, n)).collect()
}

/// Same as [`heegner_report`], indexed by the full norm `2n`; odd norms
/// in the range are skipped.
pub fn heegner_report_by_norm(norm_min: i64, norm_max: i64) -> Result<Vec<HeegnerReport>> {
    let lattice = Arc::new(lminus());
    (norm_min..=norm_max).filter(|m| m % 2 == 0).map(|m| heegner_for(&lattice, m / 2)).collect()
}

fn heegner_for(lattice: &Arc<Lattice>, n: i64) -> Result<HeegnerReport> {
    let norm = n.checked_mul(2).ok_or(LatticeError::Overflow)?;
    let mut components = Vec::new();
    for &label in OrbitLabel::for_half_norm(n) {
        let rep = representative_in(lattice.clone(), norm, label)?;
        let report = classify(&rep)?;
        if report.label != label || report.norm != norm {
            return Err(LatticeError::InvariantViolation(format!("representative {rep} classified as {}", report.label)));
        }
        components.push(HeegnerComponent { label, representative: rep.into_coords() });
    }
    Ok(HeegnerReport { n, norm, component_count: components.len(), components })
}
