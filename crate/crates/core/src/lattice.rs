//! Integral lattices given by a Gram matrix in a fixed basis.
//!
//! Coordinates are always taken with respect to the basis fixed by the
//! constructor. Direct sums place the left summand's coordinates first.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::matrix::{dot, mul_add, narrow, SquareMatrix};

/// Coordinate layout a constructor guarantees. Maps such as the dilatation
/// are defined in coordinates, so they only accept lattices carrying a tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    General,
    /// `B(2) ⊕ U`: the first `rank(B)` coordinates are the twisted `B`,
    /// the last two are the hyperbolic basis `u, v`.
    TwistedPlusU { b: Arc<Lattice> },
    /// `B ⊕ I_{1,1}`: the last two coordinates are `x, y` with
    /// `⟨x,x⟩ = 1`, `⟨y,y⟩ = -1`.
    PlusI11 { b: Arc<Lattice> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    gram: SquareMatrix,
    shape: Shape,
    nondegenerate: bool,
}

/// Inertia of the Gram form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }

    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }

    /// `positive - negative`, the quantity Wall's congruence refers to.
    pub fn difference(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.positive, self.negative)
        } else {
            write!(f, "({},{};{})", self.positive, self.negative, self.zero)
        }
    }
}

/// Wire format for lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub name: String,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(name: impl Into<String>, gram: SquareMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Lattice::make(name.into(), gram, Shape::General))
    }

    fn make(name: String, gram: SquareMatrix, shape: Shape) -> Self {
        let nondegenerate = !gram.determinant().is_zero();
        Lattice { name, gram, shape, nondegenerate }
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let gram = SquareMatrix::from_rows(json.gram.clone())?;
        if gram.dim() != json.rank {
            return Err(LatticeError::RankMismatch { expected: json.rank, found: gram.dim() });
        }
        Lattice::new(json.name.clone(), gram)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson { name: self.name.clone(), rank: self.rank(), gram: self.gram.rows() }
    }

    /// The hyperbolic plane, Gram `((0,1),(1,0))` in the basis `u, v`.
    pub fn u() -> Self {
        let gram = SquareMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        Lattice::make("U".into(), gram, Shape::General)
    }

    /// Negated Cartan matrix of E8, Bourbaki node order: nodes 1-3-4-5-6-7-8
    /// form the long chain and node 2 hangs off node 4.
    pub fn e8() -> Self {
        const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut gram = SquareMatrix::diagonal(&[-2; 8]);
        for (i, j) in EDGES {
            gram.set(i, j, 1);
            gram.set(j, i, 1);
        }
        Lattice::make("E8".into(), gram, Shape::General)
    }

    /// The odd unimodular lattice `(1)^s ⊕ (-1)^t`.
    pub fn odd_unimodular(s: usize, t: usize) -> Result<Self> {
        if s + t == 0 {
            return Err(LatticeError::EmptyLattice);
        }
        let diag: Vec<i64> = std::iter::repeat_n(1, s).chain(std::iter::repeat_n(-1, t)).collect();
        Ok(Lattice::make(format!("I_{s}_{t}"), SquareMatrix::diagonal(&diag), Shape::General))
    }

    /// `L(n)`: same module, form multiplied by `n`.
    pub fn twist(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(LatticeError::ZeroTwist);
        }
        let name = if n == 1 { self.name.clone() } else { format!("{}({})", self.name, n) };
        Ok(Lattice::make(name, self.gram.scale(n)?, Shape::General))
    }

    pub fn direct_sum(&self, other: &Lattice) -> Self {
        Lattice::make(format!("{}+{}", self.name, other.name), self.gram.block_sum(&other.gram), Shape::General)
    }

    /// `B(2) ⊕ U`, tagged so the dilatation and the classifier accept it.
    /// `B` must be even and unimodular.
    pub fn twisted_plus_u(b: &Lattice, name: impl Into<String>) -> Result<Self> {
        if !b.is_even() {
            return Err(LatticeError::OddLattice);
        }
        if !b.is_unimodular() {
            return Err(LatticeError::NotUnimodular(b.name.clone()));
        }
        let sum = b.twist(2)?.direct_sum(&Lattice::u());
        Ok(Lattice::make(name.into(), sum.gram, Shape::TwistedPlusU { b: Arc::new(b.clone()) }))
    }

    /// `B ⊕ I_{1,1}` with the standard `I_{1,1}` basis last.
    /// `B` must be even and unimodular.
    pub fn plus_i11(b: &Lattice, name: impl Into<String>) -> Result<Self> {
        if !b.is_even() {
            return Err(LatticeError::OddLattice);
        }
        if !b.is_unimodular() {
            return Err(LatticeError::NotUnimodular(b.name.clone()));
        }
        let sum = b.direct_sum(&Lattice::odd_unimodular(1, 1)?);
        Ok(Lattice::make(name.into(), sum.gram, Shape::PlusI11 { b: Arc::new(b.clone()) }))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &SquareMatrix {
        &self.gram
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// `vᵀ · G · w`, exact.
    pub fn inner(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        self.check_len(v)?;
        self.check_len(w)?;
        let n = self.rank();
        let mut acc = 0i128;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let gw = dot(self.gram.row(i), w)?;
            acc = mul_add(acc, v[i], gw)?;
        }
        narrow(acc)
    }

    pub fn norm(&self, v: &[i64]) -> Result<i64> {
        self.inner(v, v)
    }

    /// `G · v`, i.e. the pairings of `v` with every basis vector.
    pub fn pairings(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.gram.mul_vec(v)
    }

    pub(crate) fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::RankMismatch { expected: self.rank(), found: v.len() })
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2 == 0)
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Inertia by exact symmetric elimination over the rationals. A zero
    /// diagonal pivot with a nonzero off-diagonal entry `a_ij` is repaired by
    /// the congruence `e_i ← e_i + e_j`, which puts `2 a_ij` on the diagonal.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| self.gram.row(i).iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
        while !active.is_empty() {
            let pivot = match active.iter().copied().find(|&i| !a[i][i].is_zero()) {
                Some(p) => p,
                None => {
                    let pair = active
                        .iter()
                        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| i != j && !a[i][j].is_zero());
                    match pair {
                        Some((i, j)) => {
                            // row/column operation e_i += e_j
                            for &k in &active {
                                let t = a[j][k].clone();
                                a[i][k] += t;
                            }
                            for &k in &active {
                                let t = a[k][j].clone();
                                a[k][i] += t;
                            }
                            i
                        }
                        None => {
                            sig.zero += active.len();
                            break;
                        }
                    }
                }
            };
            let p = a[pivot][pivot].clone();
            if p.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            active.retain(|&i| i != pivot);
            for &i in &active {
                let f = &a[i][pivot] / &p;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let t = &f * &a[pivot][j];
                    a[i][j] -= t;
                }
            }
        }
        sig
    }

    /// For a `B(2) ⊕ U` lattice, the lattice `B ⊕ I_{1,1}` that receives the
    /// dilatation.
    pub fn dilatation_target(&self) -> Result<Lattice> {
        match &self.shape {
            Shape::TwistedPlusU { b } => Lattice::plus_i11(b, format!("{}_I11", b.name)),
            _ => Err(self.shape_mismatch("B(2)+U")),
        }
    }

    pub(crate) fn shape_mismatch(&self, expected: &str) -> LatticeError {
        LatticeError::LatticeShapeMismatch { expected: expected.into(), found: self.name.clone() }
    }
}

/// `E8 ⊕ U`, the `B` with `Λ⁻ = B(2) ⊕ U`.
pub fn e8_plus_u() -> Lattice {
    Lattice::e8().direct_sum(&Lattice::u()).with_name("E8U")
}

/// `Λ⁻ = E8(2) ⊕ U(2) ⊕ U`, rank 12. Coordinates: E8(2) ×8, U(2) ×2, U ×2.
pub fn lminus() -> Lattice {
    Lattice::twisted_plus_u(&e8_plus_u(), "Lminus").expect("E8+U is even unimodular")
}

/// `Λ⁺ = E8(2) ⊕ U(2)`, rank 10.
pub fn lplus() -> Lattice {
    e8_plus_u().twist(2).expect("nonzero twist").with_name("Lplus")
}

/// The K3 lattice `Λ = E8² ⊕ U³`, rank 22.
pub fn k3() -> Lattice {
    let e8 = Lattice::e8();
    let u = Lattice::u();
    e8.direct_sum(&e8).direct_sum(&u).direct_sum(&u).direct_sum(&u).with_name("Lambda")
}

/// `U(2) ⊕ U`, the rank-4 instance of `B(2) ⊕ U` with `B = U`.
pub fn u2u() -> Lattice {
    Lattice::twisted_plus_u(&Lattice::u(), "U2U").expect("U is even unimodular")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "U", "U2", "E8", "E8_2", "I_s_t", "Lminus", "Lplus", "Lambda", "B_U", "E8U", "U2U", "U_I11", "E8U_I11",
];

/// Resolves a built-in lattice by name. `I_s_t` is parsed, e.g. `I_3_2`.
pub fn builtin(name: &str) -> Result<Lattice> {
    let unknown = || LatticeError::UnknownLattice(name.to_string());
    Ok(match name {
        "U" => Lattice::u(),
        "B_U" => Lattice::u().with_name("B_U"),
        "U2" => Lattice::u().twist(2)?.with_name("U2"),
        "E8" => Lattice::e8(),
        "E8_2" => Lattice::e8().twist(2)?.with_name("E8_2"),
        "E8U" => e8_plus_u(),
        "Lminus" => lminus(),
        "Lplus" => lplus(),
        "Lambda" => k3(),
        "U2U" => u2u(),
        "U_I11" => Lattice::plus_i11(&Lattice::u(), "U_I11")?,
        "E8U_I11" => Lattice::plus_i11(&e8_plus_u(), "E8U_I11")?,
        _ => {
            let rest = name.strip_prefix("I_").ok_or_else(unknown)?;
            let (s, t) = rest.split_once('_').ok_or_else(unknown)?;
            let s: usize = s.parse().map_err(|_| unknown())?;
            let t: usize = t.parse().map_err(|_| unknown())?;
            Lattice::odd_unimodular(s, t)?
        }
    })
}
