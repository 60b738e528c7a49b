//! Exhaustive enumeration of lattice vectors: short vectors of a definite
//! form (recursive bounding with exact rational arithmetic) and coordinate
//! boxes for indefinite forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::Lattice;

/// All `x` with `⟨x,x⟩ = norm` in a definite lattice, in the order the
/// recursion visits them (deterministic). For a negative definite lattice
/// pass a nonpositive norm.
pub fn vectors_of_norm(lattice: &Lattice, norm: i64) -> Result<Vec<Vec<i64>>> {
    let sig = lattice.signature();
    let sign = if sig.positive == lattice.rank() {
        1
    } else if sig.negative == lattice.rank() {
        -1
    } else {
        return Err(LatticeError::NotDefinite);
    };
    let target = sign * norm;
    if target < 0 {
        return Ok(Vec::new());
    }
    let found = vectors_up_to(lattice, sign, target)?;
    let mut out = Vec::new();
    for v in found {
        if lattice.norm(&v)? == norm {
            out.push(v);
        }
    }
    Ok(out)
}

/// Counts vectors of the given norm; `vectors_of_norm(..).len()`.
pub fn count_of_norm(lattice: &Lattice, norm: i64) -> Result<usize> {
    Ok(vectors_of_norm(lattice, norm)?.len())
}

struct Decomposition {
    // q(x) = Σ d_i (x_i + Σ_{j>i} mu[i][j] x_j)^2
    d: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

fn decompose(lattice: &Lattice, sign: i64) -> Decomposition {
    let n = lattice.rank();
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from(sign * lattice.gram().get(i, j))))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let d = (0..n).map(|i| q[i][i].clone()).collect();
    let mu = (0..n).map(|i| (0..n).map(|j| if j > i { q[i][j].clone() } else { BigRational::zero() }).collect()).collect();
    Decomposition { d, mu }
}

/// Every nonzero `x` with `sign·⟨x,x⟩ ≤ bound`.
fn vectors_up_to(lattice: &Lattice, sign: i64, bound: i64) -> Result<Vec<Vec<i64>>> {
    let n = lattice.rank();
    let dec = decompose(lattice, sign);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        recurse(&dec, n - 1, BigRational::from_integer(bound.into()), &mut x, &mut out)?;
    }
    out.retain(|v| v.iter().any(|&c| c != 0));
    Ok(out)
}

fn recurse(
    dec: &Decomposition,
    level: usize,
    budget: BigRational,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in level + 1..n {
        center -= &dec.mu[level][j] * BigRational::from_integer(x[j].into());
    }
    let cost = |xi: i64| -> BigRational {
        let diff = BigRational::from_integer(xi.into()) - &center;
        &dec.d[level] * &diff * &diff
    };
    let start = center.floor().to_integer().to_i64().ok_or(LatticeError::Overflow)?;
    let visit = |xi: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| -> Result<bool> {
        let c = cost(xi);
        if c > budget {
            return Ok(false);
        }
        x[level] = xi;
        if level == 0 {
            out.push(x.clone());
        } else {
            recurse(dec, level - 1, &budget - &c, x, out)?;
        }
        Ok(true)
    };
    // the cost is convex in x_i, so walk outwards from the center
    let mut xi = start;
    while visit(xi, x, out)? {
        xi -= 1;
    }
    let mut xi = start + 1;
    while visit(xi, x, out)? {
        xi += 1;
    }
    x[level] = 0;
    Ok(())
}

/// Cartesian product of per-coordinate value lists, in lexicographic order
/// of list positions.
#[derive(Debug, Clone)]
pub struct ProductIter {
    choices: Vec<Vec<i64>>,
    positions: Option<Vec<usize>>,
}

impl ProductIter {
    pub fn new(choices: Vec<Vec<i64>>) -> Self {
        let positions = if choices.iter().any(Vec::is_empty) { None } else { Some(vec![0; choices.len()]) };
        ProductIter { choices, positions }
    }
}

impl Iterator for ProductIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let pos = self.positions.as_mut()?;
        let item = pos.iter().zip(&self.choices).map(|(&p, c)| c[p]).collect();
        let mut i = pos.len();
        loop {
            if i == 0 {
                self.positions = None;
                break;
            }
            i -= 1;
            if pos[i] + 1 < self.choices[i].len() {
                pos[i] += 1;
                break;
            }
            pos[i] = 0;
        }
        Some(item)
    }
}

/// Iterator over `[-bound, bound]^rank` in lexicographic order.
#[derive(Debug, Clone)]
pub struct BoxIter(ProductIter);

impl BoxIter {
    pub fn new(rank: usize, bound: i64) -> Self {
        assert!(bound >= 0);
        BoxIter(ProductIter::new(vec![(-bound..=bound).collect(); rank]))
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        self.0.next()
    }
}

/// gcd of the absolute values of the coordinates.
pub fn content(coords: &[i64]) -> i64 {
    coords.iter().fold(0i64, |g, &c| g.gcd(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_iter_counts_and_order() {
        let all: Vec<_> = BoxIter::new(2, 1).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![-1, -1]);
        assert_eq!(all[1], vec![-1, 0]);
        assert_eq!(all[8], vec![1, 1]);
        assert_eq!(BoxIter::new(0, 3).count(), 1);
        let p: Vec<_> = ProductIter::new(vec![vec![1, 3], vec![0], vec![-1, 1]]).collect();
        assert_eq!(p, vec![vec![1, 0, -1], vec![1, 0, 1], vec![3, 0, -1], vec![3, 0, 1]]);
        assert_eq!(ProductIter::new(vec![vec![1], vec![]]).count(), 0);
    }

    #[test]
    fn definite_counts_small() {
        // Z^2: four vectors of norm 1, four of norm 2
        let z2 = Lattice::odd_unimodular(2, 0).unwrap();
        assert_eq!(count_of_norm(&z2, 1).unwrap(), 4);
        assert_eq!(count_of_norm(&z2, 2).unwrap(), 4);
        assert_eq!(count_of_norm(&z2, 5).unwrap(), 8);
        // A2 with gram ((2,-1),(-1,2)): six roots
        let a2 = Lattice::new("A2", crate::matrix::SquareMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]).unwrap()).unwrap();
        assert_eq!(count_of_norm(&a2, 2).unwrap(), 6);
        assert_eq!(count_of_norm(&a2, 6).unwrap(), 6);
    }

    #[test]
    fn indefinite_rejected() {
        assert_eq!(vectors_of_norm(&Lattice::u(), 0), Err(LatticeError::NotDefinite));
    }

    #[test]
    fn content_gcd() {
        assert_eq!(content(&[2, 4, 0]), 2);
        assert_eq!(content(&[0, 0]), 0);
        assert_eq!(content(&[-3, 6, 9]), 3);
        assert_eq!(content(&[0, 1, 5]), 1);
    }
}
