//! Brute-force checks at desk scale: box enumeration, label invariance
//! under sampled isometries, connectivity of orbit slices, Wall's
//! congruence and E8 shell counts.
//!
//! Randomized suites derive one ChaCha stream per sample from the seed, so
//! results do not depend on the number of worker threads.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{classify, representative_in, OrbitLabel};
use crate::dilatation::phi;
use crate::enumerate::{content, count_of_norm, BoxIter};
use crate::error::Result;
use crate::isometry::{GeneratorSet, Isometry};
use crate::lattice::Lattice;
use crate::matrix::SquareMatrix;
use crate::union_find::UnionFind;
use crate::vector::{LatticeVector, VectorType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Result document shared by every suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub counterexample: Option<Value>,
    pub stats: BTreeMap<String, Value>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone)]
pub struct BoxScan {
    pub lattice: Arc<Lattice>,
    pub bound: i64,
    pub norm_filter: Option<i64>,
    pub vectors: Vec<LatticeVector>,
}

/// Every vector of `[-bound, bound]^rank` accepted by `keep`, in
/// lexicographic order. Work is split on the first coordinate.
fn scan_box<F>(lattice: &Arc<Lattice>, bound: i64, keep: F) -> Result<Vec<Vec<i64>>>
where
    F: Fn(&[i64]) -> Result<bool> + Sync,
{
    let rank = lattice.rank();
    if rank == 0 {
        return Ok(Vec::new());
    }
    let chunks: Vec<Vec<Vec<i64>>> = (-bound..=bound)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            for rest in BoxIter::new(rank - 1, bound) {
                let mut c = Vec::with_capacity(rank);
                c.push(first);
                c.extend(rest);
                if keep(&c)? {
                    out.push(c);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Primitive vectors of the given norm in the coordinate box.
pub fn enumerate_primitive(lattice: Arc<Lattice>, bound: i64, norm: Option<i64>) -> Result<BoxScan> {
    let coords = scan_box(&lattice, bound.max(0), |c| {
        if content(c) != 1 {
            return Ok(false);
        }
        Ok(match norm {
            Some(m) => lattice.norm(c)? == m,
            None => true,
        })
    })?;
    let vectors = coords.into_iter().map(|c| LatticeVector::new(lattice.clone(), c)).collect::<Result<_>>()?;
    Ok(BoxScan { lattice, bound, norm_filter: norm, vectors })
}

/// Uniform over primitive vectors of the coordinate box (rejection sampling).
pub fn random_primitive<R: Rng>(lattice: &Arc<Lattice>, bound: i64, rng: &mut R) -> Result<LatticeVector> {
    loop {
        let c: Vec<i64> = (0..lattice.rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
        if content(&c) == 1 {
            return LatticeVector::new(lattice.clone(), c);
        }
    }
}

/// Label of `g·v` compared with the label of `v`; returns a counterexample
/// document on disagreement.
fn invariance_check(g: &Isometry, v: &LatticeVector) -> Result<Option<Value>> {
    let before = classify(v)?;
    let image = g.apply(v)?;
    let after = classify(&image)?;
    if before.label == after.label {
        Ok(None)
    } else {
        Ok(Some(json!({
            "vector": v.coords(),
            "image": image.coords(),
            "matrix": g.matrix().rows(),
            "label_before": before.label,
            "label_after": after.label,
        })))
    }
}

fn invariance_report(results: Vec<(OrbitLabel, Option<Value>)>, mut stats: BTreeMap<String, Value>) -> SuiteReport {
    let mut per_label: BTreeMap<String, usize> = BTreeMap::new();
    for (label, _) in &results {
        *per_label.entry(label.as_str().to_string()).or_default() += 1;
    }
    let failures = results.iter().filter(|(_, c)| c.is_some()).count();
    let counterexample = results.into_iter().find_map(|(_, c)| c);
    stats.insert("label_counts".into(), json!(per_label));
    stats.insert("label_changes".into(), json!(failures));
    SuiteReport {
        suite: "invariance".into(),
        status: if failures == 0 { Status::Pass } else { Status::Fail },
        counterexample,
        stats,
    }
}

/// `samples` random primitive vectors in the box, each moved by a fresh
/// word of `word_length` generators; the orbit label must not change.
pub fn invariance_suite(
    lattice: Arc<Lattice>,
    samples: usize,
    seed: u64,
    bound: i64,
    word_length: usize,
) -> Result<SuiteReport> {
    let set = GeneratorSet::for_lattice(lattice.clone())?;
    let results: Vec<(OrbitLabel, Option<Value>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let v = random_primitive(&lattice, bound.max(1), &mut rng)?;
            let g = set.sample_word_with(&mut rng, word_length)?;
            Ok((classify(&v)?.label, invariance_check(&g, &v)?))
        })
        .collect::<Result<_>>()?;
    let mut stats = BTreeMap::new();
    stats.insert("lattice".into(), json!(lattice.name()));
    stats.insert("samples".into(), json!(samples));
    stats.insert("seed".into(), json!(seed));
    stats.insert("bound".into(), json!(bound));
    stats.insert("word_length".into(), json!(word_length));
    Ok(invariance_report(results, stats))
}

/// Invariance check on caller-supplied matrices. Every matrix is certified
/// first; an uncertified one aborts the run with `NotIsometry`.
pub fn invariance_harness(lattice: Arc<Lattice>, cases: &[(Vec<Vec<i64>>, Vec<i64>)]) -> Result<SuiteReport> {
    let prepared = cases
        .iter()
        .map(|(m, v)| {
            let g = Isometry::certify(lattice.clone(), SquareMatrix::from_rows(m.clone())?)?;
            Ok((g, LatticeVector::new(lattice.clone(), v.clone())?))
        })
        .collect::<Result<Vec<_>>>()?;
    let results = prepared
        .iter()
        .map(|(g, v)| Ok((classify(v)?.label, invariance_check(g, v)?)))
        .collect::<Result<_>>()?;
    let mut stats = BTreeMap::new();
    stats.insert("lattice".into(), json!(lattice.name()));
    stats.insert("samples".into(), json!(cases.len()));
    Ok(invariance_report(results, stats))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub labels_present: BTreeSet<OrbitLabel>,
    pub contains_representative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub norm: i64,
    pub vertices: usize,
    pub walks: usize,
    pub edges_in_box: usize,
    pub labels_overall: BTreeSet<OrbitLabel>,
    pub components: Vec<ComponentSummary>,
    pub mixed_label_components: usize,
}

/// Graph on the primitive norm-`norm` vectors of the box, with an edge
/// `v — g·v` for every sampled word whose image stays in the box. Labels
/// are orbit invariants, so no component may carry two labels. How far the
/// components are from whole orbits is reported, not checked.
pub fn connectivity_experiment(
    lattice: Arc<Lattice>,
    norm: i64,
    bound: i64,
    seed: u64,
    walks: usize,
    word_length: usize,
) -> Result<ConnectivityReport> {
    let set = GeneratorSet::for_lattice(lattice.clone())?;
    let scan = enumerate_primitive(lattice.clone(), bound, Some(norm))?;
    let index: HashMap<&[i64], usize> = scan.vectors.iter().enumerate().map(|(i, v)| (v.coords(), i)).collect();
    let labels: Vec<OrbitLabel> = scan.vectors.par_iter().map(|v| Ok(classify(v)?.label)).collect::<Result<_>>()?;

    let edges: Vec<Option<(usize, usize)>> = if scan.vectors.is_empty() {
        Vec::new()
    } else {
        (0..walks)
            .into_par_iter()
            .map(|w| {
                let mut rng = rng_for(seed, w as u64);
                let from = rng.gen_range(0..scan.vectors.len());
                let g = set.sample_word_with(&mut rng, word_length.max(1))?;
                let image = g.apply(&scan.vectors[from])?;
                Ok(index.get(image.coords()).map(|&to| (from, to)))
            })
            .collect::<Result<_>>()?
    };
    let mut uf = UnionFind::new(scan.vectors.len());
    let mut edges_in_box = 0;
    for (a, b) in edges.into_iter().flatten() {
        edges_in_box += 1;
        uf.union(a, b);
    }

    let mut reps = BTreeSet::new();
    if norm % 2 == 0 {
        for &label in OrbitLabel::for_half_norm(norm / 2) {
            if let Ok(r) = representative_in(lattice.clone(), norm, label) {
                if let Some(&i) = index.get(r.coords()) {
                    reps.insert(i);
                }
            }
        }
    }
    let mut by_root: BTreeMap<usize, ComponentSummary> = BTreeMap::new();
    for i in 0..scan.vectors.len() {
        let root = uf.find(i);
        let entry = by_root.entry(root).or_insert_with(|| ComponentSummary {
            size: 0,
            labels_present: BTreeSet::new(),
            contains_representative: false,
        });
        entry.size += 1;
        entry.labels_present.insert(labels[i]);
        entry.contains_representative |= reps.contains(&i);
    }
    let mut components: Vec<ComponentSummary> = by_root.into_values().collect();
    components.sort_by(|a, b| b.size.cmp(&a.size).then_with(|| a.labels_present.cmp(&b.labels_present)));
    let mixed_label_components = components.iter().filter(|c| c.labels_present.len() > 1).count();
    Ok(ConnectivityReport {
        norm,
        vertices: scan.vectors.len(),
        walks,
        edges_in_box,
        labels_overall: labels.into_iter().collect(),
        components,
        mixed_label_components,
    })
}

/// Every characteristic vector of `I_{s,t}` in the box has norm
/// `≡ s − t (mod 8)`.
pub fn wall_scan(s: usize, t: usize, bound: i64) -> Result<SuiteReport> {
    let lattice = Arc::new(Lattice::odd_unimodular(s, t)?);
    let characteristic = scan_box(&lattice, bound.max(0), |c| {
        let v = LatticeVector::new(lattice.clone(), c.to_vec())?;
        Ok(v.vector_type()? == VectorType::Characteristic)
    })?;
    let mut residues = BTreeSet::new();
    let mut counterexample = None;
    for c in &characteristic {
        let v = LatticeVector::new(lattice.clone(), c.clone())?;
        residues.insert(v.norm()?.rem_euclid(8));
        if counterexample.is_none() && !v.wall_congruence_holds()? {
            counterexample = Some(json!({ "coords": c, "norm": v.norm()? }));
        }
    }
    let mut stats = BTreeMap::new();
    stats.insert("s".into(), json!(s));
    stats.insert("t".into(), json!(t));
    stats.insert("bound".into(), json!(bound));
    stats.insert("expected_residue".into(), json!((s as i64 - t as i64).rem_euclid(8)));
    stats.insert("characteristic_vectors".into(), json!(characteristic.len()));
    stats.insert("norm_residues_mod_8".into(), json!(residues));
    Ok(SuiteReport {
        suite: "wall".into(),
        status: if counterexample.is_none() { Status::Pass } else { Status::Fail },
        counterexample,
        stats,
    })
}

/// Number of E8 vectors of the given norm (negative definite convention).
pub fn e8_count(norm: i64) -> Result<usize> {
    count_of_norm(&Lattice::e8(), norm)
}

/// Number of roots of E8.
pub fn e8_root_count() -> Result<usize> {
    e8_count(-2)
}

/// Structural anchors of the E8 Gram matrix: determinant 1, signature
/// (0,8), 240 roots, 2160 vectors of norm −4, nothing of odd norm.
pub fn e8_suite() -> Result<SuiteReport> {
    let e8 = Lattice::e8();
    let det = e8.determinant();
    let sig = e8.signature();
    let counts: BTreeMap<i64, usize> = [-1, -2, -3, -4].iter().map(|&m| Ok((m, e8_count(m)?))).collect::<Result<_>>()?;
    let expected: BTreeMap<i64, usize> = [(-1, 0), (-2, 240), (-3, 0), (-4, 2160)].into();
    let ok = det == 1.into() && sig.positive == 0 && sig.negative == 8 && counts == expected;
    let mut stats = BTreeMap::new();
    stats.insert("determinant".into(), json!(det.to_string()));
    stats.insert("signature".into(), json!([sig.positive, sig.negative]));
    stats.insert(
        "norm_counts".into(),
        json!(counts.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>()),
    );
    Ok(SuiteReport {
        suite: "e8".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        counterexample: None,
        stats,
    })
}

/// Per-`n` label census of a box scan: which labels occur among primitive
/// vectors of norm `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: i64,
    pub count: usize,
    pub labels: BTreeMap<OrbitLabel, usize>,
}

pub fn label_census(lattice: Arc<Lattice>, bound: i64, n_min: i64, n_max: i64) -> Result<Vec<CensusRow>> {
    let scan = enumerate_primitive(lattice, bound, None)?;
    let mut rows: BTreeMap<i64, CensusRow> =
        (n_min..=n_max).map(|n| (n, CensusRow { n, count: 0, labels: BTreeMap::new() })).collect();
    for v in &scan.vectors {
        let norm = v.norm()?;
        if let Some(row) = rows.get_mut(&(norm / 2)) {
            let label = classify(v)?.label;
            row.count += 1;
            *row.labels.entry(label).or_default() += 1;
        }
    }
    Ok(rows.into_values().collect())
}

/// For primitive vectors of norm divisible by 4, the three descriptions of
/// the characteristic class; returns the vectors where they disagree.
pub fn triple_disagreements(vectors: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let mut bad = Vec::new();
    for v in vectors {
        if v.is_zero() || !v.is_primitive()? || v.norm()? % 4 != 0 {
            continue;
        }
        let c = v.coords();
        let characteristic = v.vector_type()? == VectorType::Characteristic;
        let b_even = c[c.len() - 2] % 2 == 0 && c[c.len() - 1] % 2 == 0;
        let integral = phi(v)?.is_integral();
        if characteristic != b_even || b_even != integral {
            bad.push(v.clone());
        }
    }
    Ok(bad)
}
