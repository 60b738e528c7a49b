//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. All criteria are exact; the pinned parameters are the constants
//! below.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lattice_orbit::enumerate::BoxIter;
use lattice_orbit::lattice::{lminus, lplus, u2u};
use lattice_orbit::oracle::{self, random_primitive};
use lattice_orbit::{
    builtin, classify, embed_minus, embed_plus, even_witness, is_even_type, phi, phi_inverse, Lattice, LatticeVector,
    OrbitLabel, WitnessOutcome,
};

const SEED: u64 = 42;
const SAMPLES: usize = 10_000;
const WORD_LENGTH: usize = 8;
const INVARIANCE_BOUND: i64 = 3;
const RANDOM_BOUND: i64 = 9;
const U2U_BOX: i64 = 6;
const N_RANGE: (i64, i64) = (-6, 6);
const FASTPATH_BOX: i64 = 4;
const PHI_BOX: i64 = 5;
const WALL_BOX: i64 = 3;
const WITNESS_BOUND: i64 = 2;
const CONNECTIVITY_BOX: i64 = 5;
const CONNECTIVITY_WALKS: usize = 10_000;
const CONNECTIVITY_SEED: u64 = 7;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn u2u_arc() -> Arc<Lattice> {
    Arc::new(u2u())
}

/// Primitive vectors of the U(2)+U box with norm divisible by 4.
fn u2u_box_norm0mod4() -> Vec<LatticeVector> {
    let scan = oracle::enumerate_primitive(u2u_arc(), U2U_BOX, None).unwrap();
    scan.vectors.into_iter().filter(|v| v.norm().unwrap() % 4 == 0).collect()
}

/// Random primitive vectors of Lminus with norm divisible by 4.
fn lminus_random_norm0mod4() -> Vec<LatticeVector> {
    let l = Arc::new(lminus());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::with_capacity(SAMPLES);
    while out.len() < SAMPLES {
        let v = random_primitive(&l, RANDOM_BOUND, &mut rng).unwrap();
        if v.norm().unwrap() % 4 == 0 {
            out.push(v);
        }
    }
    out
}

fn census() -> Check {
    let rows = oracle::label_census(u2u_arc(), U2U_BOX, N_RANGE.0, N_RANGE.1).map_err(|e| e.to_string())?;
    for row in &rows {
        if row.count == 0 {
            continue;
        }
        let expected = if row.n % 2 == 0 { 2 } else { 1 };
        if row.labels.len() != expected {
            return Err(format!("n = {}: labels {:?}", row.n, row.labels));
        }
        if row.n % 2 == 0
            && (!row.labels.contains_key(&OrbitLabel::EvenCharacteristic)
                || !row.labels.contains_key(&OrbitLabel::EvenOrdinary))
        {
            return Err(format!("n = {}: an even label is missing", row.n));
        }
    }
    if rows.iter().any(|r| r.count == 0) {
        return Err("some n in range has no vectors in the box".into());
    }
    let total: usize = rows.iter().map(|r| r.count).sum();
    Ok(format!("{} values of n, {total} vectors", rows.len()))
}

fn invariance() -> Check {
    let report = oracle::invariance_suite(Arc::new(lminus()), SAMPLES, SEED, INVARIANCE_BOUND, WORD_LENGTH)
        .map_err(|e| e.to_string())?;
    let changes = &report.stats["label_changes"];
    if report.passed() {
        Ok(format!("{SAMPLES} samples, seed {SEED}, word length {WORD_LENGTH}, label changes {changes}"))
    } else {
        Err(format!("counterexample {:?}", report.counterexample))
    }
}

fn triple() -> Check {
    let exhaustive = u2u_box_norm0mod4();
    let random = lminus_random_norm0mod4();
    let mut bad = oracle::triple_disagreements(&exhaustive).map_err(|e| e.to_string())?;
    bad.extend(oracle::triple_disagreements(&random).map_err(|e| e.to_string())?);
    if bad.is_empty() {
        Ok(format!("{} box + {} random vectors, 0 disagreements", exhaustive.len(), random.len()))
    } else {
        Err(format!("{} disagreements, first {}", bad.len(), bad[0]))
    }
}

fn fastpath() -> Check {
    let l = Arc::new(builtin("U_I11").unwrap());
    let mut checked = 0usize;
    for c in BoxIter::new(l.rank(), FASTPATH_BOX) {
        let v = LatticeVector::new(l.clone(), c).unwrap();
        if v.char_fastpath_bi11().unwrap() != v.vector_type().unwrap() {
            return Err(format!("disagreement at {v}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} vectors, 0 disagreements"))
}

fn phi_contract(v: &LatticeVector) -> Result<(), String> {
    let h = phi(v).map_err(|e| e.to_string())?;
    if v.norm().unwrap() != 2 * h.quadratic_value().unwrap() {
        return Err(format!("norm relation fails at {v}"));
    }
    let back = phi_inverse(&h, v.lattice().clone()).map_err(|e| e.to_string())?;
    if back.coords() != v.coords() {
        return Err(format!("phi_inverse(phi(v)) != v at {v}"));
    }
    if phi(&back).unwrap() != h {
        return Err(format!("phi(phi_inverse(h)) != h at {v}"));
    }
    Ok(())
}

fn phi_contracts() -> Check {
    let l = Arc::new(lminus());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..SAMPLES {
        let c: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND)).collect();
        phi_contract(&LatticeVector::new(l.clone(), c).unwrap())?;
    }
    let u = u2u_arc();
    let mut boxed = 0usize;
    for c in BoxIter::new(u.rank(), PHI_BOX) {
        phi_contract(&LatticeVector::new(u.clone(), c).unwrap())?;
        boxed += 1;
    }
    Ok(format!("{SAMPLES} random + {boxed} box vectors"))
}

fn wall() -> Check {
    let mut chars = 0u64;
    for s in 1..=3 {
        for t in 1..=3 {
            let report = oracle::wall_scan(s, t, WALL_BOX).map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("I_{s},{t}: {:?}", report.counterexample));
            }
            chars += report.stats["characteristic_vectors"].as_u64().unwrap_or(0);
        }
    }
    Ok(format!("9 lattices, {chars} characteristic vectors"))
}

fn even_type() -> Check {
    let l = Arc::new(lminus());
    for k in -5..=5i64 {
        let mut c = vec![0i64; 12];
        c[8] = k;
        c[9] = 1;
        let v = LatticeVector::new(l.clone(), c).unwrap();
        match even_witness(&v, WITNESS_BOUND).map_err(|e| e.to_string())? {
            WitnessOutcome::Found { .. } => {}
            other => return Err(format!("no witness for {v}: {other:?}")),
        }
        let mut c = vec![0i64; 12];
        c[10] = 2 * k;
        c[11] = 1;
        let v = LatticeVector::new(l.clone(), c).unwrap();
        match even_witness(&v, WITNESS_BOUND).map_err(|e| e.to_string())? {
            WitnessOutcome::NotFound { obstruction: Some(_) } => {}
            other => return Err(format!("expected an obstruction for {v}: {other:?}")),
        }
    }
    let mut vectors = u2u_box_norm0mod4();
    vectors.extend(lminus_random_norm0mod4());
    for v in &vectors {
        let even = is_even_type(v).map_err(|e| e.to_string())?;
        let characteristic = classify(v).unwrap().label == OrbitLabel::EvenCharacteristic;
        if even != characteristic {
            return Err(format!("is_even_type disagrees with the label at {v}"));
        }
    }
    Ok(format!("k in [-5,5] both families; {} label comparisons", vectors.len()))
}

fn connectivity() -> Check {
    let mut parts = Vec::new();
    for norm in (-8..=8).step_by(2) {
        let r = oracle::connectivity_experiment(u2u_arc(), norm, CONNECTIVITY_BOX, CONNECTIVITY_SEED, CONNECTIVITY_WALKS, 1)
            .map_err(|e| e.to_string())?;
        if r.mixed_label_components != 0 {
            return Err(format!("norm {norm}: {} mixed components", r.mixed_label_components));
        }
        parts.push(format!("{norm}:{}/{}", r.components.len(), r.vertices));
    }
    Ok(format!("mixed 0; components/vertices {}", parts.join(" ")))
}

fn anchors() -> Check {
    let e8 = builtin("E8").unwrap();
    let det = e8.determinant();
    if det.magnitude().to_string() != "1" {
        return Err(format!("det E8 = {det}"));
    }
    let sig = e8.signature();
    if (sig.positive, sig.negative) != (0, 8) {
        return Err(format!("signature E8 = {sig}"));
    }
    let roots = oracle::e8_root_count().map_err(|e| e.to_string())?;
    if roots != 240 {
        return Err(format!("{roots} roots"));
    }
    let sig = lminus().signature();
    if (sig.positive, sig.negative) != (2, 10) {
        return Err(format!("signature Lminus = {sig}"));
    }
    let (lm, lp) = (Arc::new(lminus()), Arc::new(lplus()));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut draw = |l: &Arc<Lattice>| {
        LatticeVector::new(l.clone(), (0..l.rank()).map(|_| rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND)).collect()).unwrap()
    };
    for _ in 0..1000 {
        let (v1, v2, w1, w2) = (draw(&lm), draw(&lm), draw(&lp), draw(&lp));
        let (iv1, iv2) = (embed_minus(&v1).unwrap(), embed_minus(&v2).unwrap());
        let (iw1, iw2) = (embed_plus(&w1).unwrap(), embed_plus(&w2).unwrap());
        if iv1.inner(&iw1).unwrap() != 0 || iv2.inner(&iw2).unwrap() != 0 || iv1.inner(&iw2).unwrap() != 0 {
            return Err(format!("images of {v1} and {w2} are not orthogonal"));
        }
        if iv1.inner(&iv2).unwrap() != v1.inner(&v2).unwrap() || iw1.inner(&iw2).unwrap() != w1.inner(&w2).unwrap() {
            return Err("an embedding does not preserve the form".into());
        }
    }
    Ok("|det E8| = 1, sig E8 (0,8), 240 roots, sig Lminus (2,10), embeddings on 1000 pairs".into())
}

fn golden() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], &str); 4] = [
        (&["classify", "--lattice", "Lminus", "--coords", "0,0,0,0,0,0,0,0,0,0,1,5"], "classify_odd.json"),
        (&["heegner", "--from", "-2", "--to", "2"], "heegner_n_-2_2.json"),
        (&["rep", "--norm", "8", "--class", "characteristic"], "rep_norm8_characteristic.json"),
        (&["heegner", "--norm-from", "-12", "--norm-to", "12"], "heegner_norm_-12_12.json"),
    ];
    for (args, file) in cases {
        let expected = std::fs::read(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        for _ in 0..2 {
            let out = Command::new(env!("CARGO_BIN_EXE_lattice-orbit")).args(args).output().map_err(|e| e.to_string())?;
            if !out.status.success() || out.stdout != expected {
                return Err(format!("{args:?} differs from {file}"));
            }
        }
    }
    Ok("4 golden files, byte-identical on repeated runs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("label cardinality per n in U(2)+U box 6", census),
        ("label invariance under isometry words in Lminus", invariance),
        ("triple characterization agreement", triple),
        ("B+I_{1,1} fast path equals definition", fastpath),
        ("dilatation contracts", phi_contracts),
        ("Wall congruence for I_{s,t}", wall),
        ("even-type witnesses and obstructions", even_type),
        ("connectivity components are label-pure", connectivity),
        ("structural anchors", anchors),
        ("CLI golden files", golden),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2}  {name}  [{detail}] ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("FAIL {:>2}  {name}  [{detail}] ({secs:.1}s)", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
