//! The packed verifier against a plain triple-loop Gram computation.

use hadamard_core::hmat::{Sign, SignMatrix};
use hadamard_core::{check_hadamard, paley_hadamard, FieldSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `G = M Mᵀ` over plain integers.
fn gram(rows: &[Vec<i8>]) -> Vec<Vec<i64>> {
    let m = rows.len();
    let mut g = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            g[i][j] = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(&a, &b)| (a * b) as i64)
                .sum();
        }
    }
    g
}

/// `(is_hadamard, first off-diagonal (i, j, G_ij) != 0 with i < j)`.
fn naive_verdict(rows: &[Vec<i8>]) -> (bool, Option<(usize, usize, i64)>) {
    let m = rows.len();
    let g = gram(rows);
    let diag_ok = (0..m).all(|i| g[i][i] == m as i64);
    let first = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .find(|&(i, j)| g[i][j] != 0)
        .map(|(i, j)| (i, j, g[i][j]));
    (diag_ok && first.is_none(), first)
}

fn random_rows(rng: &mut StdRng, m: usize) -> Vec<Vec<i8>> {
    (0..m)
        .map(|_| (0..m).map(|_| if rng.gen() { 1 } else { -1 }).collect())
        .collect()
}

fn assert_agrees(rows: &[Vec<i8>]) {
    let m = SignMatrix::from_rows(rows).unwrap();
    let report = check_hadamard(&m).unwrap();
    let (ok, first) = naive_verdict(rows);
    assert_eq!(report.is_hadamard, ok);
    assert_eq!(
        report.first_violation.map(|v| (v.row_i, v.row_j, v.dot)),
        first
    );
    let g = gram(rows);
    for (i, g_row) in g.iter().enumerate() {
        for (j, &expected) in g_row.iter().enumerate() {
            assert_eq!(m.dot_rows(i, j).unwrap(), expected);
        }
    }
}

fn known_hadamards() -> Vec<SignMatrix> {
    let mut out: Vec<SignMatrix> = (0..=5).map(|k| SignMatrix::sylvester(k).unwrap()).collect();
    for (p, k) in [(3, 1), (7, 1), (11, 1), (19, 1), (23, 1), (3, 3), (31, 1)] {
        out.push(paley_hadamard(&FieldSpec::new(p, k).unwrap()).unwrap());
    }
    let h2 = SignMatrix::sylvester(1).unwrap();
    out.push(out[7].kronecker(&h2).unwrap()); // order 16 from Paley(7) ⊗ H2
    out
}

#[test]
fn random_matrices_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(20240611);
    for _ in 0..100 {
        let m = rng.gen_range(1..=32);
        assert_agrees(&random_rows(&mut rng, m));
    }
}

#[test]
fn random_equivalents_of_hadamards_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for h in known_hadamards().into_iter().filter(|h| h.rows() <= 32) {
        let mut rows = h.to_i8_rows();
        for _ in 0..4 {
            let i = rng.gen_range(0..rows.len());
            rows[i].iter_mut().for_each(|v| *v = -*v);
            let j = rng.gen_range(0..rows.len());
            rows.iter_mut().for_each(|r| r[j] = -r[j]);
            let (a, b) = (rng.gen_range(0..rows.len()), rng.gen_range(0..rows.len()));
            rows.swap(a, b);
        }
        assert!(naive_verdict(&rows).0);
        assert_agrees(&rows);
    }
}

#[test]
fn single_flips_are_located() {
    for h in known_hadamards()
        .into_iter()
        .filter(|h| h.rows() >= 2 && h.rows() <= 32)
    {
        let n = h.rows();
        for r in 0..n {
            for c in [0, n / 2, n - 1] {
                let mut m = h.clone();
                m.set_entry(r, c, -m.entry(r, c).unwrap()).unwrap();
                let report = check_hadamard(&m).unwrap();
                assert!(!report.is_hadamard);
                let v = report.first_violation.unwrap();
                // flipping one entry of row r disturbs exactly the pairs involving r
                let expected = if r == 0 { (0, 1) } else { (0, r) };
                assert_eq!((v.row_i, v.row_j), expected);
                let other = if r == 0 { 1 } else { 0 };
                let delta = 2
                    * m.entry(r, c).unwrap().to_i8() as i64
                    * m.entry(other, c).unwrap().to_i8() as i64;
                assert_eq!(v.dot, delta);
                assert_agrees(&m.to_i8_rows());
            }
        }
    }
}

#[test]
fn kronecker_of_hadamards_is_hadamard() {
    let hs = known_hadamards();
    for a in hs.iter().filter(|h| h.rows() <= 12) {
        for b in hs.iter().filter(|h| h.rows() <= 8) {
            let k = a.kronecker(b).unwrap();
            assert!(check_hadamard(&k).unwrap().is_hadamard);
        }
    }
}

#[test]
fn verification_is_deterministic() {
    let mut m = paley_hadamard(&FieldSpec::new(3, 3).unwrap()).unwrap();
    m.set_entry(17, 3, Sign::Minus).unwrap();
    m.set_entry(9, 3, -m.entry(9, 3).unwrap()).unwrap();
    let first = check_hadamard(&m).unwrap();
    for _ in 0..20 {
        assert_eq!(check_hadamard(&m).unwrap(), first);
    }
}
