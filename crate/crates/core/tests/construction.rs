use hadamard_core::hmat::{Sign, SignMatrix};
use hadamard_core::verify::{check_extension_cases, check_lower_band_blocks, RowPairCase};
use hadamard_core::{
    check_core_invariants, check_hadamard, paley_hadamard, scarpis_extend, ConstructionParams,
    FieldSpec, Labeling,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const PALEY_ORDERS: &[(u64, u32)] = &[
    (3, 1),
    (7, 1),
    (11, 1),
    (19, 1),
    (23, 1),
    (3, 3),
    (31, 1),
    (43, 1),
    (47, 1),
    (59, 1),
    (67, 1),
    (71, 1),
    (79, 1),
    (83, 1),
    (103, 1),
    (107, 1),
    (127, 1),
    (131, 1),
    (139, 1),
    (151, 1),
    (163, 1),
    (167, 1),
    (179, 1),
    (191, 1),
    (199, 1),
];

fn field(p: u64, k: u32) -> FieldSpec {
    FieldSpec::new(p, k).unwrap()
}

/// Random row/column negations and permutations of `h`.
fn scramble(h: &SignMatrix, rng: &mut StdRng) -> SignMatrix {
    let n = h.rows();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    let mut m = h.permute_rows(&rows).unwrap().permute_cols(&cols).unwrap();
    for i in 0..n {
        if rng.gen() {
            m.negate_row(i).unwrap();
        }
        if rng.gen() {
            m.negate_col(i).unwrap();
        }
    }
    m
}

#[test]
fn paley_sweep_up_to_200() {
    for &(p, k) in PALEY_ORDERS {
        let f = field(p, k);
        let h = paley_hadamard(&f).unwrap();
        let n = f.q() as usize + 1;
        assert_eq!(h.rows(), n);
        assert!(check_hadamard(&h).unwrap().is_hadamard, "{f:?}");
        for i in 0..n {
            assert_eq!(h.entry(0, i).unwrap(), Sign::Plus);
            if i > 0 {
                assert_eq!(h.entry(i, 0).unwrap(), Sign::Minus);
                assert_eq!(h.entry(i, i).unwrap(), Sign::Plus);
            }
        }
        for i in 1..n {
            for j in 1..n {
                if i != j {
                    assert_eq!(h.entry(i, j).unwrap(), -h.entry(j, i).unwrap());
                }
            }
        }
    }
}

#[test]
fn normalizing_paley_negates_the_lower_rows_only() {
    for &(p, k) in &PALEY_ORDERS[..8] {
        let h = paley_hadamard(&field(p, k)).unwrap();
        let n = h.rows();
        let normalized = h.normalize().unwrap();
        let mut expected = h.clone();
        for i in 1..n {
            expected.negate_row(i).unwrap();
        }
        assert_eq!(normalized, expected);
        assert!(check_hadamard(&normalized).unwrap().is_hadamard);
    }
}

#[test]
fn normalize_preserves_hadamard_on_scrambled_inputs() {
    let mut rng = StdRng::seed_from_u64(99);
    for &(p, k) in &PALEY_ORDERS[..7] {
        let h = paley_hadamard(&field(p, k)).unwrap();
        for _ in 0..5 {
            let s = scramble(&h, &mut rng);
            assert!(check_hadamard(&s).unwrap().is_hadamard);
            let n = s.normalize().unwrap();
            assert!(n.is_normalized());
            assert_eq!(n.normalize().unwrap(), n);
            assert!(check_hadamard(&n).unwrap().is_hadamard);
        }
    }
}

#[test]
fn cores_of_paley_inputs_satisfy_core_invariants() {
    for &(p, k) in &PALEY_ORDERS[..7] {
        let f = field(p, k);
        let core = paley_hadamard(&f)
            .unwrap()
            .normalize()
            .unwrap()
            .core()
            .unwrap();
        let report = check_core_invariants(&core).unwrap();
        assert!(report.passes, "{f:?}: {:?}", report.violations);
        for i in 0..core.rows() {
            assert_eq!(core.dot_rows(i, i).unwrap(), f.q() as i64);
        }
    }
}

#[test]
fn row_collisions_are_unique() {
    for (p, seed) in [
        (3, None),
        (7, None),
        (11, None),
        (7, Some(5)),
        (11, Some(8)),
    ] {
        let f = field(p, 1);
        let labeling = match seed {
            None => Labeling::canonical(&f),
            Some(s) => Labeling::shuffled(&f, s),
        };
        let params = ConstructionParams::new(labeling).unwrap();
        let lab = params.labeling();
        let q = params.q();
        for r in 1..=q {
            for s in (1..=q).filter(|&s| s != r) {
                let ar = lab.alpha(r).unwrap();
                let as_ = lab.alpha(s).unwrap();
                let denom_inv = ar.sub(as_).unwrap().inv().unwrap();
                for k in 1..=q {
                    for l in 1..=q {
                        let hits = params.colliding_blocks(r, s, k, l).unwrap();
                        assert_eq!(hits.len(), 1, "r={r} s={s} k={k} l={l}");
                        let closed = lab
                            .alpha(l)
                            .unwrap()
                            .sub(lab.alpha(k).unwrap())
                            .unwrap()
                            .mul(&denom_inv)
                            .unwrap();
                        assert_eq!(lab.alpha(hits[0]).unwrap(), &closed);
                    }
                }
            }
        }
    }
}

#[test]
fn extension_sweep_passes_every_case() {
    for &(p, k) in &PALEY_ORDERS[..7] {
        let f = field(p, k);
        let q = f.q() as usize;
        let a = paley_hadamard(&f).unwrap();
        let b = scarpis_extend(&a, &ConstructionParams::canonical(&f).unwrap()).unwrap();
        assert_eq!(b.rows(), q * (q + 1));
        assert!(check_hadamard(&b).unwrap().is_hadamard, "{f:?}");

        let cases = check_extension_cases(&b, q).unwrap();
        assert!(cases.all_pass());
        let qq = q as u64;
        assert_eq!(
            cases.tally(RowPairCase::WithinTopBand).pairs,
            qq * (qq - 1) / 2
        );
        assert_eq!(
            cases.tally(RowPairCase::WithinLowerBand).pairs,
            qq * qq * (qq - 1) / 2
        );
        assert_eq!(
            cases.tally(RowPairCase::TopAgainstLower).pairs,
            qq * qq * qq
        );
        assert_eq!(
            cases.tally(RowPairCase::AcrossLowerBands).pairs,
            qq * (qq - 1) / 2 * qq * qq
        );
        assert_eq!(check_lower_band_blocks(&b, q).unwrap(), None);
    }
}

#[test]
fn blocks_are_row_permutations_of_the_core() {
    for (p, k, seed) in [(3, 1, 0), (7, 1, 3), (3, 3, 11)] {
        let f = field(p, k);
        let q = f.q() as usize;
        let params = ConstructionParams::new(Labeling::shuffled(&f, seed)).unwrap();
        let a = paley_hadamard(&f).unwrap();
        let core = a.normalize().unwrap().core().unwrap();
        let b = scarpis_extend(&a, &params).unwrap();
        let mut core_rows = core.to_i8_rows();
        core_rows.sort();
        for r in 1..=q {
            let band0 = b.submatrix(r * q..(r + 1) * q, 0..q).unwrap();
            for row in band0.to_i8_rows() {
                assert_eq!(row, core.to_i8_rows()[r - 1]);
            }
            for i in 1..=q {
                let perm = params.row_permutation(r, i).unwrap();
                assert!(perm.is_permutation());
                let block = b.submatrix(r * q..(r + 1) * q, i * q..(i + 1) * q).unwrap();
                assert_eq!(block, perm.apply(&core).unwrap());
                let mut rows = block.to_i8_rows();
                rows.sort();
                assert_eq!(rows, core_rows);
            }
        }
    }
}

#[test]
fn top_band_is_input_without_first_row_tensor_ones() {
    let f = field(7, 1);
    let a = paley_hadamard(&f).unwrap();
    let b = scarpis_extend(&a, &ConstructionParams::canonical(&f).unwrap()).unwrap();
    let normalized = a.normalize().unwrap();
    let a_prime = normalized.submatrix(1..8, 0..8).unwrap();
    let ones = SignMatrix::filled(1, 7, Sign::Plus).unwrap();
    assert_eq!(
        b.submatrix(0..7, 0..56).unwrap(),
        a_prime.kronecker(&ones).unwrap()
    );
}

#[test]
fn any_labeling_gives_a_hadamard_output() {
    for p in [3, 7] {
        let f = field(p, 1);
        let a = paley_hadamard(&f).unwrap();
        for seed in 1..=10 {
            let params = ConstructionParams::new(Labeling::shuffled(&f, seed)).unwrap();
            let b = scarpis_extend(&a, &params).unwrap();
            assert!(check_hadamard(&b).unwrap().is_hadamard, "q={p} seed={seed}");
        }
    }
}

#[test]
fn equivalent_inputs_are_accepted() {
    let mut rng = StdRng::seed_from_u64(3);
    for (p, k) in [(3, 1), (7, 1), (11, 1), (3, 3)] {
        let f = field(p, k);
        let params = ConstructionParams::canonical(&f).unwrap();
        let a = paley_hadamard(&f).unwrap();
        for _ in 0..3 {
            let s = scramble(&a, &mut rng);
            let b = scarpis_extend(&s, &params).unwrap();
            assert!(check_hadamard(&b).unwrap().is_hadamard);
        }
        // an already-normalized input yields the same output as the raw one
        let n = a.normalize().unwrap();
        assert_eq!(
            scarpis_extend(&n, &params).unwrap(),
            scarpis_extend(&a, &params).unwrap()
        );
    }
}

#[test]
fn sylvester_inputs_work_for_q_3_and_7() {
    // Order 4 and 8 Sylvester matrices are valid inputs too.
    for (log2, p) in [(2, 3), (3, 7)] {
        let f = field(p, 1);
        let a = SignMatrix::sylvester(log2).unwrap();
        let b = scarpis_extend(&a, &ConstructionParams::canonical(&f).unwrap()).unwrap();
        assert!(check_hadamard(&b).unwrap().is_hadamard);
    }
}

#[test]
fn corrupted_output_is_caught_in_the_right_case() {
    let f = field(7, 1);
    let a = paley_hadamard(&f).unwrap();
    let mut b = scarpis_extend(&a, &ConstructionParams::canonical(&f).unwrap()).unwrap();
    // swap two entries inside one lower-band block: band 2, row 3, block 4
    let row = 2 * 7 + 3;
    let c1 = 4 * 7;
    let x = b.entry(row, c1).unwrap();
    let c2 = (c1 + 1..c1 + 7)
        .find(|&c| b.entry(row, c).unwrap() != x)
        .unwrap();
    let y = b.entry(row, c2).unwrap();
    b.set_entry(row, c1, y).unwrap();
    b.set_entry(row, c2, x).unwrap();
    let cases = check_extension_cases(&b, 7).unwrap();
    assert!(!cases.all_pass());
    assert!(cases.tally(RowPairCase::WithinTopBand).failures == 0);
    assert!(cases.tally(RowPairCase::WithinLowerBand).failures > 0);
    assert!(check_lower_band_blocks(&b, 7).unwrap().is_some());
}
