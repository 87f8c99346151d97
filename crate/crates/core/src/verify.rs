//! Exact Hadamard certification and the row-pair invariants an extended
//! matrix of order `q(q+1)` must satisfy.
//!
//! Everything here is integer arithmetic on packed rows. Row pairs are
//! scanned in parallel, but reported violations are always the
//! lexicographically first ones, independent of thread count.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hmat::SignMatrix;

/// A pair of distinct rows whose dot product is not zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub row_i: usize,
    pub row_j: usize,
    pub dot: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows {} and {} have dot product {}",
            self.row_i, self.row_j, self.dot
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub order: usize,
    pub is_hadamard: bool,
    pub first_violation: Option<Violation>,
    /// Row pairs examined in lexicographic order up to and including the
    /// first violation (all `m(m-1)/2` pairs when there is none).
    pub pairs_checked: u64,
}

fn require_square(m: &SignMatrix) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// First `j > i` with a nonzero dot against row `i`.
fn first_bad_partner(m: &SignMatrix, i: usize) -> Option<Violation> {
    (i + 1..m.rows()).find_map(|j| {
        let dot = m.dot_rows_unchecked(i, j);
        (dot != 0).then_some(Violation {
            row_i: i,
            row_j: j,
            dot,
        })
    })
}

/// Checks `M Mᵀ = m I` exactly: all distinct rows must be orthogonal.
pub fn check_hadamard(m: &SignMatrix) -> Result<VerificationReport> {
    let order = require_square(m)?;
    let first_violation = (0..order)
        .into_par_iter()
        .find_map_first(|i| first_bad_partner(m, i));
    let n = order as u64;
    let pairs_checked = match first_violation {
        None => n * n.saturating_sub(1) / 2,
        Some(v) => {
            let (i, j) = (v.row_i as u64, v.row_j as u64);
            // pairs (a, *) for a < i, then (i, i+1..=j)
            i * (n - 1) - i * i.saturating_sub(1) / 2 + (j - i)
        }
    };
    Ok(VerificationReport {
        order,
        is_hadamard: first_violation.is_none(),
        first_violation,
        pairs_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreViolation {
    RowSum {
        row: usize,
        sum: i64,
    },
    ColSum {
        col: usize,
        sum: i64,
    },
    RowDot {
        row_i: usize,
        row_j: usize,
        dot: i64,
    },
}

impl fmt::Display for CoreViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoreViolation::RowSum { row, sum } => write!(f, "row {row} sums to {sum}"),
            CoreViolation::ColSum { col, sum } => write!(f, "column {col} sums to {sum}"),
            CoreViolation::RowDot { row_i, row_j, dot } => {
                write!(f, "rows {row_i} and {row_j} have dot product {dot}")
            }
        }
    }
}

/// Outcome of [`check_core_invariants`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    pub order: usize,
    pub passes: bool,
    /// The first few failures: row sums, then column sums, then row dots.
    pub violations: Vec<CoreViolation>,
    pub violation_count: u64,
}

const MAX_REPORTED: usize = 32;

/// Checks the facts a normalized Hadamard core of order `q` satisfies:
/// every row and column sums to `-1`, and distinct rows have dot `-1`.
pub fn check_core_invariants(c: &SignMatrix) -> Result<CoreReport> {
    let order = require_square(c)?;
    let mut violations = Vec::new();
    let mut count = 0u64;
    let mut record = |v: CoreViolation| {
        count += 1;
        if violations.len() < MAX_REPORTED {
            violations.push(v);
        }
    };
    for row in 0..order {
        let sum = c.row_sum(row)?;
        if sum != -1 {
            record(CoreViolation::RowSum { row, sum });
        }
    }
    let t = c.transpose();
    for col in 0..order {
        let sum = t.row_sum(col)?;
        if sum != -1 {
            record(CoreViolation::ColSum { col, sum });
        }
    }
    for i in 0..order {
        for j in i + 1..order {
            let dot = c.dot_rows_unchecked(i, j);
            if dot != -1 {
                record(CoreViolation::RowDot {
                    row_i: i,
                    row_j: j,
                    dot,
                });
            }
        }
    }
    Ok(CoreReport {
        order,
        passes: count == 0,
        violations,
        violation_count: count,
    })
}

/// Which bands two rows of an extended matrix of order `q(q+1)` fall in.
///
/// The rows split into `q+1` bands of `q` rows: band 0 comes from the
/// input matrix minus its first row, bands `1..=q` carry the permuted core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowPairCase {
    /// Two rows of band 0.
    WithinTopBand,
    /// Two rows of the same band `r >= 1`.
    WithinLowerBand,
    /// A row of band 0 and a row of band `s >= 1`.
    TopAgainstLower,
    /// Rows of two different bands `r, s >= 1`.
    AcrossLowerBands,
}

impl RowPairCase {
    pub const ALL: [RowPairCase; 4] = [
        RowPairCase::WithinTopBand,
        RowPairCase::WithinLowerBand,
        RowPairCase::TopAgainstLower,
        RowPairCase::AcrossLowerBands,
    ];

    pub fn classify(q: usize, i: usize, j: usize) -> RowPairCase {
        let (a, b) = (i / q, j / q);
        match (a == 0, b == 0, a == b) {
            (true, true, _) => RowPairCase::WithinTopBand,
            (false, false, true) => RowPairCase::WithinLowerBand,
            (false, false, false) => RowPairCase::AcrossLowerBands,
            _ => RowPairCase::TopAgainstLower,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseTally {
    pub pairs: u64,
    pub failures: u64,
    pub first_violation: Option<Violation>,
}

/// Orthogonality results grouped by [`RowPairCase`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub q: usize,
    tallies: [CaseTally; 4],
}

impl CaseReport {
    pub fn tally(&self, case: RowPairCase) -> &CaseTally {
        &self.tallies[case.slot()]
    }

    pub fn all_pass(&self) -> bool {
        self.tallies.iter().all(|t| t.failures == 0)
    }
}

fn merge_tallies(mut a: [CaseTally; 4], b: [CaseTally; 4]) -> [CaseTally; 4] {
    for (x, y) in a.iter_mut().zip(b) {
        x.pairs += y.pairs;
        x.failures += y.failures;
        x.first_violation = match (x.first_violation, y.first_violation) {
            (Some(u), Some(v)) => Some(if (u.row_i, u.row_j) <= (v.row_i, v.row_j) {
                u
            } else {
                v
            }),
            (u, v) => u.or(v),
        };
    }
    a
}

/// Orthogonality of every row pair of `b`, tallied per [`RowPairCase`].
pub fn check_extension_cases(b: &SignMatrix, q: usize) -> Result<CaseReport> {
    let order = require_square(b)?;
    if q == 0 || order != q * (q + 1) {
        return Err(Error::WrongOrder {
            expected: q * (q + 1),
            found: order,
        });
    }
    let tallies = (0..order)
        .into_par_iter()
        .map(|i| {
            let mut t = [CaseTally::default(); 4];
            for j in i + 1..order {
                let slot = &mut t[RowPairCase::classify(q, i, j).slot()];
                slot.pairs += 1;
                let dot = b.dot_rows_unchecked(i, j);
                if dot != 0 {
                    slot.failures += 1;
                    slot.first_violation.get_or_insert(Violation {
                        row_i: i,
                        row_j: j,
                        dot,
                    });
                }
            }
            t
        })
        .reduce(|| [CaseTally::default(); 4], merge_tallies);
    Ok(CaseReport { q, tallies })
}

/// A block-level failure inside one lower band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockViolation {
    pub band: usize,
    pub row_k: usize,
    pub row_l: usize,
    pub block: usize,
    pub dot: i64,
}

/// Within each lower band `r >= 1` and for rows `k != l`, block 0 must
/// contribute `q` to the dot product and each of blocks `1..=q` must
/// contribute `-1`. Returns the first failure, if any.
pub fn check_lower_band_blocks(b: &SignMatrix, q: usize) -> Result<Option<BlockViolation>> {
    let order = require_square(b)?;
    if q == 0 || order != q * (q + 1) {
        return Err(Error::WrongOrder {
            expected: q * (q + 1),
            found: order,
        });
    }
    for band in 1..=q {
        for k in 0..q {
            for l in k + 1..q {
                let (ri, rj) = (band * q + k, band * q + l);
                for block in 0..=q {
                    let dot = b.dot_rows_range(ri, rj, block * q..(block + 1) * q)?;
                    let expected = if block == 0 { q as i64 } else { -1 };
                    if dot != expected {
                        return Ok(Some(BlockViolation {
                            band,
                            row_k: k,
                            row_l: l,
                            block,
                            dot,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
