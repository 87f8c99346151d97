//! Paley's construction of a Hadamard matrix of order `q + 1` for `q ≡ 3 (mod 4)`.
//!
//! The result is the skew bordered form `H = I + S` with
//!
//! ```text
//!     [  0   j ]
//! S = [ -jᵀ  Q ],   Q[i][j] = χ(a_i - a_j)
//! ```
//!
//! where `a_1, ..., a_q` is the canonical enumeration of GF(q). The zero
//! diagonal of `Q` is never stored; the `+1` of `I` is written in its place.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, SquareTable};
use crate::hmat::{Sign, SignMatrix};

pub fn paley_hadamard(field: &FieldSpec) -> Result<SignMatrix> {
    let q = field.q();
    if q % 4 != 3 {
        return Err(Error::UnsupportedOrder(q));
    }
    let squares = SquareTable::new(field);
    let elements = field.enumerate();
    let n = q as usize + 1;
    SignMatrix::from_fn(n, n, |i, j| {
        if i == 0 || i == j {
            Sign::Plus
        } else if j == 0 {
            Sign::Minus
        } else {
            let diff = elements[i - 1].sub(&elements[j - 1]).expect("same field");
            match squares.character_of_index(diff.index()) {
                1 => Sign::Plus,
                _ => Sign::Minus,
            }
        }
    })
}
