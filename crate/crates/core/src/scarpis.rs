//! Extension of a Hadamard matrix of order `n = q + 1` to one of order `q·n`,
//! for any prime power `q ≡ 3 (mod 4)`.
//!
//! Given a labeling `α: {1..q} → GF(q)` and the normalized input `A` with
//! core `C` (rows `c_1..c_q`, and `c(α_t) = c_t`), the output `B` is split
//! into `n` bands of `q` rows:
//!
//! * band 0 is `A' ⊗ j`, where `A'` is `A` without its first row and `j`
//!   the all-ones row of length `q`;
//! * band `r >= 1` is `[ jᵀ ⊗ c_r | B_{r,1} | ... | B_{r,q} ]`, where row
//!   `k` of the `q x q` block `B_{r,i}` is `c(α_i·α_r + α_k)`.
//!
//! Each `B_{r,i}` is a row permutation of `C`, so the whole assembly is
//! packed-row copies.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::hmat::{Sign, SignMatrix};
use crate::verify::check_hadamard;

/// A bijection `{1, ..., q} → GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    field: FieldSpec,
    map: Vec<FieldElement>,
    /// `position_of[e.index()]` is the 0-based label position of `e`.
    position_of: Vec<usize>,
}

impl Labeling {
    /// Validates that `map` lists every element of `field` exactly once;
    /// `map[t - 1]` is `α_t`.
    pub fn new(field: &FieldSpec, map: Vec<FieldElement>) -> Result<Self> {
        let q = field.q() as usize;
        if map.len() != q {
            return Err(Error::BadLabeling(format!(
                "{} labels for a field of order {q}",
                map.len()
            )));
        }
        let mut position_of = vec![usize::MAX; q];
        for (t, e) in map.iter().enumerate() {
            if e.field() != field {
                return Err(Error::FieldMismatch);
            }
            let slot = &mut position_of[e.index() as usize];
            if *slot != usize::MAX {
                return Err(Error::BadLabeling(format!("{e} appears twice")));
            }
            *slot = t;
        }
        Ok(Labeling {
            field: field.clone(),
            map,
            position_of,
        })
    }

    /// `α_t` is element `t - 1` of the canonical enumeration, so `α_1 = 0`.
    pub fn canonical(field: &FieldSpec) -> Self {
        Self::new(field, field.enumerate()).expect("enumeration is a bijection")
    }

    /// A seeded pseudorandom shuffle of the canonical enumeration.
    pub fn shuffled(field: &FieldSpec, seed: u64) -> Self {
        let mut map = field.enumerate();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        map.shuffle(&mut rng);
        Self::new(field, map).expect("a shuffle is a bijection")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.map.len()
    }

    /// `α_t` for `t` in `1..=q`.
    pub fn alpha(&self, t: usize) -> Result<&FieldElement> {
        if t == 0 || t > self.q() {
            return Err(Error::RowOutOfRange {
                index: t,
                len: self.q(),
            });
        }
        Ok(&self.map[t - 1])
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.map
    }

    /// The `t` in `1..=q` with `α_t = e`.
    pub fn label_of(&self, e: &FieldElement) -> Result<usize> {
        if e.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.position_of[e.index() as usize] + 1)
    }

    /// Canonical element indices in label order, for provenance records.
    pub fn element_indices(&self) -> Vec<u64> {
        self.map.iter().map(FieldElement::index).collect()
    }
}

/// Row `k` (1-based) of `B_{r,i}` is row `perm[k-1]` (1-based) of the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPermutation {
    perm: Vec<usize>,
}

impl RowPermutation {
    pub fn entries(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_permutation(&self) -> bool {
        let mut sorted = self.perm.clone();
        sorted.sort_unstable();
        sorted.into_iter().eq(1..=self.perm.len())
    }

    /// `P · core`: row `k` of the result is row `perm[k]` of `core`.
    pub fn apply(&self, core: &SignMatrix) -> Result<SignMatrix> {
        let zero_based: Vec<usize> = self.perm.iter().map(|&t| t - 1).collect();
        core.permute_rows(&zero_based)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    q: usize,
    labeling: Labeling,
}

impl ConstructionParams {
    pub fn new(labeling: Labeling) -> Result<Self> {
        let q = labeling.field().q();
        if q % 4 != 3 {
            return Err(Error::UnsupportedOrder(q));
        }
        Ok(ConstructionParams {
            q: q as usize,
            labeling,
        })
    }

    pub fn canonical(field: &FieldSpec) -> Result<Self> {
        Self::new(Labeling::canonical(field))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Order of the input matrix, `q + 1`.
    pub fn n(&self) -> usize {
        self.q + 1
    }

    pub fn field(&self) -> &FieldSpec {
        self.labeling.field()
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    fn check_label(&self, t: usize) -> Result<()> {
        if (1..=self.q).contains(&t) {
            Ok(())
        } else {
            Err(Error::RowOutOfRange {
                index: t,
                len: self.q,
            })
        }
    }

    /// The permutation behind block `B_{r,i}`: `k ↦ α⁻¹(α_i·α_r + α_k)`.
    pub fn row_permutation(&self, r: usize, i: usize) -> Result<RowPermutation> {
        self.check_label(r)?;
        self.check_label(i)?;
        let shift = self.labeling.alpha(i)?.mul(self.labeling.alpha(r)?)?;
        let perm = self
            .labeling
            .elements()
            .iter()
            .map(|ak| self.labeling.label_of(&shift.add(ak)?))
            .collect::<Result<_>>()?;
        Ok(RowPermutation { perm })
    }

    /// Every `i` in `1..=q` with `α_i·α_r + α_k = α_i·α_s + α_l`.
    ///
    /// For `r != s` there is exactly one, `α_i = (α_l - α_k)(α_r - α_s)⁻¹`.
    pub fn colliding_blocks(&self, r: usize, s: usize, k: usize, l: usize) -> Result<Vec<usize>> {
        for t in [r, s, k, l] {
            self.check_label(t)?;
        }
        let lab = &self.labeling;
        let (ar, as_, ak, al) = (lab.alpha(r)?, lab.alpha(s)?, lab.alpha(k)?, lab.alpha(l)?);
        let mut hits = Vec::new();
        for (t, ai) in lab.elements().iter().enumerate() {
            if ai.mul(ar)?.add(ak)? == ai.mul(as_)?.add(al)? {
                hits.push(t + 1);
            }
        }
        Ok(hits)
    }
}

/// Builds the Hadamard matrix of order `q(q+1)` from `a` of order `q+1`.
///
/// `a` is checked to be Hadamard first and is normalized here regardless
/// of its current form.
pub fn scarpis_extend(a: &SignMatrix, params: &ConstructionParams) -> Result<SignMatrix> {
    let q = params.q();
    let n = params.n();
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != n {
        return Err(Error::WrongOrder {
            expected: n,
            found: a.rows(),
        });
    }
    if let Some(v) = check_hadamard(a)?.first_violation {
        return Err(Error::NotHadamard(v));
    }

    let a = a.normalize()?;
    let core = a.core()?;
    let mut b = SignMatrix::filled(q * n, q * n, Sign::Minus)?;

    // band 0: A' ⊗ j
    for k in 0..q {
        for col in 0..n {
            b.fill_segment(k, col * q, q, a.entry(k + 1, col)?)?;
        }
    }

    for r in 1..=q {
        let band = r * q;
        for k in 0..q {
            b.copy_segment(band + k, 0, &core, r - 1, 0, q, false)?;
        }
        for i in 1..=q {
            let perm = params.row_permutation(r, i)?;
            for (k, &t) in perm.entries().iter().enumerate() {
                b.copy_segment(band + k, i * q, &core, t - 1, 0, q, false)?;
            }
        }
    }
    Ok(b)
}
