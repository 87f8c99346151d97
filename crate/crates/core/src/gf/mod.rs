//! Arithmetic in GF(q), q = p^k, as Z_p[x] modulo a monic irreducible.
//!
//! A [`FieldSpec`] fixes the representation: the modulus is the first monic
//! irreducible `x^k + c_{k-1}x^{k-1} + ... + c_0` when candidates are ordered
//! by the base-`p` number `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, and elements are enumerated by reading
//! the base-`p` digits of an index little-endian. Both choices are
//! deterministic, so element indices are stable across runs.
//!
//! ```
//! use hadamard_core::gf::FieldSpec;
//!
//! let gf27 = FieldSpec::new(3, 3).unwrap();
//! assert_eq!(gf27.modulus_string(), "x^3 + 2x + 1");
//!
//! let x = gf27.element(3);
//! let x2 = x.mul(&x).unwrap();
//! assert_eq!(x.mul(&x2).unwrap().coeffs(), &[2, 1, 0]);
//! ```

mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
}

/// A finite field context. Cheap to clone; clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl FieldSpec {
    /// GF(p^k) with the default order bound.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_bound(p, k, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u64, k: u32, max_order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let too_large = Error::FieldTooLarge {
            p,
            k,
            bound: max_order,
        };
        let q = p.checked_pow(k).ok_or_else(|| too_large.clone())?;
        if q > max_order {
            return Err(too_large);
        }
        let modulus = poly::smallest_irreducible(p, k as usize);
        Ok(FieldSpec(Arc::new(FieldInner { p, k, q, modulus })))
    }

    /// Builds a field from a parsed `"p"` / `"p^k"` descriptor.
    pub fn from_descriptor(desc: FieldDescriptor) -> Result<Self> {
        Self::new(desc.p, desc.k)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Non-leading coefficients `(c_0, ..., c_{k-1})` of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The modulus as a human-readable polynomial, e.g. `x^3 + 2x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut full = self.0.modulus.clone();
        full.push(1);
        poly_string(&full)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element number `index` of the canonical enumeration.
    ///
    /// Panics if `index >= q`.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(
            index < self.q(),
            "element index {index} out of range for GF({})",
            self.q()
        );
        let p = self.p();
        let mut rest = index;
        let coeffs = (0..self.k())
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect();
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element from little-endian coefficients; each must lie in `[0, p)`.
    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.k() as usize {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.k(),
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.p()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// The element of the prime subfield congruent to `n`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p() as i64) as u64;
        let mut coeffs = vec![0; self.k() as usize];
        coeffs[0] = r;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All `q` elements in canonical order.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.q()).map(|i| self.element(i)).collect()
    }

    fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {}",
            self.p(),
            self.k(),
            self.modulus_string()
        )
    }
}

/// An element of a [`FieldSpec`], stored as `k` little-endian residues mod `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position of this element in [`FieldSpec::enumerate`].
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        self.with_coeffs(coeffs)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let p = self.field.p();
        let k = self.coeffs.len();
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // x^k = -(c_{k-1} x^{k-1} + ... + c_0)
        let modulus = self.field.modulus();
        for d in (k..prod.len()).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            let shift = d - k;
            for (j, &c) in modulus.iter().enumerate() {
                prod[shift + j] = (prod[shift + j] + p - (t * c) % p) % p;
            }
            prod[d] = 0;
        }
        prod.truncate(k);
        Ok(self.with_coeffs(prod))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^(q-2)`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.field.q() - 2))
    }

    /// Quadratic character via Euler's criterion `a^((q-1)/2)`.
    ///
    /// In characteristic 2 every element is a square.
    pub fn quadratic_character(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.field.p() == 2 {
            return 1;
        }
        let e = self.pow((self.field.q() - 1) / 2);
        if e == self.field.one() {
            1
        } else if e == self.field.from_int(-1) {
            -1
        } else {
            unreachable!("Euler's criterion yields +-1 for nonzero elements")
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_string(&self.coeffs))
    }
}

/// Precomputed set of nonzero squares, indexed by element index.
///
/// An independent route to the quadratic character, used where the
/// character is evaluated many times.
#[derive(Debug, Clone)]
pub struct SquareTable {
    field: FieldSpec,
    is_square: Vec<bool>,
}

impl SquareTable {
    pub fn new(field: &FieldSpec) -> Self {
        let mut is_square = vec![false; field.q() as usize];
        for b in field.enumerate().into_iter().skip(1) {
            let sq = b.mul(&b).expect("same field");
            is_square[sq.index() as usize] = true;
        }
        SquareTable {
            field: field.clone(),
            is_square,
        }
    }

    pub fn character(&self, a: &FieldElement) -> Result<i8> {
        if !self.field.same(a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.character_of_index(a.index()))
    }

    pub fn character_of_index(&self, index: u64) -> i8 {
        if index == 0 {
            0
        } else if self.is_square[index as usize] {
            1
        } else {
            -1
        }
    }
}

/// A parsed `"p"` or `"p^k"` field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: u32,
}

impl FieldDescriptor {
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.k)
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadDescriptor(s.to_string());
        let (p, k) = match s.trim().split_once('^') {
            Some((p, k)) => (p, k),
            None => (s.trim(), "1"),
        };
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        if !is_prime(p) || k == 0 {
            return Err(bad());
        }
        Ok(FieldDescriptor { p, k })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

fn poly_string(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| {
            let var = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            if d == 0 {
                c.to_string()
            } else if c == 1 {
                var
            } else {
                format!("{c}{var}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
