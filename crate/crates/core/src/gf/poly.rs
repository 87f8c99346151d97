//! Dense polynomial helpers over Z_p, little-endian coefficient vectors.
//!
//! Only what modulus selection needs: remainder by a monic divisor and the
//! trial-division irreducibility test.

/// Remainder of `f` divided by the monic polynomial `g` (both little-endian, `g` including its leading 1).
pub(crate) fn rem_monic(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() <= dg {
        return r;
    }
    for d in (dg..r.len()).rev() {
        let t = r[d];
        if t == 0 {
            continue;
        }
        let shift = d - dg;
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (t * gj) % p) % p;
        }
        debug_assert_eq!(r[d], 0);
    }
    r.truncate(dg);
    r
}

/// Monic polynomial of degree `deg` whose non-leading coefficients are the
/// base-`p` digits of `index`, little-endian.
fn monic_from_index(mut index: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut g = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        g.push(index % p);
        index /= p;
    }
    g.push(1);
    g
}

/// Trial division of the monic `f` by every monic polynomial of degree `1..=deg(f)/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for deg in 1..=k / 2 {
        let count = p.pow(deg as u32);
        for index in 0..count {
            let g = monic_from_index(index, deg, p);
            if rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `k`, ordering candidates by the
/// base-`p` number `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
///
/// Returns the `k` non-leading coefficients.
pub(crate) fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for t in 0..count {
        let mut f = monic_from_index(t, k, p);
        if is_irreducible(&f, p) {
            f.pop();
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}
