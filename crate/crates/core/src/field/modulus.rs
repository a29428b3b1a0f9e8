//! Dense polynomials over the prime field F_p, used only to validate and
//! pick the defining modulus and to build the lookup tables.

pub(crate) type FpPoly = Vec<u32>;

fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let mut r: FpPoly = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] as u64 * lead_inv % p64;
        for (i, &bi) in b.iter().enumerate() {
            let sub = factor * bi as u64 % p64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    let mut out: FpPoly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> FpPoly {
    rem(&mul(a, b, p), f, p)
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

/// Ben-Or test: a monic `f` of degree m is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for every 1 <= i <= m/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=m / 2 {
        h = pow_mod(&h, p as u64, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        if gcd(&diff, f, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `m`, comparing the
/// coefficient lists c0, c1, ..., c_{m-1} from the constant term upward.
pub(crate) fn default_modulus(p: u32, m: u32) -> FpPoly {
    let m = m as usize;
    let total = (p as u64).pow(m as u32);
    // c0 = 0 makes x a factor once m > 1
    let start = if m > 1 { total / p as u64 } else { 0 };
    for idx in start..total {
        let mut f = vec![0u32; m + 1];
        f[m] = 1;
        let mut rest = idx;
        for j in (0..m).rev() {
            f[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}
