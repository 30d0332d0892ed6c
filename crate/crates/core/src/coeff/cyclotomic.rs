//! Arithmetic in `ℚ(ζ_m)` using the power basis `1, ζ, …, ζ^{φ(m)−1}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree
/// first. Results are memoised.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    cache.write().unwrap().insert(m, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    q
}

pub fn phi(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

/// Reduces a polynomial in `ζ` (any length) modulo `Φ_m`.
pub fn reduce(mut v: Vec<BigRational>, m: u32) -> Vec<BigRational> {
    let p = cyclotomic_poly(m);
    let d = p.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = v.len() - d;
        for (j, &c) in p[..d].iter().enumerate() {
            if c != 0 {
                v[base + j] -= &top * BigRational::from_integer(c.into());
            }
        }
    }
    v.resize(d, BigRational::zero());
    v
}

/// Rewrites an element of `ℚ(ζ_m)` in `ℚ(ζ_n)` for `m | n`.
pub fn lift(v: &[BigRational], m: u32, n: u32) -> Vec<BigRational> {
    if m == n {
        return v.to_vec();
    }
    debug_assert_eq!(n % m, 0);
    let step = (n / m) as usize;
    let mut out = vec![BigRational::zero(); (v.len().saturating_sub(1)) * step + 1];
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[j * step] = c.clone();
        }
    }
    reduce(out, n)
}

pub fn mul(a: &[BigRational], b: &[BigRational], m: u32) -> Vec<BigRational> {
    if a.len() == 1 && b.len() == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    reduce(out, m)
}

/// `ζ_m^k` in the power basis.
pub fn root_power(k: u64, m: u32) -> Vec<BigRational> {
    let k = (k % m as u64) as usize;
    let mut v = vec![BigRational::zero(); k + 1];
    v[k] = BigRational::one();
    reduce(v, m)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Inverse of a nonzero element via the extended Euclidean algorithm in
/// `ℚ[x]` against `Φ_m`.
pub fn inverse(a: &[BigRational], m: u32) -> Option<Vec<BigRational>> {
    let p: Vec<BigRational> = cyclotomic_poly(m).iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let mut r0 = trim(p);
    let mut r1 = trim(a.to_vec());
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let qt = poly_mul(&q, &t1);
        let t2 = trim(poly_sub(&t0, &qt));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is a nonzero constant since Φ_m is irreducible.
    if r0.len() != 1 {
        return None;
    }
    let inv_c = r0[0].recip();
    Some(reduce(t0.into_iter().map(|c| c * &inv_c).collect(), m))
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &rem[k + b.len() - 1] / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        q[k] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(q), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi(30), 8);
    }

    #[test]
    fn inverse_round_trip() {
        let m = 12;
        let a: Vec<BigRational> = [3, -1, 2, 5].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let inv = inverse(&a, m).unwrap();
        let one = mul(&a, &inv, m);
        assert!(one[0].is_one() && one[1..].iter().all(|c| c.is_zero()));
    }
}
