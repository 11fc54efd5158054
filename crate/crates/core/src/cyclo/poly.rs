//! Cyclotomic polynomials and the reduction/descent steps behind canonical forms.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::numtheory::{divisors, factorize, mod_inverse};

/// Φ_n as a monic integer polynomial. Only the terms below the leading
/// monomial `x^degree` are stored, sparsely.
#[derive(Debug)]
pub(crate) struct CycloPoly {
    pub degree: usize,
    pub lower: Vec<(usize, BigInt)>,
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<CycloPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Dense coefficients of Φ_n, lowest degree first.
fn dense(poly: &CycloPoly) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.degree + 1];
    out[poly.degree] = BigInt::from(1);
    for (d, c) in &poly.lower {
        out[*d] = c.clone();
    }
    out
}

/// Returns Φ_n, computing it as (x^n - 1) / prod_{d | n, d < n} Φ_d.
pub(crate) fn cyclotomic_poly(n: u64) -> Arc<CycloPoly> {
    assert!(n >= 1);
    if let Some(p) = cache().read().expect("poisoned cache").get(&n) {
        return p.clone();
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = dense(&cyclotomic_poly(d));
        num = divide_monic(&num, &div);
    }
    let degree = num.len() - 1;
    let lower = num[..degree]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let poly = Arc::new(CycloPoly { degree, lower });
    cache()
        .write()
        .expect("poisoned cache")
        .entry(n)
        .or_insert(poly)
        .clone()
}

/// Exact quotient of `num` by the monic `div`; the remainder must vanish.
fn divide_monic(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    let db = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - db;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = std::mem::take(&mut rem[i + db]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in div[..db].iter().enumerate() {
            if !dj.is_zero() {
                rem[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    debug_assert!(rem[..db].iter().all(Zero::is_zero));
    q
}

/// Reduces a dense coefficient vector indexed by exponents mod `n` modulo Φ_n.
/// The result has length deg Φ_n.
pub(crate) fn reduce_dense(n: u64, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let poly = cyclotomic_poly(n);
    let phi = poly.degree;
    for i in (phi..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[i], BigRational::zero());
        for (j, a) in &poly.lower {
            let t = &c * BigRational::from_integer(a.clone());
            coeffs[i - phi + j] -= t;
        }
    }
    coeffs.truncate(phi);
    coeffs.resize(phi, BigRational::zero());
    coeffs
}

/// Rewrites a canonical vector in Q(ζ_n) over the smallest cyclotomic field
/// containing it. Returns the new conductor and its canonical vector.
pub(crate) fn minimize_conductor(mut n: u64, mut v: Vec<BigRational>) -> (u64, Vec<BigRational>) {
    'outer: loop {
        if n == 1 {
            return (n, v);
        }
        for (p, e) in factorize(n) {
            let m = n / p;
            if e >= 2 {
                // Over Q(ζ_m) the basis is 1, ζ_n, ..., ζ_n^(p-1); canonical
                // exponents stay below p·φ(m), so membership means every
                // exponent is a multiple of p.
                if v.iter().enumerate().all(|(k, c)| c.is_zero() || (k as u64).is_multiple_of(p)) {
                    let phi_m = v.len() / p as usize;
                    let mut w = vec![BigRational::zero(); phi_m];
                    for (k, c) in v.into_iter().enumerate() {
                        if !c.is_zero() {
                            w[k / p as usize] = c;
                        }
                    }
                    n = m;
                    v = w;
                    continue 'outer;
                }
            } else {
                // ζ_n^k = ζ_m^(uk) ζ_p^(wk). If v lies in Q(ζ_m), writing
                // v = Σ_b ζ_p^b B_b forces v = B_0 - B_1.
                let u = mod_inverse(p % m.max(1), m).unwrap_or(0);
                let w = mod_inverse(m % p, p).expect("coprime");
                let mut cand = vec![BigRational::zero(); m as usize];
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = k as u64;
                    let b = (w * k) % p;
                    let idx = ((u * k) % m) as usize;
                    if b == 0 {
                        cand[idx] += c;
                    } else if b == 1 {
                        cand[idx] -= c;
                    }
                }
                let cand = reduce_dense(m, cand);
                if p == 2 || lift(&cand, m, n) == v {
                    n = m;
                    v = cand;
                    continue 'outer;
                }
            }
        }
        return (n, v);
    }
}

/// Embeds a canonical vector of Q(ζ_m) into Q(ζ_n), `m | n`, canonically.
fn lift(v: &[BigRational], m: u64, n: u64) -> Vec<BigRational> {
    let step = (n / m) as usize;
    let mut dense = vec![BigRational::zero(); n as usize];
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            dense[(k * step) % n as usize] += c;
        }
    }
    reduce_dense(n, dense)
}
