//! Small shared integer helpers (trial-division factorization, divisors).

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs, ascending.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n >= 1`, ascending.
pub(crate) fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, e) in factor_u64(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}
