//! Small integer helpers shared by the ring and group code.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `n = p^k` with `p` prime and `k >= 1`; `None` if `n` is not a
/// nontrivial prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Exact `log_p n` when `n` is a power of `p` (including `n = 1`).
pub fn exact_log(p: u64, n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// The largest power of `p` dividing `n`.
pub fn p_part(p: u64, n: u64) -> u64 {
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(p) {
        m /= p;
        part *= p;
    }
    part
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `p^e` as u128 so exponent bounds like `p^{t^2 c - t}` never overflow at
/// desk-scale parameters.
pub fn pow_u128(p: u64, e: u32) -> u128 {
    (p as u128).pow(e)
}

/// The threshold order in the p-nil predicate: 4 for p = 2, p otherwise.
pub fn p_nil_threshold(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

/// Number of Omega steps matching the p-nil threshold: 2 for p = 2, 1 otherwise.
pub fn p_nil_omega_level(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}
