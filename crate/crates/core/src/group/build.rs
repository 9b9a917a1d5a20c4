use std::collections::{BTreeSet, HashMap};

use super::FiniteGroup;
use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};

/// Largest group a permutation generating set may expand to.
pub const MAX_PERMUTATION_GROUP: usize = 4096;

/// Specs of one representative of every isomorphism class of groups of
/// order at most 16.
pub const GROUPS_UP_TO_16: &[&str] = &[
    "c1",
    "c2",
    "c3",
    "c4",
    "c2xc2",
    "c5",
    "c6",
    "s3",
    "c7",
    "c8",
    "c4xc2",
    "c2xc2xc2",
    "d8",
    "q8",
    "c9",
    "c3xc3",
    "c10",
    "d10",
    "c11",
    "c12",
    "c6xc2",
    "d12",
    "a4",
    "dic12",
    "c13",
    "c14",
    "d14",
    "c15",
    "c16",
    "c8xc2",
    "c4xc4",
    "c4xc2xc2",
    "c2xc2xc2xc2",
    "d16",
    "q16",
    "sd16",
    "m16",
    "c4:c4",
    "g16_3",
    "q8xc2",
    "d8xc2",
    "pauli16",
];

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::arg("cyclic group of order 0"));
    }
    FiniteGroup::from_fn(n, 0, |a, b| (a + b) % n)
}

/// `G x H` with `(g, h)` at index `g |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    FiniteGroup::from_fn(g.order() * m, g.identity() * m + h.identity(), |a, b| {
        g.op(a / m, b / m) * m + h.op(a % m, b % m)
    })
    .expect("direct product of groups")
}

/// `<x, y | x^m, y^n = x^t, y x y^-1 = x^k>` with `x^a y^b` at index `a + m b`.
pub fn metacyclic(m: usize, n: usize, k: usize, t: usize) -> Result<FiniteGroup> {
    if m == 0 || n == 0 {
        return Err(Error::arg("metacyclic parameters must be positive"));
    }
    let (k, t) = (k % m, t % m);
    let mut kpow = vec![1usize % m; n];
    for b in 1..n {
        kpow[b] = kpow[b - 1] * k % m;
    }
    if kpow[n - 1] * k % m != 1 % m || (k * t) % m != t {
        return Err(Error::arg(format!(
            "inconsistent metacyclic parameters ({m},{n},{k},{t})"
        )));
    }
    FiniteGroup::from_fn(m * n, 0, |x, y| {
        let (a, b) = (x % m, x / m);
        let (c, d) = (y % m, y / m);
        let wrap = if b + d >= n { t } else { 0 };
        (a + c * kpow[b] + wrap) % m + m * ((b + d) % n)
    })
}

/// Dihedral group of order `n`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::arg(format!("dihedral order {n} must be even")));
    }
    let m = n / 2;
    metacyclic(m, 2, m.saturating_sub(1), 0)
}

/// Generalized quaternion group of order `n = 2^k >= 8`.
pub fn quaternion(n: usize) -> Result<FiniteGroup> {
    require_two_power(n, 8, "quaternion")?;
    let m = n / 2;
    metacyclic(m, 2, m - 1, m / 2)
}

/// Semidihedral group of order `n = 2^k >= 16`.
pub fn semidihedral(n: usize) -> Result<FiniteGroup> {
    require_two_power(n, 16, "semidihedral")?;
    let m = n / 2;
    metacyclic(m, 2, m / 2 - 1, 0)
}

/// `M(p^n) = <x, y | x^{p^{n-1}}, y^p, y x y^-1 = x^{1+p^{n-2}}>`, `n >= 3`.
pub fn modular(order: usize) -> Result<FiniteGroup> {
    let (p, n) = prime_power(order as u64).ok_or_else(|| Error::arg(format!("{order} is not a prime power")))?;
    if n < 3 || (p == 2 && n < 4) {
        return Err(Error::arg(format!(
            "modular group needs order p^n with n >= 3 (n >= 4 for p = 2), got {order}"
        )));
    }
    let p = p as usize;
    let m = order / p;
    metacyclic(m, p, 1 + m / p, 0)
}

/// Heisenberg group of unitriangular 3x3 matrices over `F_p`; `(a, b, c)` is
/// at index `a + p b + p^2 c` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn extraspecial_exponent_p(p: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::arg(format!("{p} is not prime")));
    }
    let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
    FiniteGroup::from_fn(p * p * p, 0, |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    })
}

/// `N x| C_n` where the generator of `C_n` acts by `y a y^-1 = phi(a)`;
/// `(a, b)` is at index `a + |N| b`.
pub fn semidirect_by_automorphism(base: &FiniteGroup, phi: &[usize], n: usize) -> Result<FiniteGroup> {
    let size = base.order();
    if phi.len() != size || n == 0 {
        return Err(Error::arg("automorphism image vector has the wrong length"));
    }
    let mut powers = vec![(0..size).collect::<Vec<_>>()];
    for b in 1..=n {
        let prev: &Vec<usize> = &powers[b - 1];
        powers.push(prev.iter().map(|&x| phi[x]).collect());
    }
    if powers[n] != powers[0] {
        return Err(Error::arg("automorphism order does not divide the acting cyclic order"));
    }
    for a in 0..size {
        for c in 0..size {
            if phi[base.op(a, c)] != base.op(phi[a], phi[c]) {
                return Err(Error::arg("image vector is not a homomorphism"));
            }
        }
    }
    FiniteGroup::from_fn(size * n, base.identity(), |x, y| {
        let (a, b) = (x % size, x / size);
        let (c, d) = (y % size, y / size);
        base.op(a, powers[b][c]) + size * ((b + d) % n)
    })
}

/// Expands permutations of `0..degree` into a Cayley table. Elements are
/// sorted lexicographically (the identity first); `a * b` applies `a` first.
pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
    for g in gens {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidGroup(format!("not a permutation of 0..{degree}: {g:?}")));
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if found.insert(y.clone()) {
                if found.len() > MAX_PERMUTATION_GROUP {
                    return Err(Error::BudgetExceeded {
                        what: "permutation group order",
                        count: found.len() as u128,
                        bound: MAX_PERMUTATION_GROUP as u128,
                    });
                }
                frontier.push(y);
            }
        }
    }
    let elems: Vec<Vec<usize>> = found.into_iter().collect();
    let pos: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(k, e)| (e, k)).collect();
    FiniteGroup::from_fn(elems.len(), 0, |a, b| {
        let prod: Vec<usize> = elems[a].iter().map(|&i| elems[b][i]).collect();
        pos[&prod]
    })
}

fn require_two_power(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || !n.is_power_of_two() {
        return Err(Error::arg(format!(
            "{what} order must be a power of 2 at least {min}, got {n}"
        )));
    }
    Ok(())
}

fn num(s: &str, spec: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad number in group spec {spec:?}")))
}

fn factor(s: &str, spec: &str) -> Result<FiniteGroup> {
    match s {
        "es27" => return extraspecial_exponent_p(3),
        "a4" => return from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        "s3" => return dihedral(6),
        "dic12" => return metacyclic(3, 4, 2, 0),
        "c4:c4" => return metacyclic(4, 4, 3, 0),
        "g16_3" => {
            let n = direct_product(&cyclic(4)?, &cyclic(2)?);
            // (x, y) -> (x, x + y)
            let phi: Vec<usize> = (0..8).map(|i| (i / 2) * 2 + (i / 2 + i % 2) % 2).collect();
            return semidirect_by_automorphism(&n, &phi, 2);
        }
        "pauli16" => {
            let n = direct_product(&cyclic(4)?, &cyclic(2)?);
            // (x, y) -> (x + 2y, y)
            let phi: Vec<usize> = (0..8).map(|i| ((i / 2 + 2 * (i % 2)) % 4) * 2 + i % 2).collect();
            return semidirect_by_automorphism(&n, &phi, 2);
        }
        _ => {}
    }
    if let Some(p) = s.strip_prefix("es_p3_") {
        return extraspecial_exponent_p(num(p, spec)?);
    }
    if let Some(n) = s.strip_prefix("sd") {
        return semidihedral(num(n, spec)?);
    }
    let (head, tail) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
    match head {
        "c" => cyclic(num(tail, spec)?),
        "d" => dihedral(num(tail, spec)?),
        "q" => quaternion(num(tail, spec)?),
        "m" => modular(num(tail, spec)?),
        _ => Err(Error::Parse(format!("unknown group {s:?} in spec {spec:?}"))),
    }
}

/// Named groups, joined by `x` for direct products: `c{n}`, `d{n}` (order n),
/// `q{2^k}`, `sd{2^k}`, `m{p^n}`, `es27`, `es_p3_{p}`, `s3`, `a4`, `dic12`,
/// `c4:c4`, `g16_3`, `pauli16`.
pub fn builtin_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let mut parts = spec.split('x');
    let first = factor(parts.next().unwrap_or(""), spec)?;
    parts.try_fold(first, |acc, s| Ok(direct_product(&acc, &factor(s, spec)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_histogram(g: &FiniteGroup) -> Vec<usize> {
        let mut h = vec![0; g.order() + 1];
        for x in 0..g.order() {
            h[g.element_order(x) as usize] += 1;
        }
        h
    }

    #[test]
    fn named_groups() {
        assert_eq!(builtin_group("c1").unwrap().order(), 1);
        let q8 = builtin_group("q8").unwrap();
        assert_eq!((q8.order(), q8.exponent(), q8.nilpotency_class()), (8, 4, Some(2)));
        let es = builtin_group("es27").unwrap();
        assert_eq!((es.order(), es.exponent(), es.nilpotency_class()), (27, 3, Some(2)));
        let m = builtin_group("m27").unwrap();
        assert_eq!((m.exponent(), m.center().order()), (9, 3));
        assert_eq!(builtin_group("sd16").unwrap().exponent(), 8);
        assert_eq!(builtin_group("es_p3_5").unwrap().exponent(), 5);
        assert!(builtin_group("bogus").is_err());
        assert!(builtin_group("q12").is_err());
        assert!(builtin_group("d7").is_err());
    }

    #[test]
    fn small_groups_are_distinct() {
        let mut seen = std::collections::BTreeMap::new();
        for spec in GROUPS_UP_TO_16 {
            let g = builtin_group(spec).unwrap();
            let key = (
                g.order(),
                g.is_abelian(),
                g.center().order(),
                g.commutator_subgroup().order(),
                order_histogram(&g),
                g.omega_subgroup(1).order(),
                g.agemo(1).order(),
            );
            assert!(seen.insert(key, spec).is_none(), "{spec} duplicates another entry");
        }
        assert_eq!(seen.len(), 42);
    }

    #[test]
    fn permutation_groups() {
        let a4 = builtin_group("a4").unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.center().order(), 1);
        let s3 = from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(from_permutation_generators(3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn semidirect_checks_its_input() {
        let n = cyclic(4).unwrap();
        assert!(semidirect_by_automorphism(&n, &[0, 2, 0, 2], 2).is_err());
        assert_eq!(
            semidirect_by_automorphism(&n, &[0, 3, 2, 1], 2).unwrap(),
            dihedral(8).unwrap()
        );
        assert!(metacyclic(4, 2, 2, 0).is_err());
    }
}
