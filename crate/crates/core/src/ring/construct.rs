use super::{AdditiveSubgroup, AdditiveType, FiniteRing};
use crate::abelian::CyclicDecomposition;
use crate::arith::{p_nil_threshold, prime_power};
use crate::error::{Error, Result};

/// A ring re-based on the canonical decomposition of `R^+ / I`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: FiniteRing,
    /// Index in `ring` of the coset of each element of the parent.
    pub projection: Vec<usize>,
}

/// A subring re-based on its own canonical decomposition.
#[derive(Clone, Debug)]
pub struct Subring {
    pub ring: FiniteRing,
    /// Parent index of each element of `ring`.
    pub embedding: Vec<usize>,
}

/// Two-sided ideal test: additive subgroup closed under multiplication by
/// basis elements on both sides.
pub fn is_ideal(r: &FiniteRing, set: &AdditiveSubgroup) -> bool {
    if !set.contains(r.index(&r.zero())) {
        return false;
    }
    let basis: Vec<usize> = (0..r.dim()).map(|i| r.index(&r.basis_element(i))).collect();
    set.elements().iter().all(|&x| {
        set.elements().iter().all(|&y| set.contains(r.add_idx(x, y)))
            && basis
                .iter()
                .all(|&b| set.contains(r.mul_idx(x, b)) && set.contains(r.mul_idx(b, x)))
    })
}

pub fn quotient_ring(r: &FiniteRing, ideal: &AdditiveSubgroup) -> Result<QuotientRing> {
    if !is_ideal(r, ideal) {
        return Err(Error::arg("quotient requires a two-sided ideal"));
    }
    let n = r.order();
    // least-index coset representatives
    let mut rep = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if rep[x] != usize::MAX {
            continue;
        }
        for &i in ideal.elements() {
            rep[r.add_idx(x, i)] = x;
        }
        reps.push(x);
    }
    let slot: std::collections::HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let q = reps.len();
    let coset = |x: usize| slot[&rep[x]];
    let add = |a: usize, b: usize| coset(r.add_idx(reps[a], reps[b]));
    let zero = coset(r.index(&r.zero()));
    let dec = CyclicDecomposition::new(q, zero, r.p(), add)?;
    let ring = rebase(r, &dec, |a, b| coset(r.mul_idx(reps[a], reps[b])))?;
    let projection = (0..n)
        .map(|x| ring.index(&super::RingElement::new(dec.coords(coset(x)).to_vec())))
        .collect();
    Ok(QuotientRing { ring, projection })
}

/// Structure constants of a decomposed ring whose elements are ids `0..n`.
fn rebase(r: &FiniteRing, dec: &CyclicDecomposition, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteRing> {
    let atype = AdditiveType::new(r.p(), dec.exps().to_vec())?;
    let basis = dec.basis();
    let tensor = basis
        .iter()
        .map(|&bi| basis.iter().map(|&bj| dec.coords(mul(bi, bj)).to_vec()).collect())
        .collect();
    FiniteRing::new(atype, tensor)
}

/// The subring on an additive subgroup closed under multiplication.
pub fn subring(r: &FiniteRing, set: &AdditiveSubgroup) -> Result<Subring> {
    let members = set.elements();
    let pos: std::collections::HashMap<usize, usize> = members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let lookup = |x: usize| -> Result<usize> {
        pos.get(&x)
            .copied()
            .ok_or_else(|| Error::arg("subset is not closed under the ring operations"))
    };
    for &x in members {
        for &y in members {
            lookup(r.add_idx(x, y))?;
            lookup(r.mul_idx(x, y))?;
        }
    }
    let zero = lookup(r.index(&r.zero()))?;
    let add = |a: usize, b: usize| pos[&r.add_idx(members[a], members[b])];
    let dec = CyclicDecomposition::new(members.len(), zero, r.p(), add)?;
    let ring = rebase(r, &dec, |a, b| pos[&r.mul_idx(members[a], members[b])])?;
    let mut embedding = vec![0; members.len()];
    for (k, &x) in members.iter().enumerate() {
        embedding[ring.index(&super::RingElement::new(dec.coords(k).to_vec()))] = x;
    }
    Ok(Subring { ring, embedding })
}

/// `pR` (`4R` when p = 2).
pub fn subring_p_r(r: &FiniteRing) -> Subring {
    let k = p_nil_threshold(r.p());
    let mut images: Vec<usize> = r.elements().map(|x| r.index(&r.scale(k, &x))).collect();
    images.sort_unstable();
    images.dedup();
    subring(r, &AdditiveSubgroup::from_sorted(images)).expect("pR is an ideal")
}

fn cyclic_with_identity(n: u64) -> Result<FiniteRing> {
    let (p, e) = prime_power(n).ok_or_else(|| Error::Parse(format!("{n} is not a prime power")))?;
    FiniteRing::new(AdditiveType::new(p, vec![e])?, vec![vec![vec![1 % n]]])
}

fn matrix_units(p: u64, units: &[(usize, usize)]) -> Result<FiniteRing> {
    // basis e_{ab} for the listed positions; e_{ab} e_{cd} = [b == c] e_{ad}
    let d = units.len();
    let mut tensor = vec![vec![vec![0; d]; d]; d];
    for (i, &(a, b)) in units.iter().enumerate() {
        for (j, &(c, e)) in units.iter().enumerate() {
            if b == c {
                if let Some(k) = units.iter().position(|&u| u == (a, e)) {
                    tensor[i][j][k] = 1;
                }
            }
        }
    }
    FiniteRing::new(AdditiveType::new(p, vec![1; d])?, tensor)
}

fn parse_num(s: &str, spec: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad number in ring spec {spec:?}")))
}

/// Named rings:
///
/// * `z{n}`: `Z/nZ` with identity, `n` a prime power
/// * `{k}z{n}`: the subring `kZ/nZ` (e.g. `3z27`)
/// * `pR:{spec}`: the subring `pR` (`4R` for p = 2) of another named ring
/// * `zero{n1}x{n2}...`: zero multiplication on `Z_{n1} + Z_{n2} + ...`; `zero1` is the ring of order 1 (p = 2)
/// * `t2_{p}`: upper triangular 2x2 matrices over `F_p`
/// * `ut3_{p}`: strictly upper triangular 3x3 matrices over `F_p`
pub fn builtin_ring(spec: &str) -> Result<FiniteRing> {
    let s = spec.trim();
    if let Some(inner) = s.strip_prefix("pR:") {
        return Ok(subring_p_r(&builtin_ring(inner)?).ring);
    }
    if let Some(rest) = s.strip_prefix("zero") {
        if rest == "1" {
            return Ok(FiniteRing::zero_ring(AdditiveType::new(2, vec![])?));
        }
        let mut p = None;
        let mut exps = Vec::new();
        for part in rest.split('x') {
            let n = parse_num(part, spec)?;
            let (q, e) = prime_power(n).ok_or_else(|| Error::Parse(format!("{n} is not a prime power")))?;
            if p.is_some_and(|p| p != q) {
                return Err(Error::Parse(format!("mixed primes in {spec:?}")));
            }
            p = Some(q);
            exps.push(e);
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        return Ok(FiniteRing::zero_ring(AdditiveType::new(p.unwrap(), exps)?));
    }
    if let Some(p) = s.strip_prefix("t2_") {
        return matrix_units(parse_num(p, spec)?, &[(0, 0), (0, 1), (1, 1)]);
    }
    if let Some(p) = s.strip_prefix("ut3_") {
        return matrix_units(parse_num(p, spec)?, &[(0, 1), (0, 2), (1, 2)]);
    }
    if let Some((k, n)) = s.split_once('z') {
        let n = parse_num(n, spec)?;
        let whole = cyclic_with_identity(n)?;
        if k.is_empty() {
            return Ok(whole);
        }
        let k = parse_num(k, spec)?;
        let gen = whole.index(&whole.scale(k, &whole.basis_element(0)));
        return Ok(subring(&whole, &whole.additive_span(&[gen]))?.ring);
    }
    Err(Error::Parse(format!("unknown ring spec {spec:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingElement;

    #[test]
    fn quotient_examples() {
        let r = builtin_ring("3z27").unwrap();
        let q = quotient_ring(&r, &r.whole()).unwrap();
        assert_eq!(q.ring.order(), 1);

        let q = quotient_ring(&r, &r.omega_additive(1)).unwrap();
        assert_eq!(q.ring.order(), 3);
        assert_eq!(q.ring.nilpotency_class(), Some(1));

        let z4 = builtin_ring("z4").unwrap();
        let ideal = z4.additive_span(&[2]);
        let q = quotient_ring(&z4, &ideal).unwrap();
        assert_eq!(q.ring.order(), 2);
        let one = RingElement::new(vec![1]);
        assert_eq!(q.ring.mul(&one, &one), one);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        // {0, b} in the zero ring on Z_2 + Z_2 is an ideal; in t2_2 the span of e11 is not
        let t = builtin_ring("t2_2").unwrap();
        let e11 = t.index(&t.basis_element(0));
        assert!(quotient_ring(&t, &t.additive_span(&[e11])).is_err());
    }

    #[test]
    fn p_r_examples() {
        let s = subring_p_r(&builtin_ring("z9").unwrap());
        assert_eq!(s.ring.order(), 3);
        assert_eq!(s.ring.nilpotency_class(), Some(1));
        let s = subring_p_r(&builtin_ring("zero3").unwrap());
        assert_eq!(s.ring.order(), 1);
        let s = subring_p_r(&builtin_ring("z16").unwrap());
        assert_eq!(s.ring.order(), 4);
        assert_eq!(s.ring.atype().exps(), &[2]);
        assert_eq!(s.embedding, vec![0, 4, 8, 12]);
        assert!(s.ring.is_p_nil());
    }

    #[test]
    fn named_rings() {
        let r = builtin_ring("3z27").unwrap();
        assert_eq!(r.atype().exps(), &[2]);
        assert_eq!(r.tensor()[0][0], vec![3]);
        assert_eq!(builtin_ring("pR:z27").unwrap(), r);
        assert_eq!(builtin_ring("zero9x3").unwrap().atype().exps(), &[2, 1]);
        assert_eq!(builtin_ring("ut3_3").unwrap().nilpotency_class(), Some(2));
        assert_eq!(builtin_ring("t2_2").unwrap().nilpotency_class(), None);
        assert_eq!(builtin_ring("zero1").unwrap().order(), 1);
        assert!(builtin_ring("bogus").is_err());
        assert!(builtin_ring("z12").is_err());
    }
}
