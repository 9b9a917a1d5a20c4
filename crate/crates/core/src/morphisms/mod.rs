//! Homomorphisms, derivations, their rings, endomorphism monoids and
//! automorphism groups.

mod aut;
mod laue;
mod rings;

pub use aut::{aut_group, AutGroup, DEFAULT_AUT_BOUND, DEFAULT_AUT_COUNT_BOUND};
pub use laue::{
    aut_n, check_laue, end_monoid, laue_derivation, laue_endomorphism, EndoMonoid, LaueMode, EXHAUSTIVE_LAUE_BOUND,
};
pub use rings::{
    der_ring, der_subring_trivial_on_omega, hom_ring, omega_of_module, MapRing, TableRing, TABLE_RING_MAX,
};

use rayon::prelude::*;

use crate::abelian::CyclicDecomposition;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// A homomorphism stored as its full image vector over the source indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

/// A map `G -> N` satisfying `d(xy) = d(x)^y d(y)`, stored as images in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    pub images: Vec<usize>,
}

/// BFS spanning tree over `gens`: for every non-identity element `y`,
/// `(x, k)` with `y = x * gens[k]` and `x` found earlier.
struct Spanning {
    order: Vec<usize>,
}

impl Spanning {
    fn new(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        let mut order = vec![g.identity()];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &s in gens {
                let y = g.op(x, s);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        Spanning { order }
    }
}

/// Enumerates maps `f` on `g` determined by generator images under the
/// recursion `f(x * gens[k]) = law(f(x), k, f(gens[k]))` with
/// `f(identity) = unit`. Generators are assigned one at a time; after each
/// assignment the recursion is checked for consistency on the subgroup the
/// assigned generators span, so inconsistent prefixes are pruned. A full
/// assignment is consistent exactly when the law holds for every `x` and
/// every generator, which for positive words in the generators gives the
/// law for all pairs.
///
/// `accept(k, image, partial)` may reject a candidate for generator `k`
/// given the images already fixed on the span of `gens[..k]`.
/// Results come out in lexicographic order of generator images.
pub(crate) fn enumerate_by_generators<L, A>(
    g: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    unit: usize,
    law: L,
    accept: A,
) -> Vec<Vec<usize>>
where
    L: Fn(usize, usize, usize) -> usize + Sync,
    A: Fn(usize, usize, &[usize]) -> bool + Sync,
{
    let spans: Vec<Spanning> = (0..=gens.len()).map(|k| Spanning::new(g, &gens[..k])).collect();
    let extend = |images: &[usize]| -> Option<Vec<usize>> {
        let k = images.len();
        let mut f = vec![usize::MAX; g.order()];
        f[g.identity()] = unit;
        for &x in &spans[k].order {
            let fx = f[x];
            debug_assert!(fx != usize::MAX);
            for (j, &s) in gens[..k].iter().enumerate() {
                let v = law(fx, j, images[j]);
                let y = g.op(x, s);
                if f[y] == usize::MAX {
                    f[y] = v;
                } else if f[y] != v {
                    return None;
                }
            }
        }
        Some(f)
    };
    fn recurse<E, A>(
        k: usize,
        images: &mut Vec<usize>,
        partial: &[usize],
        candidates: &[Vec<usize>],
        extend: &E,
        accept: &A,
        out: &mut Vec<Vec<usize>>,
    ) where
        E: Fn(&[usize]) -> Option<Vec<usize>>,
        A: Fn(usize, usize, &[usize]) -> bool,
    {
        if k == candidates.len() {
            out.push(partial.to_vec());
            return;
        }
        for &c in &candidates[k] {
            if !accept(k, c, partial) {
                continue;
            }
            images.push(c);
            if let Some(f) = extend(images) {
                recurse(k + 1, images, &f, candidates, extend, accept, out);
            }
            images.pop();
        }
    }
    let root = extend(&[]).expect("identity assignment");
    if gens.is_empty() {
        return vec![root];
    }
    candidates[0]
        .par_iter()
        .map(|&c| {
            let mut out = Vec::new();
            if accept(0, c, &root) {
                let mut images = vec![c];
                if let Some(f) = extend(&images) {
                    recurse(1, &mut images, &f, candidates, &extend, &accept, &mut out);
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn require_abelian_subgroup(target: &FiniteGroup, within: &Subgroup) -> Result<()> {
    if within
        .iter()
        .any(|a| within.iter().any(|b| target.op(a, b) != target.op(b, a)))
    {
        return Err(Error::arg("target subgroup is not abelian"));
    }
    Ok(())
}

/// All homomorphisms `G -> within <= target` with `within` abelian, as image
/// vectors in `target` indices, in lexicographic order of generator images.
/// The count is checked against `|Hom(G/G', within)|`.
pub fn enumerate_homs(g: &FiniteGroup, target: &FiniteGroup, within: &Subgroup) -> Result<Vec<GroupHom>> {
    require_abelian_subgroup(target, within)?;
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            within
                .iter()
                .filter(|&a| g.element_order(s).is_multiple_of(target.element_order(a)))
                .collect()
        })
        .collect();
    let maps = enumerate_by_generators(
        g,
        &gens,
        &candidates,
        target.identity(),
        |fx, _, fs| target.op(fx, fs),
        |_, _, _| true,
    );
    let expected = hom_count_from_abelianization(g, target, within)?;
    assert_eq!(maps.len() as u128, expected, "hom count disagrees with |Hom(G/G', A)|");
    Ok(maps.into_iter().map(|images| GroupHom { images }).collect())
}

/// `|Hom(G/G', A)| = prod_i #{a in A : a^{n_i} = 1}` over a cyclic
/// decomposition `G/G' = sum C_{n_i}` (one decomposition per prime).
pub fn hom_count_from_abelianization(g: &FiniteGroup, target: &FiniteGroup, within: &Subgroup) -> Result<u128> {
    let q = g.quotient_group(&g.commutator_subgroup())?.group;
    let mut cyclic_orders = Vec::new();
    let mut n = q.order() as u64;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            let sylow = q.sylow(p);
            let members = sylow.elements();
            let pos: std::collections::HashMap<usize, usize> =
                members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
            let dec = CyclicDecomposition::new(members.len(), pos[&q.identity()], p, |a, b| {
                pos[&q.op(members[a], members[b])]
            })?;
            cyclic_orders.extend(dec.exps().iter().map(|&e| p.pow(e)));
        }
        p += 1;
    }
    Ok(cyclic_orders
        .iter()
        .map(|&m| within.iter().filter(|&a| m % target.element_order(a) == 0).count() as u128)
        .product())
}

fn require_abelian_normal(g: &FiniteGroup, n: &Subgroup) -> Result<()> {
    require_abelian_subgroup(g, n)?;
    if !g.is_normal(n) {
        return Err(Error::arg("module subgroup is not normal"));
    }
    Ok(())
}

/// All derivations `G -> N` for an abelian normal `N`, acting by conjugation.
/// When `N` is central the result is checked to equal `Hom(G, N)`.
pub fn enumerate_derivations(g: &FiniteGroup, n: &Subgroup) -> Result<Vec<Derivation>> {
    require_abelian_normal(g, n)?;
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens.iter().map(|_| n.elements()).collect();
    let maps = enumerate_by_generators(
        g,
        &gens,
        &candidates,
        g.identity(),
        |fx, j, fs| g.op(g.conj(fx, gens[j]), fs),
        |_, _, _| true,
    );
    let ders: Vec<Derivation> = maps.into_iter().map(|images| Derivation { images }).collect();
    if n.is_subgroup_of(&g.center()) {
        let homs = enumerate_homs(g, g, n)?;
        assert!(
            homs.len() == ders.len() && homs.iter().zip(&ders).all(|(h, d)| h.images == d.images),
            "derivations into a central subgroup must be the homomorphisms"
        );
    }
    Ok(ders)
}

/// Derivations of a quotient `Q = G/M` into `N <= G` through the induced
/// conjugation action, for `M` centralizing `N`. Images are `G` indices;
/// maps are indexed by `Q` elements.
pub fn enumerate_quotient_derivations(
    g: &FiniteGroup,
    m: &Subgroup,
    n: &Subgroup,
) -> Result<(crate::group::QuotientGroup, Vec<Derivation>)> {
    require_abelian_normal(g, n)?;
    if !m.iter().all(|x| g.centralizes(x, n)) {
        return Err(Error::arg("the quotient must act on N"));
    }
    let q = g.quotient_group(m)?;
    let gens = q.group.generating_set();
    let candidates: Vec<Vec<usize>> = gens.iter().map(|_| n.elements()).collect();
    let reps = q.representatives.clone();
    let maps = enumerate_by_generators(
        &q.group,
        &gens,
        &candidates,
        g.identity(),
        |fx, j, fs| g.op(g.conj(fx, reps[gens[j]]), fs),
        |_, _, _| true,
    );
    Ok((q, maps.into_iter().map(|images| Derivation { images }).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    /// Every map `G -> N` checked against the cocycle law directly.
    fn brute_force_derivations(g: &FiniteGroup, n: &Subgroup) -> Vec<Vec<usize>> {
        let elems = n.elements();
        let total = elems.len().pow(g.order() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let f: Vec<usize> = (0..g.order())
                .map(|_| {
                    let v = elems[c % elems.len()];
                    c /= elems.len();
                    v
                })
                .collect();
            let ok = (0..g.order()).all(|x| (0..g.order()).all(|y| f[g.op(x, y)] == g.op(g.conj(f[x], y), f[y])));
            if ok {
                out.push(f);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_counts() {
        let c9 = builtin_group("c9").unwrap();
        let c3 = builtin_group("c3").unwrap();
        assert_eq!(enumerate_homs(&c9, &c3, &c3.whole()).unwrap().len(), 3);
        let q8 = builtin_group("q8").unwrap();
        let c2 = builtin_group("c2").unwrap();
        assert_eq!(enumerate_homs(&q8, &c2, &c2.whole()).unwrap().len(), 4);
        let t = builtin_group("c1").unwrap();
        assert_eq!(enumerate_homs(&q8, &t, &t.whole()).unwrap().len(), 1);
        assert!(enumerate_homs(&c9, &q8, &q8.whole()).is_err());
    }

    #[test]
    fn homs_are_homomorphisms() {
        let g = builtin_group("d8").unwrap();
        let a = builtin_group("c4xc2").unwrap();
        for h in enumerate_homs(&g, &a, &a.whole()).unwrap() {
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(h.images[g.op(x, y)], a.op(h.images[x], h.images[y]));
                }
            }
        }
    }

    #[test]
    fn derivation_examples() {
        let c4 = builtin_group("c4").unwrap();
        assert_eq!(enumerate_derivations(&c4, &c4.trivial_subgroup()).unwrap().len(), 1);
        let n = c4.agemo(1);
        assert_eq!(enumerate_derivations(&c4, &n).unwrap().len(), 2);
        let q8 = builtin_group("q8").unwrap();
        assert!(enumerate_derivations(&q8, &q8.whole()).is_err());
        let d8 = builtin_group("d8").unwrap();
        assert!(enumerate_derivations(&d8, &d8.closure(&[4])).is_err());
    }

    #[test]
    fn derivations_match_brute_force() {
        for (spec, gen) in [("d8", 1usize), ("c2xc2", 2), ("s3", 1), ("c4xc2", 2)] {
            let g = builtin_group(spec).unwrap();
            let n = g.closure(&[gen]);
            let fast: Vec<Vec<usize>> = enumerate_derivations(&g, &n)
                .unwrap()
                .into_iter()
                .map(|d| d.images)
                .collect();
            let mut sorted = fast.clone();
            sorted.sort();
            assert_eq!(sorted, brute_force_derivations(&g, &n), "{spec}");
        }
    }

    #[test]
    fn quotient_derivations() {
        let g = builtin_group("c8").unwrap();
        let n = g.agemo(1);
        let omega = g.closure(&[4]);
        let (q, ders) = enumerate_quotient_derivations(&g, &omega, &n).unwrap();
        assert_eq!(q.group.order(), 4);
        // Hom(C4, C4) with the trivial action
        assert_eq!(ders.len(), 4);
    }
}
