use std::collections::HashMap;

use super::{enumerate_derivations, enumerate_homs};
use crate::abelian::CyclicDecomposition;
use crate::arith::{p_nil_omega_level, prime_power};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::ring::{AdditiveType, FiniteRing, RingElement};

/// Largest ring tabulated explicitly (two `n x n` tables).
pub const TABLE_RING_MAX: usize = 2048;

/// A finite ring on ids `0..n` given by addition and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRing {
    n: usize,
    zero: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    additive_generators: Vec<usize>,
}

impl TableRing {
    /// Validates the ring laws. Additive associativity, distributivity and
    /// multiplicative associativity are checked against a generating set of
    /// the additive group, which suffices by induction on word length.
    pub fn new(n: usize, zero: usize, add: Vec<u32>, mul: Vec<u32>) -> Result<Self> {
        if n == 0 || zero >= n || add.len() != n * n || mul.len() != n * n {
            return Err(Error::InvalidRing("table ring shape".into()));
        }
        if add.iter().chain(&mul).any(|&v| v as usize >= n) {
            return Err(Error::InvalidRing("table entry out of range".into()));
        }
        let a = |x: usize, y: usize| add[x * n + y] as usize;
        let m = |x: usize, y: usize| mul[x * n + y] as usize;
        let bad = |what: &str, x: usize, y: usize, z: usize| {
            Err(Error::InvalidRing(format!("{what} fails at ({x},{y},{z})")))
        };
        for x in 0..n {
            if a(zero, x) != x {
                return bad("additive identity", zero, x, 0);
            }
            if !(0..n).any(|y| a(x, y) == zero) {
                return bad("additive inverse", x, 0, 0);
            }
            for y in 0..x {
                if a(x, y) != a(y, x) {
                    return bad("commutativity", x, y, 0);
                }
            }
        }
        let gens = additive_generators(n, zero, &a);
        for x in 0..n {
            for y in 0..n {
                for &g in &gens {
                    if a(a(x, y), g) != a(x, a(y, g)) {
                        return bad("additive associativity", x, y, g);
                    }
                    if m(x, a(y, g)) != a(m(x, y), m(x, g)) {
                        return bad("left distributivity", x, y, g);
                    }
                    if m(a(y, g), x) != a(m(y, x), m(g, x)) {
                        return bad("right distributivity", y, g, x);
                    }
                }
            }
        }
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return bad("associativity", x, y, z);
                    }
                }
            }
        }
        Ok(TableRing {
            n,
            zero,
            add,
            mul,
            additive_generators: gens,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    pub fn circle(&self, x: usize, y: usize) -> usize {
        self.add(self.add(x, y), self.mul(x, y))
    }

    pub fn is_zero_multiplication(&self) -> bool {
        self.mul.iter().all(|&v| v as usize == self.zero)
    }

    /// Basis extraction: a canonical cyclic decomposition of `(T, +)` and
    /// the induced structure constants. Returns the ring and the witness map
    /// `id -> ring index`, which is checked to be additive on generators and
    /// multiplicative on the basis. `p_hint` names the prime when `T` is zero.
    pub fn to_finite_ring(&self, p_hint: u64) -> Result<(FiniteRing, Vec<usize>)> {
        let p = match prime_power(self.n as u64) {
            Some((p, _)) => p,
            None if self.n == 1 => p_hint,
            None => return Err(Error::InvalidRing(format!("order {} is not a prime power", self.n))),
        };
        let dec = CyclicDecomposition::new(self.n, self.zero, p, |x, y| self.add(x, y))?;
        let atype = AdditiveType::new(p, dec.exps().to_vec())?;
        let basis = dec.basis();
        let tensor = basis
            .iter()
            .map(|&bi| basis.iter().map(|&bj| dec.coords(self.mul(bi, bj)).to_vec()).collect())
            .collect();
        let ring = FiniteRing::new(atype, tensor)?;
        let witness: Vec<usize> = (0..self.n)
            .map(|x| ring.index(&RingElement::new(dec.coords(x).to_vec())))
            .collect();
        for x in 0..self.n {
            for &g in &self.additive_generators {
                if witness[self.add(x, g)] != ring.add_idx(witness[x], witness[g]) {
                    return Err(Error::InvalidRing("basis extraction is not additive".into()));
                }
            }
        }
        for &x in basis {
            for &y in basis {
                if witness[self.mul(x, y)] != ring.mul_idx(witness[x], witness[y]) {
                    return Err(Error::InvalidRing("basis extraction is not multiplicative".into()));
                }
            }
        }
        Ok((ring, witness))
    }
}

fn additive_generators(n: usize, zero: usize, add: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut in_span = vec![false; n];
    in_span[zero] = true;
    let mut span = vec![zero];
    let mut gens = Vec::new();
    for x in 0..n {
        if in_span[x] {
            continue;
        }
        gens.push(x);
        let mut head = 0;
        // re-close the span under all generators so far
        let mut frontier: Vec<usize> = span.clone();
        while head < frontier.len() {
            let y = frontier[head];
            head += 1;
            for &g in &gens {
                let z = add(y, g);
                if !in_span[z] {
                    in_span[z] = true;
                    frontier.push(z);
                }
            }
        }
        span = frontier;
    }
    gens
}

/// Maps `G -> G` under pointwise multiplication (addition) and
/// `(f g)(x) = g(f(x))` (multiplication), indexed in a fixed order.
#[derive(Clone, Debug)]
pub struct MapRing {
    group: FiniteGroup,
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MapRing {
    pub fn new(group: &FiniteGroup, maps: Vec<Vec<usize>>) -> Result<Self> {
        let index: HashMap<Vec<usize>, usize> = maps.iter().enumerate().map(|(k, f)| (f.clone(), k)).collect();
        if index.len() != maps.len() {
            return Err(Error::arg("duplicate maps"));
        }
        let zero = vec![group.identity(); group.order()];
        if !index.contains_key(&zero) {
            return Err(Error::arg("the trivial map is missing"));
        }
        Ok(MapRing {
            group: group.clone(),
            maps,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lookup(&self, f: &[usize]) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn zero(&self) -> usize {
        self.index[&vec![self.group.identity(); self.group.order()]]
    }

    pub fn add_map(&self, a: usize, b: usize) -> Vec<usize> {
        let (f, g) = (&self.maps[a], &self.maps[b]);
        f.iter().zip(g).map(|(&x, &y)| self.group.op(x, y)).collect()
    }

    pub fn mul_map(&self, a: usize, b: usize) -> Vec<usize> {
        let (f, g) = (&self.maps[a], &self.maps[b]);
        f.iter().map(|&x| g[x]).collect()
    }

    /// `f o g = f + g + fg`, pointwise `f(x) g(x) g(f(x))`.
    pub fn circle_map(&self, a: usize, b: usize) -> Vec<usize> {
        let (f, g) = (&self.maps[a], &self.maps[b]);
        (0..self.group.order())
            .map(|x| self.group.op(self.group.op(f[x], g[x]), g[f[x]]))
            .collect()
    }

    fn closed(&self, f: Vec<usize>, what: &str) -> Result<usize> {
        self.lookup(&f)
            .ok_or_else(|| Error::InvalidRing(format!("maps are not closed under {what}")))
    }

    /// Explicit tables, with the ring laws verified.
    pub fn to_table_ring(&self) -> Result<TableRing> {
        let n = self.order();
        if n > TABLE_RING_MAX {
            return Err(Error::BudgetExceeded {
                what: "table ring order",
                count: n as u128,
                bound: TABLE_RING_MAX as u128,
            });
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(self.closed(self.add_map(a, b), "addition")? as u32);
                mul.push(self.closed(self.mul_map(a, b), "composition")? as u32);
            }
        }
        TableRing::new(n, self.zero(), add, mul)
    }
}

/// `Hom(G, S)` for central `S`, optionally also requiring `S <= P(G)`.
pub fn hom_ring(g: &FiniteGroup, s: &Subgroup, require_in_p: bool) -> Result<TableRing> {
    hom_map_ring(g, s, require_in_p)?.to_table_ring()
}

pub(crate) fn hom_map_ring(g: &FiniteGroup, s: &Subgroup, require_in_p: bool) -> Result<MapRing> {
    if !s.is_subgroup_of(&g.center()) {
        return Err(Error::arg("Hom(G, S) is a ring only for central S"));
    }
    if require_in_p && !s.is_subgroup_of(&g.p_subgroup()?) {
        return Err(Error::arg("S is not contained in P(G)"));
    }
    let homs = enumerate_homs(g, g, s)?;
    MapRing::new(g, homs.into_iter().map(|h| h.images).collect())
}

pub fn der_ring(g: &FiniteGroup, n: &Subgroup) -> Result<TableRing> {
    der_map_ring(g, n)?.to_table_ring()
}

pub(crate) fn der_map_ring(g: &FiniteGroup, n: &Subgroup) -> Result<MapRing> {
    let ders = enumerate_derivations(g, n)?;
    MapRing::new(g, ders.into_iter().map(|d| d.images).collect())
}

/// `Omega_1(N)` (`Omega_2(N)` for p = 2) as elements of `G`.
pub fn omega_of_module(g: &FiniteGroup, n: &Subgroup) -> Subgroup {
    match g.prime() {
        Some(p) => {
            let level = p_nil_omega_level(p);
            let bound = p.pow(level);
            let set: Vec<usize> = n.iter().filter(|&x| bound % g.element_order(x) == 0).collect();
            g.closure(&set)
        }
        None => g.trivial_subgroup(),
    }
}

/// Derivations vanishing on `Omega_1(N)` (`Omega_2(N)` for p = 2).
pub fn der_subring_trivial_on_omega(g: &FiniteGroup, n: &Subgroup) -> Result<TableRing> {
    der_subring_map_ring(g, n)?.to_table_ring()
}

pub(crate) fn der_subring_map_ring(g: &FiniteGroup, n: &Subgroup) -> Result<MapRing> {
    let omega = omega_of_module(g, n);
    let ders = enumerate_derivations(g, n)?;
    let kept = ders
        .into_iter()
        .filter(|d| omega.iter().all(|x| d.images[x] == g.identity()))
        .map(|d| d.images)
        .collect();
    MapRing::new(g, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    #[test]
    fn hom_rings() {
        let c9 = builtin_group("c9").unwrap();
        let t = hom_ring(&c9, &c9.agemo(1), true).unwrap();
        assert_eq!(t.order(), 3);
        assert!(t.is_zero_multiplication());
        let (r, w) = t.to_finite_ring(3).unwrap();
        assert_eq!((r.p(), r.atype().exps()), (3, &[1u32][..]));
        assert_eq!(r, FiniteRing::zero_ring(AdditiveType::new(3, vec![1]).unwrap()));
        assert_eq!(w.len(), 3);

        let q8 = builtin_group("q8").unwrap();
        let t = hom_ring(&q8, &q8.center(), true).unwrap();
        assert_eq!(t.order(), 4);
        assert!(t.is_zero_multiplication());
        let (r, _) = t.to_finite_ring(2).unwrap();
        assert_eq!(r.atype().exps(), &[1, 1]);

        let t = hom_ring(&q8, &q8.trivial_subgroup(), false).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.to_finite_ring(2).unwrap().0.order(), 1);

        let d8 = builtin_group("d8").unwrap();
        assert!(hom_ring(&d8, &d8.closure(&[4]), false).is_err());
    }

    #[test]
    fn der_rings() {
        let c4 = builtin_group("c4").unwrap();
        let t = der_ring(&c4, &c4.trivial_subgroup()).unwrap();
        assert_eq!(t.order(), 1);
        let t = der_ring(&c4, &c4.agemo(1)).unwrap();
        assert_eq!(t.order(), 2);
        assert!(t.is_zero_multiplication());
        assert_eq!(t.to_finite_ring(2).unwrap().0.atype().exps(), &[1]);
    }

    #[test]
    fn der_ring_klein() {
        // G = Z2 + Z2, N = <(1,0)>: derivations are Hom(G, N) as N is central,
        // composition kills everything except maps nonzero on (1,0)
        let g = builtin_group("c2xc2").unwrap();
        let n = g.closure(&[2]);
        let m = der_map_ring(&g, &n).unwrap();
        let t = m.to_table_ring().unwrap();
        assert_eq!(t.order(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let expected: Vec<usize> = m.maps()[a].iter().map(|&x| m.maps()[b][x]).collect();
                assert_eq!(m.maps()[t.mul(a, b)], expected);
            }
        }
        assert!(!t.is_zero_multiplication());
        let (r, _) = t.to_finite_ring(2).unwrap();
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn omega_trivial_subring() {
        let c8 = builtin_group("c8").unwrap();
        // Omega_2(N) = N; the survivors are 0 and 1 -> 4
        let t = der_subring_trivial_on_omega(&c8, &c8.agemo(1)).unwrap();
        assert_eq!(t.order(), 2);
        assert!(t.is_zero_multiplication());
        let c3 = builtin_group("c3").unwrap();
        assert_eq!(
            der_subring_trivial_on_omega(&c3, &c3.trivial_subgroup())
                .unwrap()
                .order(),
            1
        );
    }

    #[test]
    fn table_ring_rejects_bad_laws() {
        // Z2 with 1 * 1 = 1 but broken distributivity via a constant product
        let add = vec![0, 1, 1, 0];
        assert!(TableRing::new(2, 0, add.clone(), vec![0, 0, 0, 1]).is_ok());
        assert!(TableRing::new(2, 0, add, vec![1, 1, 1, 1]).is_err());
    }
}
