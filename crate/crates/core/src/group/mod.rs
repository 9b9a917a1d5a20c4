//! Cayley-table finite groups and the subgroup machinery built on them.

mod build;
mod generic;
mod io;
mod series;
mod subgroups;

pub use build::{
    builtin_group, cyclic, dihedral, direct_product, extraspecial_exponent_p, from_permutation_generators, metacyclic,
    modular, quaternion, semidihedral, semidirect_by_automorphism, GROUPS_UP_TO_16,
};
pub use generic::{generated, materialize, sylow_subgroup, GroupOps};
pub use io::{load_group, GroupFile};
pub use series::QuotientGroup;
pub use subgroups::{GeneratedSubgroup, DEFAULT_SUBGROUP_BOUND};

use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Orders up to this bound get a full O(n^3) associativity check; larger
/// tables are spot-checked on a deterministic sample.
pub const FULL_ASSOCIATIVITY_BOUND: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
    associativity_verified: bool,
}

impl FiniteGroup {
    /// Validates identity, Latin-square and associativity properties.
    pub fn from_table(order: usize, identity: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if identity >= order {
            return Err(Error::InvalidGroup("identity out of range".into()));
        }
        if table.iter().any(|&t| t as usize >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for a in 0..order {
            if table[identity * order + a] as usize != a || table[a * order + identity] as usize != a {
                return Err(Error::InvalidGroup(format!("identity row/column fails at {a}")));
            }
        }
        let mut seen = vec![0usize; order];
        for a in 0..order {
            for b in 0..order {
                let v = table[a * order + b] as usize;
                if seen[v] == 2 * a + 1 {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                seen[v] = 2 * a + 1;
            }
        }
        for b in 0..order {
            for a in 0..order {
                let v = table[a * order + b] as usize;
                if seen[v] == 2 * b + 2 {
                    return Err(Error::InvalidGroup(format!("column {b} is not a permutation")));
                }
                seen[v] = 2 * b + 2;
            }
        }
        let op = |a: usize, b: usize| table[a * order + b] as usize;
        let full = order <= FULL_ASSOCIATIVITY_BOUND;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if op(op(a, b), c) != op(a, op(b, c)) {
                return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
            }
            Ok(())
        };
        if full {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // deterministic LCG sample
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..20_000 {
                let mut next = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) as usize) % order
                };
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverse[a] = row.iter().position(|&v| v as usize == identity).expect("latin row") as u32;
        }
        let mut element_order = vec![0u32; order];
        for a in 0..order {
            let mut k = 1;
            let mut x = a;
            while x != identity {
                x = op(x, a);
                k += 1;
            }
            element_order[a] = k;
        }
        Ok(FiniteGroup {
            order,
            identity,
            table,
            inverse,
            element_order,
            associativity_verified: full,
        })
    }

    /// Builds the table from a closed multiplication on `0..order`.
    pub fn from_fn(order: usize, identity: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b) as u32);
            }
        }
        Self::from_table(order, identity, table)
    }

    pub fn trivial() -> Self {
        Self::from_table(1, 0, vec![0]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn associativity_verified(&self) -> bool {
        self.associativity_verified
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.element_order[a] as u64;
        let mut x = self.identity;
        for _ in 0..k {
            x = self.op(x, a);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_order[a] as u64
    }

    /// `x^-1 n x`.
    pub fn conj(&self, n: usize, x: usize) -> usize {
        self.op(self.op(self.inv(x), n), x)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.op(self.op(self.inv(x), self.inv(y)), self.op(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// The prime `p` when the order is a nontrivial power of `p`.
    pub fn prime(&self) -> Option<u64> {
        prime_power(self.order as u64).map(|(p, _)| p)
    }

    pub fn is_p_group(&self) -> bool {
        self.order == 1 || self.prime().is_some()
    }

    /// `log_p |G|` for a p-group.
    pub fn log_order(&self) -> u32 {
        prime_power(self.order as u64).map_or(0, |(_, k)| k)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity as u32])
    }

    /// Least subgroup containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Subgroup {
        Subgroup::from_sorted(generated(self, seed).into_iter().map(|x| x as u32).collect())
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &x in set {
            mask[x] = true;
        }
        mask[self.identity]
            && set
                .iter()
                .all(|&a| mask[self.inv(a)] && set.iter().all(|&b| mask[self.op(a, b)]))
    }

    /// Checked constructor for a subgroup from an arbitrary element set.
    pub fn subgroup(&self, set: &[usize]) -> Result<Subgroup> {
        let mut v: Vec<u32> = set.iter().map(|&x| x as u32).collect();
        v.sort_unstable();
        v.dedup();
        let set: Vec<usize> = v.iter().map(|&x| x as usize).collect();
        if !self.is_subgroup(&set) {
            return Err(Error::arg("element set is not a subgroup"));
        }
        Ok(Subgroup::from_sorted(v))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let mask = h.mask(self.order);
        h.iter().all(|n| (0..self.order).all(|x| mask[self.conj(n, x)]))
    }

    pub fn centralizes(&self, x: usize, h: &Subgroup) -> bool {
        h.iter().all(|y| self.op(x, y) == self.op(y, x))
    }
}

/// A subgroup of a fixed parent group, stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    pub(crate) fn from_sorted(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> Vec<usize> {
        self.elements.iter().map(|&x| x as usize).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&x| x as usize)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&(x as u32)).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for x in self.iter() {
            m[x] = true;
        }
        m
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            self.elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x as usize))
                .collect(),
        )
    }
}
