use std::collections::HashMap;

use super::enumerate_by_generators;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOps};

/// Largest group order whose automorphism group is searched.
pub const DEFAULT_AUT_BOUND: usize = 81;
/// Largest automorphism group kept.
pub const DEFAULT_AUT_COUNT_BOUND: usize = 100_000;
/// Largest backtracking tree (product of candidate counts) attempted.
const SEARCH_LEAF_BOUND: u128 = 50_000_000;

/// `Aut(G)` as a list of image vectors, multiplied as "apply `a`, then `b`".
/// Elements are addressed by index; member `k` is `members[k]`, ordered by
/// the images of the generating set.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    pub generators: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    key: HashMap<Vec<usize>, usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn lookup(&self, u: &[usize]) -> Option<usize> {
        let k: Vec<usize> = self.generators.iter().map(|&g| u[g]).collect();
        self.key.get(&k).copied().filter(|&i| self.members[i] == u)
    }
}

impl GroupOps for AutGroup {
    fn size(&self) -> usize {
        self.members.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn op(&self, a: usize, b: usize) -> usize {
        let (f, g) = (&self.members[a], &self.members[b]);
        let k: Vec<usize> = self.generators.iter().map(|&s| g[f[s]]).collect();
        self.key[&k]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Characteristic-subgroup fingerprint used to prune candidate images.
fn fingerprints(g: &FiniteGroup) -> Vec<(u64, usize, bool, bool, bool)> {
    let z = g.center().mask(g.order());
    let d = g.commutator_subgroup().mask(g.order());
    let f = g.frattini().mask(g.order());
    (0..g.order())
        .map(|x| {
            let mut class: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).collect();
            class.sort_unstable();
            class.dedup();
            (g.element_order(x), class.len(), z[x], d[x], f[x])
        })
        .collect()
}

/// All automorphisms by backtracking on the images of a generating set
/// (descending element order). Candidate images share the generator's
/// fingerprint; for p-groups each image must also avoid the span of
/// `Phi(G)` and the earlier images, which makes every surviving
/// homomorphism surjective.
pub fn aut_group(g: &FiniteGroup, bound: usize, count_bound: usize) -> Result<AutGroup> {
    if g.order() > bound {
        return Err(Error::BudgetExceeded {
            what: "automorphism search (group order)",
            count: g.order() as u128,
            bound: bound as u128,
        });
    }
    let gens = g.generating_set();
    let prints = fingerprints(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&y| prints[y] == prints[s]).collect())
        .collect();
    let leaves: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if leaves > SEARCH_LEAF_BOUND {
        return Err(Error::BudgetExceeded {
            what: "automorphism search tree",
            count: leaves,
            bound: SEARCH_LEAF_BOUND,
        });
    }
    let p_group = g.prime().is_some();
    let phi = g.frattini().mask(g.order());
    let accept = |_: usize, c: usize, partial: &[usize]| {
        if !p_group {
            return true;
        }
        // c must lie outside Phi(G) f(<gens[..k]>)
        !partial.iter().any(|&v| v != usize::MAX && phi[g.op(c, g.inv(v))])
    };
    let maps = enumerate_by_generators(g, &gens, &candidates, g.identity(), |fx, _, fs| g.op(fx, fs), accept);
    let members: Vec<Vec<usize>> = maps
        .into_iter()
        .filter(|u| {
            let mut seen = vec![false; g.order()];
            u.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
        .collect();
    if members.len() > count_bound {
        return Err(Error::BudgetExceeded {
            what: "automorphism group order",
            count: members.len() as u128,
            bound: count_bound as u128,
        });
    }
    let key: HashMap<Vec<usize>, usize> = members
        .iter()
        .enumerate()
        .map(|(k, u)| (gens.iter().map(|&s| u[s]).collect(), k))
        .collect();
    let identity = key[&gens];
    let inverse = members
        .iter()
        .map(|u| {
            let mut inv = vec![0; g.order()];
            for (x, &y) in u.iter().enumerate() {
                inv[y] = x;
            }
            key[&gens.iter().map(|&s| inv[s]).collect::<Vec<_>>()]
        })
        .collect();
    Ok(AutGroup {
        group: g.clone(),
        generators: gens,
        members,
        key,
        inverse,
        identity,
    })
}
