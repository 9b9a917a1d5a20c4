use std::collections::{HashMap, VecDeque};

use super::{generated, materialize, sylow_subgroup, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

pub const DEFAULT_SUBGROUP_BOUND: usize = 256;

/// A subgroup with the generators it was reached by.
#[derive(Clone, Debug)]
pub struct GeneratedSubgroup {
    pub subgroup: Subgroup,
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    /// One generator per cyclic subgroup (least index), in index order.
    pub fn cyclic_generators(&self) -> Vec<usize> {
        let mut seen: HashMap<Subgroup, ()> = HashMap::new();
        let mut out = Vec::new();
        for x in 0..self.order() {
            if seen.insert(self.closure(&[x]), ()).is_none() {
                out.push(x);
            }
        }
        out
    }

    /// Every subgroup exactly once, by breadth-first ascent of the join
    /// lattice of cyclic subgroups. Sorted by order, then elements.
    pub fn enumerate_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        Ok(self
            .enumerate_subgroups_with_generators(bound)?
            .into_iter()
            .map(|g| g.subgroup)
            .collect())
    }

    pub fn enumerate_subgroups_with_generators(&self, bound: usize) -> Result<Vec<GeneratedSubgroup>> {
        if self.order() > bound {
            return Err(Error::BudgetExceeded {
                what: "subgroup enumeration (group order)",
                count: self.order() as u128,
                bound: bound as u128,
            });
        }
        let cyclic = self.cyclic_generators();
        let mut index: HashMap<Subgroup, usize> = HashMap::new();
        let mut found: Vec<GeneratedSubgroup> = Vec::new();
        let trivial = self.trivial_subgroup();
        index.insert(trivial.clone(), 0);
        found.push(GeneratedSubgroup {
            subgroup: trivial,
            generators: Vec::new(),
        });
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let (h, gens) = (found[k].subgroup.clone(), found[k].generators.clone());
            if h.order() == self.order() {
                continue;
            }
            for &g in &cyclic {
                if h.contains(g) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(g);
                let members: Vec<u32> = generated(self, &next_gens).into_iter().map(|x| x as u32).collect();
                let j = Subgroup::from_sorted(members);
                if index.contains_key(&j) {
                    continue;
                }
                index.insert(j.clone(), found.len());
                queue.push_back(found.len());
                found.push(GeneratedSubgroup {
                    subgroup: j,
                    generators: next_gens,
                });
            }
        }
        found.sort_by(|a, b| (a.subgroup.order(), &a.subgroup).cmp(&(b.subgroup.order(), &b.subgroup)));
        Ok(found)
    }

    /// `d(H)` for a subgroup, computed on its own Cayley table.
    pub fn subgroup_min_generators(&self, h: &Subgroup) -> u32 {
        if h.is_trivial() {
            return 0;
        }
        materialize(self, &h.elements()).min_generators()
    }

    /// `max d(H)` over all subgroups; 0 for the trivial group.
    pub fn rank(&self, bound: usize) -> Result<u32> {
        let mut best = 0;
        for sub in self.enumerate_subgroups_with_generators(bound)? {
            // d(H) never exceeds the number of generators it was reached by
            if sub.generators.len() as u32 <= best {
                continue;
            }
            best = best.max(self.subgroup_min_generators(&sub.subgroup));
        }
        Ok(best)
    }

    pub fn maximal_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        let all = self.enumerate_subgroups(bound)?;
        let proper: Vec<&Subgroup> = all.iter().filter(|h| h.order() < self.order()).collect();
        Ok(proper
            .iter()
            .filter(|h| !proper.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k)))
            .map(|h| (*h).clone())
            .collect())
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini_by_maximal_subgroups(&self, bound: usize) -> Result<Subgroup> {
        let maximal = self.maximal_subgroups(bound)?;
        Ok(maximal.iter().fold(self.whole(), |acc, m| acc.intersect(m)))
    }

    /// The Sylow p-subgroup found first by normalizer ascent.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let (members, _) = sylow_subgroup(self, p);
        Subgroup::from_sorted(members.into_iter().map(|x| x as u32).collect())
    }
}
