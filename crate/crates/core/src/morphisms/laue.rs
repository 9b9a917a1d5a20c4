use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::rings::MapRing;
use super::{enumerate_by_generators, enumerate_derivations, Derivation};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::report::CheckReport;

/// Monoids up to this size have their operation compared on every pair;
/// larger ones on every (member, monoid generator) pair.
pub const EXHAUSTIVE_LAUE_BOUND: usize = 1024;

/// `End_N(G)`: endomorphisms `u` with `x^-1 u(x) in N`, under "apply `a`,
/// then `b`" composition.
#[derive(Clone, Debug)]
pub struct EndoMonoid {
    pub group: FiniteGroup,
    pub module: Subgroup,
    pub members: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl EndoMonoid {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn lookup(&self, u: &[usize]) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn identity(&self) -> usize {
        let id: Vec<usize> = (0..self.group.order()).collect();
        self.index[&id]
    }

    /// `a` then `b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let (f, g) = (&self.members[a], &self.members[b]);
        let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
        self.index[&h]
    }

    pub fn is_invertible(&self, a: usize) -> bool {
        let mut seen = vec![false; self.group.order()];
        self.members[a].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// Greedy monoid generating set: members by descending image size, then
    /// index, each kept when not yet in the submonoid generated by the
    /// earlier picks.
    pub fn monoid_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut order: Vec<(std::cmp::Reverse<usize>, usize)> = (0..n)
            .map(|a| {
                let mut img = self.members[a].clone();
                img.sort_unstable();
                img.dedup();
                (std::cmp::Reverse(img.len()), a)
            })
            .collect();
        order.sort_unstable();
        let mut in_closure = vec![false; n];
        let id = self.identity();
        in_closure[id] = true;
        let mut closure = vec![id];
        let mut gens: Vec<usize> = Vec::new();
        let mut done: Vec<usize> = Vec::new();
        for candidate in order.into_iter().map(|(_, a)| a) {
            if in_closure[candidate] {
                continue;
            }
            gens.push(candidate);
            done.push(0);
            loop {
                let mut progressed = false;
                for j in 0..gens.len() {
                    while done[j] < closure.len() {
                        let y = self.compose(closure[done[j]], gens[j]);
                        done[j] += 1;
                        progressed = true;
                        if !in_closure[y] {
                            in_closure[y] = true;
                            closure.push(y);
                        }
                    }
                }
                if !progressed {
                    break;
                }
            }
            if closure.len() == n {
                break;
            }
        }
        gens
    }
}

/// Endomorphisms `u` with `x^-1 u(x) in N` for all `x`.
pub fn end_monoid(g: &FiniteGroup, n: &Subgroup) -> EndoMonoid {
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            n.iter()
                .map(|m| g.op(s, m))
                .filter(|&y| g.element_order(s).is_multiple_of(g.element_order(y)))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    let maps = enumerate_by_generators(
        g,
        &gens,
        &candidates,
        g.identity(),
        |fx, _, fs| g.op(fx, fs),
        |_, _, _| true,
    );
    let members: Vec<Vec<usize>> = maps.into_iter().filter(|u| g.moves_into(u, n)).collect();
    let index = members.iter().enumerate().map(|(k, u)| (u.clone(), k)).collect();
    EndoMonoid {
        group: g.clone(),
        module: n.clone(),
        members,
        index,
    }
}

/// `Aut_N(G)` as a group under "apply `a`, then `b`"; element `k` is the
/// `k`-th invertible member of `End_N(G)` in monoid order. Also returns the
/// image vectors.
pub fn aut_n(g: &FiniteGroup, n: &Subgroup) -> (FiniteGroup, Vec<Vec<usize>>) {
    let monoid = end_monoid(g, n);
    let units: Vec<Vec<usize>> = (0..monoid.order())
        .filter(|&a| monoid.is_invertible(a))
        .map(|a| monoid.members[a].clone())
        .collect();
    let pos: HashMap<&Vec<usize>, usize> = units.iter().enumerate().map(|(k, u)| (u, k)).collect();
    let id: Vec<usize> = (0..g.order()).collect();
    let group = FiniteGroup::from_fn(units.len(), pos[&id], |a, b| {
        let h: Vec<usize> = units[a].iter().map(|&x| units[b][x]).collect();
        pos[&h]
    })
    .expect("automorphisms form a group");
    (group, units)
}

/// `u(x) = x d(x)`, checked to lie in `End_N(G)`.
pub fn laue_endomorphism(g: &FiniteGroup, n: &Subgroup, d: &Derivation) -> Result<Vec<usize>> {
    let u: Vec<usize> = (0..g.order()).map(|x| g.op(x, d.images[x])).collect();
    if !is_endomorphism(g, &u) || !g.moves_into(&u, n) {
        return Err(Error::arg("x d(x) is not an endomorphism into N-cosets"));
    }
    Ok(u)
}

/// `d_u(x) = x^-1 u(x)` for `u in End_N(G)`.
pub fn laue_derivation(g: &FiniteGroup, n: &Subgroup, u: &[usize]) -> Result<Derivation> {
    if u.len() != g.order() || !is_endomorphism(g, u) {
        return Err(Error::arg("not an endomorphism"));
    }
    if !g.moves_into(u, n) {
        return Err(Error::arg("endomorphism is not in End_N(G)"));
    }
    Ok(Derivation {
        images: (0..g.order()).map(|x| g.op(g.inv(x), u[x])).collect(),
    })
}

fn is_endomorphism(g: &FiniteGroup, u: &[usize]) -> bool {
    (0..g.order()).all(|x| (0..g.order()).all(|y| u[g.op(x, y)] == g.op(u[x], u[y])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LaueMode {
    /// Every pair of monoid elements.
    Exhaustive,
    /// Every (member, monoid generator) pair.
    Generators,
}

/// Unit test in a finite monoid: some circle power returns to `0`.
fn is_circle_unit(ring: &MapRing, d: usize) -> bool {
    let zero = ring.zero();
    let mut seen = HashSet::new();
    let mut y = d;
    loop {
        if y == zero {
            return true;
        }
        if !seen.insert(y) {
            return false;
        }
        y = ring
            .lookup(&ring.circle_map(y, d))
            .expect("circle closes on derivations");
    }
}

/// Checks that `u -> d_u` is a bijection `End_N(G) -> Der(G, N)` carrying
/// composition to the circle operation, and that it matches `Aut_N(G)` with
/// the circle units of `Der(G, N)`.
pub fn check_laue(g: &FiniteGroup, n: &Subgroup, instance: &str) -> CheckReport {
    let mut report = CheckReport::new("prop-1-1", instance);
    report.bound("End_N(G) ~ (Der(G,N), o) and Aut_N(G) ~ Der(G,N)°");
    let ders = match enumerate_derivations(g, n) {
        Ok(d) => d,
        Err(_) => return report.skip("N abelian normal").finish(),
    };
    let der = MapRing::new(g, ders.into_iter().map(|d| d.images).collect()).expect("derivations contain 0");
    let end = end_monoid(g, n);
    report.set("end_order", end.order()).set("der_order", der.order());

    let mut phi = Vec::with_capacity(end.order());
    let mut hit = vec![false; der.order()];
    for (k, u) in end.members.iter().enumerate() {
        let d = laue_derivation(g, n, u).expect("members of End_N(G)");
        match der.lookup(&d.images) {
            Some(j) => {
                report.require(!hit[j], || format!("endomorphisms collide at #{k}"));
                hit[j] = true;
                phi.push(j);
            }
            None => {
                report.require(false, || format!("d_u of endomorphism #{k} is not a derivation"));
                return report.finish();
            }
        }
    }
    report.require(end.order() == der.order(), || {
        "End_N(G) and Der(G,N) differ in size".into()
    });
    for (j, d) in der.maps().iter().enumerate() {
        let ok = laue_endomorphism(g, n, &Derivation { images: d.clone() })
            .ok()
            .and_then(|u| end.lookup(&u))
            .is_some_and(|k| phi[k] == j);
        report.require(ok, || format!("round trip fails at derivation #{j}"));
    }
    if report.verdict != crate::report::Verdict::Pass {
        return report.finish();
    }

    report.require(phi[end.identity()] == der.zero(), || {
        "identity does not map to 0".into()
    });
    let (mode, right_factors): (LaueMode, Vec<usize>) = if end.order() <= EXHAUSTIVE_LAUE_BOUND {
        (LaueMode::Exhaustive, (0..end.order()).collect())
    } else {
        (LaueMode::Generators, end.monoid_generators())
    };
    report
        .set("mode", serde_json::to_value(mode).expect("mode"))
        .set("right_factors", right_factors.len());
    'outer: for a in 0..end.order() {
        for &b in &right_factors {
            let lhs = phi[end.compose(a, b)];
            let rhs = der.lookup(&der.circle_map(phi[a], phi[b]));
            if rhs != Some(lhs) {
                report.require(false, || {
                    format!("composition of #{a} then #{b} does not map to the circle product")
                });
                break 'outer;
            }
        }
    }

    let mut aut_order = 0usize;
    let mut der_units = 0usize;
    for (a, &d) in phi.iter().enumerate() {
        let invertible = end.is_invertible(a);
        let unit = is_circle_unit(&der, d);
        aut_order += invertible as usize;
        der_units += unit as usize;
        report.require(invertible == unit, || {
            format!("endomorphism #{a}: invertible={invertible}, unit={unit}")
        });
    }
    report.set("aut_order", aut_order).set("der_units", der_units);
    report.finish()
}
