//! Algorithms that only need a multiplication oracle, so they run both on
//! Cayley tables and on automorphism groups too large to tabulate.

use super::FiniteGroup;
use crate::arith::p_part;

pub trait GroupOps {
    fn size(&self) -> usize;
    fn identity(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn conj(&self, n: usize, x: usize) -> usize {
        self.op(self.op(self.inv(x), n), x)
    }

    fn power(&self, a: usize, k: u64) -> usize {
        let mut result = self.identity();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.op(result, base);
            }
            base = self.op(base, base);
            k >>= 1;
        }
        result
    }
}

impl GroupOps for FiniteGroup {
    fn size(&self) -> usize {
        self.order()
    }

    fn identity(&self) -> usize {
        FiniteGroup::identity(self)
    }

    fn op(&self, a: usize, b: usize) -> usize {
        FiniteGroup::op(self, a, b)
    }

    fn inv(&self, a: usize) -> usize {
        FiniteGroup::inv(self, a)
    }
}

/// Sorted elements of the subgroup generated by `gens`.
pub fn generated<G: GroupOps + ?Sized>(g: &G, gens: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; g.size()];
    let id = g.identity();
    mask[id] = true;
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        head += 1;
        for &s in gens {
            let y = g.op(x, s);
            if !mask[y] {
                mask[y] = true;
                list.push(y);
            }
        }
    }
    list.sort_unstable();
    list
}

/// A Sylow p-subgroup by normalizer ascent: starting from the trivial
/// subgroup, repeatedly adjoin the first element (by index) of `N(P) \ P`
/// whose image in `N(P)/P` has order divisible by p, raised to the power
/// that strips the p'-part. Returns the sorted members and the generators used.
pub fn sylow_subgroup<G: GroupOps + ?Sized>(g: &G, p: u64) -> (Vec<usize>, Vec<usize>) {
    let n = g.size();
    let target = p_part(p, n as u64) as usize;
    let mut gens: Vec<usize> = Vec::new();
    let mut members = vec![g.identity()];
    let mut mask = vec![false; n];
    mask[g.identity()] = true;
    while members.len() < target {
        let mut found = None;
        for x in 0..n {
            if mask[x] || !gens.iter().all(|&h| mask[g.conj(h, x)]) {
                continue;
            }
            let mut k = 1u64;
            let mut y = x;
            while !mask[y] {
                y = g.op(y, x);
                k += 1;
            }
            if k.is_multiple_of(p) {
                found = Some(g.power(x, k / p_part(p, k)));
                break;
            }
        }
        let z = found.expect("a proper p-subgroup has p dividing |N(P):P|");
        gens.push(z);
        members = generated(g, &gens);
        for &m in &members {
            mask[m] = true;
        }
    }
    (members, gens)
}

/// Cayley table of a subgroup given by its sorted members; element `k` of
/// the result is `members[k]`.
pub fn materialize<G: GroupOps + ?Sized>(g: &G, members: &[usize]) -> FiniteGroup {
    let pos: std::collections::HashMap<usize, usize> = members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let k = members.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in members {
        for &b in members {
            table.push(pos[&g.op(a, b)] as u32);
        }
    }
    FiniteGroup::from_table(k, pos[&g.identity()], table).expect("subgroup of a group")
}
