//! The adjoint group `R°`: quasi-invertible elements under `x o y = x + y + xy`.

use crate::group::{FiniteGroup, Subgroup};
use crate::ring::{FiniteRing, RingElement};

#[derive(Clone, Debug)]
pub struct AdjointGroup {
    pub ring: FiniteRing,
    /// Ring indices of the quasi-invertible elements, ascending; group
    /// element `k` is `members[k]`.
    pub members: Vec<usize>,
    pub group: FiniteGroup,
    position: Vec<Option<usize>>,
}

impl AdjointGroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn label(&self, k: usize) -> RingElement {
        self.ring.element(self.members[k])
    }

    /// Group index of a ring element, if it is quasi-invertible.
    pub fn unlabel(&self, x: &RingElement) -> Option<usize> {
        self.position[self.ring.index(x)]
    }

    /// Group index of a ring index.
    pub fn position(&self, ring_index: usize) -> Option<usize> {
        self.position[ring_index]
    }

    /// Ring indices of a subgroup of the adjoint group, ascending.
    pub fn ring_indices(&self, h: &Subgroup) -> Vec<usize> {
        let mut v: Vec<usize> = h.iter().map(|k| self.members[k]).collect();
        v.sort_unstable();
        v
    }
}

/// Circle table of the whole ring, row-major over ring indices.
fn circle_table(r: &FiniteRing) -> Vec<u32> {
    let n = r.order();
    let elems: Vec<RingElement> = r.elements().collect();
    let mut table = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            table.push(r.index(&r.circle(x, y)) as u32);
        }
    }
    table
}

pub fn adjoint_group(r: &FiniteRing) -> AdjointGroup {
    let n = r.order();
    let zero = r.index(&r.zero());
    let table = circle_table(r);
    let members: Vec<usize> = (0..n)
        .filter(|&x| (0..n).any(|y| table[x * n + y] as usize == zero && table[y * n + x] as usize == zero))
        .collect();
    let mut position = vec![None; n];
    for (k, &x) in members.iter().enumerate() {
        position[x] = Some(k);
    }
    let group = FiniteGroup::from_fn(members.len(), position[zero].expect("0 is a unit"), |a, b| {
        position[table[members[a] * n + members[b]] as usize].expect("units are closed under the circle operation")
    })
    .expect("the units of a finite monoid form a group");
    if r.nilpotency_class().is_some() {
        debug_assert_eq!(
            members.len(),
            n,
            "every element of a nilpotent ring is quasi-invertible"
        );
    }
    AdjointGroup {
        ring: r.clone(),
        members,
        group,
        position,
    }
}

/// `{x in R° : x^(p^n) = 0}` as ring indices, ascending.
pub fn omega_circle_set(a: &AdjointGroup, n: u32) -> Vec<usize> {
    let k = a.ring.p().pow(n);
    a.members
        .iter()
        .copied()
        .filter(|&x| a.ring.is_zero(&a.ring.adjoint_power(&a.ring.element(x), k)))
        .collect()
}

/// `(R, +)` labelled by ring index.
pub fn additive_group_of(r: &FiniteRing) -> FiniteGroup {
    FiniteGroup::from_fn(r.order(), r.index(&r.zero()), |a, b| r.add_idx(a, b)).expect("additive group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::builtin_ring;

    #[test]
    fn zero_ring_is_additive() {
        let r = builtin_ring("zero3x3").unwrap();
        let a = adjoint_group(&r);
        assert_eq!(a.order(), 9);
        assert_eq!(a.group, additive_group_of(&r));
        assert_eq!(a.group.exponent(), 3);
    }

    #[test]
    fn units_of_z3() {
        let a = adjoint_group(&builtin_ring("z3").unwrap());
        assert_eq!(a.members, vec![0, 1]);
        assert_eq!(a.group.op(1, 1), 0);
        assert_eq!(a.unlabel(&RingElement::new(vec![2])), None);
    }

    #[test]
    fn three_z_27() {
        let r = builtin_ring("3z27").unwrap();
        let a = adjoint_group(&r);
        assert_eq!(a.order(), 9);
        assert_eq!(a.group.exponent(), 9);
        // coordinate k stands for 3k
        assert_eq!(omega_circle_set(&a, 1), vec![0, 3, 6]);
        assert_eq!(omega_circle_set(&a, 0), vec![0]);
        for k in 0..a.order() {
            assert_eq!(a.unlabel(&a.label(k)), Some(k));
        }
    }

    #[test]
    fn four_z_16() {
        let r = builtin_ring("4z16").unwrap();
        let a = adjoint_group(&r);
        // coordinate k stands for 4k; {0, 8} is {0, 2}
        assert_eq!(omega_circle_set(&a, 1), vec![0, 2]);
        assert!(a.group.is_abelian());
    }

    #[test]
    fn additive_groups() {
        assert_eq!(additive_group_of(&builtin_ring("zero4").unwrap()).exponent(), 4);
        assert_eq!(additive_group_of(&builtin_ring("3z27").unwrap()).exponent(), 9);
        let klein = additive_group_of(&builtin_ring("zero2x2").unwrap());
        assert_eq!((klein.order(), klein.exponent()), (4, 2));
    }
}
