use serde::Serialize;

use crate::arith::exact_log;
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingProfile {
    pub order: usize,
    pub p: u64,
    /// `exp(R^+) = p^m`.
    pub m: u32,
    /// `d(R^+)`.
    pub d_plus: u32,
    pub left_p_nil: bool,
    pub right_p_nil: bool,
    pub class: Option<usize>,
}

impl RingProfile {
    pub fn of(r: &FiniteRing) -> Self {
        RingProfile {
            order: r.order(),
            p: r.p(),
            m: r.additive_exponent_log(),
            d_plus: r.additive_rank(),
            left_p_nil: r.is_left_p_nil(),
            right_p_nil: r.is_right_p_nil(),
            class: r.nilpotency_class(),
        }
    }

    pub fn one_sided_p_nil(&self) -> bool {
        self.left_p_nil || self.right_p_nil
    }
}

/// Invariants of a finite p-group; all zero for the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupProfile {
    pub order: usize,
    pub p: Option<u64>,
    /// Nilpotency class.
    pub c: u32,
    /// `exp(G/G') = p^r`.
    pub r: u32,
    /// `exp(Z(G)) = p^s`.
    pub s: u32,
    pub t: u32,
    /// `d(G)`.
    pub d: u32,
    /// Rank of `P(G)`.
    pub d_prime: u32,
    /// Sum of `e(gamma_i / gamma_{i+1})` for `i = 1..c`.
    pub r1: u32,
    /// Sum of `e(Z_i / Z_{i-1})` for `i = 1..c`.
    pub s1: u32,
    pub lower_central_orders: Vec<usize>,
    pub upper_central_orders: Vec<usize>,
}

/// `log_p` of the exponent of `upper / lower`.
fn section_log(g: &FiniteGroup, p: u64, upper: &Subgroup, lower: &Subgroup) -> u32 {
    exact_log(p, g.section_exponent(upper, lower)).expect("p-group sections have p-power exponent")
}

impl GroupProfile {
    /// Requires a p-group; `d'` needs subgroup enumeration of `P(G)`.
    pub fn of(g: &FiniteGroup, subgroup_bound: usize) -> Result<Self> {
        let lower = g.lower_central_series();
        let upper = g.upper_central_series();
        let lower_central_orders = lower.iter().map(|h| h.order()).collect();
        let upper_central_orders = upper.iter().map(|h| h.order()).collect();
        let Some(p) = g.prime() else {
            g.lower_p_central_series()?;
            return Ok(GroupProfile {
                order: g.order(),
                p: None,
                c: 0,
                r: 0,
                s: 0,
                t: 0,
                d: 0,
                d_prime: 0,
                r1: 0,
                s1: 0,
                lower_central_orders,
                upper_central_orders,
            });
        };
        let c = g.nilpotency_class().expect("p-groups are nilpotent") as u32;
        let trivial = g.trivial_subgroup();
        let r = section_log(g, p, &g.whole(), &g.commutator_subgroup());
        let s = section_log(g, p, &g.center(), &trivial);
        let r1 = lower.windows(2).map(|w| section_log(g, p, &w[0], &w[1])).sum();
        let s1 = upper.windows(2).map(|w| section_log(g, p, &w[1], &w[0])).sum();
        let pg = g.p_subgroup()?;
        let d_prime = if pg.is_trivial() {
            0
        } else {
            crate::group::materialize(g, &pg.elements()).rank(subgroup_bound)?
        };
        Ok(GroupProfile {
            order: g.order(),
            p: Some(p),
            c,
            r,
            s,
            t: r.min(s),
            d: g.min_generators(),
            d_prime,
            r1,
            s1,
            lower_central_orders,
            upper_central_orders,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, GROUPS_UP_TO_16};
    use crate::ring::builtin_ring;

    #[test]
    fn ring_profiles() {
        let p = RingProfile::of(&builtin_ring("3z27").unwrap());
        assert_eq!(
            (p.p, p.m, p.d_plus, p.left_p_nil, p.right_p_nil, p.class),
            (3, 2, 1, true, true, Some(2))
        );
        let p = RingProfile::of(&builtin_ring("z9").unwrap());
        assert!(!p.one_sided_p_nil());
        assert_eq!(p.class, None);
        let p = RingProfile::of(&builtin_ring("zero3").unwrap());
        assert_eq!(p.class, Some(1));
    }

    #[test]
    fn group_profiles() {
        let q8 = GroupProfile::of(&builtin_group("q8").unwrap(), 128).unwrap();
        assert_eq!((q8.c, q8.r, q8.s, q8.t, q8.d, q8.d_prime), (2, 1, 1, 1, 2, 1));
        assert_eq!((q8.r1, q8.s1), (2, 2));
        let c9 = GroupProfile::of(&builtin_group("c9").unwrap(), 128).unwrap();
        assert_eq!((c9.c, c9.r, c9.s, c9.d), (1, 2, 2, 1));
        let t = GroupProfile::of(&builtin_group("c1").unwrap(), 128).unwrap();
        assert_eq!((t.order, t.c, t.d, t.t), (1, 0, 0, 0));
        assert!(GroupProfile::of(&builtin_group("c6").unwrap(), 128).is_err());
    }

    #[test]
    fn profile_sums_are_bounded() {
        for spec in GROUPS_UP_TO_16
            .iter()
            .chain(&["es27", "m27", "c9xc3", "d32", "q32", "sd32", "m32"])
        {
            let g = builtin_group(spec).unwrap();
            if !g.is_p_group() {
                continue;
            }
            let pr = GroupProfile::of(&g, 128).unwrap();
            assert!(pr.r1 <= pr.r * pr.c && pr.s1 <= pr.s * pr.c, "{spec}: {pr:?}");
            // both central series have length c
            assert_eq!(pr.lower_central_orders.len(), pr.upper_central_orders.len(), "{spec}");
        }
    }
}
