use serde_json::json;

use super::{CheckReport, RingContext, VerifyConfig};
use crate::adjoint::omega_circle_set;
use crate::arith::p_nil_omega_level;
use crate::ring::{is_ideal, quotient_ring};

const ONE_SIDED: &str = "R left or right p-nil";

/// `Omega_{n}(R°) = Omega_n(R^+)` for `n <= m`, and the circle Omega set is
/// already a subgroup.
pub fn check_theorem_a(cx: &RingContext) -> CheckReport {
    let mut report = CheckReport::new("theorem-a", &cx.id);
    report.bound("Omega_{n}(R°) = Omega_n(R^+) = Omega_n(R°), 1 <= n <= m");
    let pr = cx.profile();
    if !pr.one_sided_p_nil() {
        return report.skip(ONE_SIDED).finish();
    }
    let a = cx.adjoint();
    let mut sizes = Vec::new();
    for n in 1..=pr.m {
        let circle = omega_circle_set(a, n);
        let additive = cx.ring.omega_additive(n);
        report.require(circle == additive.elements(), || {
            let diff = circle
                .iter()
                .find(|x| !additive.contains(**x))
                .or_else(|| additive.elements().iter().find(|x| !circle.contains(x)));
            format!(
                "n={n}: ring element #{} lies in exactly one side",
                diff.copied().unwrap_or(0)
            )
        });
        let positions: Vec<usize> = circle.iter().map(|&x| a.position(x).expect("unit")).collect();
        let closure = a.group.closure(&positions);
        report.require(closure.order() == circle.len(), || {
            format!(
                "n={n}: the circle Omega set is not closed ({} < {})",
                circle.len(),
                closure.order()
            )
        });
        sizes.push(circle.len());
    }
    report.set("m", pr.m).set("omega_orders", sizes).finish()
}

/// `Omega_1(R°) <= Z(R°)` (`Omega_2` for p = 2) on p-nil rings.
pub fn check_corollary_a(cx: &RingContext) -> CheckReport {
    let mut report = CheckReport::new("corollary-a", &cx.id);
    let level = p_nil_omega_level(cx.ring.p());
    report.bound(format!("Omega_{level}(R°) <= Z(R°)"));
    let pr = cx.profile();
    if !(pr.left_p_nil && pr.right_p_nil) {
        return report.skip("R p-nil").finish();
    }
    let g = &cx.adjoint().group;
    let z = g.center();
    let omega = g.omega_subgroup(level);
    report.set("omega_order", omega.order()).set("center_order", z.order());
    report.require(g.is_p_central(), || {
        let x = omega.iter().find(|&x| !z.contains(x)).unwrap_or(0);
        format!(
            "ring element #{} of the Omega subgroup is not central",
            cx.adjoint().members[x]
        )
    });
    report.finish()
}

/// Ring class and adjoint-group class are at most `m`.
pub fn check_theorem_2_2(cx: &RingContext) -> CheckReport {
    let mut report = CheckReport::new("theorem-2-2", &cx.id);
    report.bound("class(R) <= m and class(R°) <= m");
    let pr = cx.profile();
    if !pr.one_sided_p_nil() {
        return report.skip(ONE_SIDED).finish();
    }
    let group_class = cx.adjoint().group.nilpotency_class();
    report
        .set("m", pr.m)
        .set("ring_class", json!(pr.class))
        .set("group_class", json!(group_class));
    let m = pr.m as usize;
    report.require(pr.class.is_some_and(|c| c <= m), || {
        format!("ring class {:?} exceeds m = {m}", pr.class)
    });
    report.require(group_class.is_some_and(|c| c <= m), || {
        format!("adjoint group class {group_class:?} exceeds m = {m}")
    });
    report.finish()
}

/// For p = 2, compares both classes against `m/2 + 1`.
pub fn probe_remark_2_2(cx: &RingContext) -> CheckReport {
    let mut report = CheckReport::new("probe-remark-2-2", &cx.id);
    report.bound("class <= m/2 + 1 (p = 2)");
    let pr = cx.profile();
    if pr.p != 2 {
        return report.skip("p = 2").finish();
    }
    if !pr.one_sided_p_nil() {
        return report.skip(ONE_SIDED).finish();
    }
    let group_class = cx.adjoint().group.nilpotency_class();
    // class <= m/2 + 1 iff 2 class <= m + 2
    let within = |c: Option<usize>| c.is_some_and(|c| 2 * c <= pr.m as usize + 2);
    let counterexamples = (!within(pr.class)) as usize + (!within(group_class)) as usize;
    report
        .set("m", pr.m)
        .set("ring_class", json!(pr.class))
        .set("group_class", json!(group_class))
        .set("counterexamples", counterexamples);
    report.require(within(pr.class), || {
        format!("ring class {:?} exceeds m/2 + 1", pr.class)
    });
    report.require(within(group_class), || {
        format!("adjoint group class {group_class:?} exceeds m/2 + 1")
    });
    report.finish()
}

/// `R / Omega_n(R^+)` keeps each one-sided p-nil property of `R`.
pub fn check_lemma_2_3(cx: &RingContext) -> CheckReport {
    let mut report = CheckReport::new("lemma-2-3", &cx.id);
    report.bound("R/Omega_n(R^+) left (right) p-nil, 1 <= n <= m");
    let pr = cx.profile();
    if !pr.one_sided_p_nil() {
        return report.skip(ONE_SIDED).finish();
    }
    let mut orders = Vec::new();
    for n in 1..=pr.m.max(1) {
        let q = quotient_ring(&cx.ring, &cx.ring.omega_additive(n)).expect("Omega_n(R^+) is an ideal");
        if pr.left_p_nil {
            report.require(q.ring.is_left_p_nil(), || format!("n={n}: quotient is not left p-nil"));
        }
        if pr.right_p_nil {
            report.require(q.ring.is_right_p_nil(), || {
                format!("n={n}: quotient is not right p-nil")
            });
        }
        orders.push(q.ring.order());
    }
    report
        .set("left_p_nil", pr.left_p_nil)
        .set("right_p_nil", pr.right_p_nil)
        .set("quotient_orders", orders)
        .finish()
}

/// `U = r.ann(R) meet Omega(R^+)` is a nontrivial ideal with `R/U` left
/// p-nil. For p = 2 both Omega levels are computed; `level` picks the one
/// scored, and the other is reported alongside.
pub fn check_lemma_2_4(cx: &RingContext, level: u32) -> CheckReport {
    let mut report = CheckReport::new("lemma-2-4", &cx.id);
    let pr = cx.profile();
    let scored = if pr.p == 2 { level } else { 1 };
    report.bound(format!(
        "U = r.ann(R) meet Omega_{scored}(R^+) nontrivial ideal, R/U left p-nil"
    ));
    if !pr.left_p_nil {
        return report.skip("R left p-nil").finish();
    }
    let levels: &[u32] = if pr.p == 2 { &[1, 2] } else { &[1] };
    let mut outcomes = Vec::new();
    for &l in levels {
        let u = cx.ring.ideal_u(l).expect("left p-nil");
        let ideal = is_ideal(&cx.ring, &u);
        let nontrivial = u.order() > 1 || cx.ring.order() == 1;
        let quotient_ok = ideal && quotient_ring(&cx.ring, &u).is_ok_and(|q| q.ring.is_left_p_nil());
        let ok = ideal && nontrivial && quotient_ok;
        report
            .set(&format!("u_order_omega{l}"), u.order())
            .set(&format!("ok_omega{l}"), ok);
        if l == scored {
            report.require(ideal, || format!("Omega_{l}: U is not an ideal"));
            report.require(nontrivial, || format!("Omega_{l}: U is trivial"));
            report.require(quotient_ok, || format!("Omega_{l}: R/U is not left p-nil"));
        }
        outcomes.push(ok);
    }
    report
        .set("omega_level", scored)
        .set("variants_diverge", outcomes.windows(2).any(|w| w[0] != w[1]))
        .finish()
}

/// `rk(R°) = d(R^+) = d(Omega_1(R°))` via subgroup enumeration.
pub fn check_theorem_b(cx: &RingContext, cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("theorem-b", &cx.id);
    report.bound("rk(R°) = d(R^+) = d(Omega_1(R°))");
    let pr = cx.profile();
    if !pr.one_sided_p_nil() {
        return report.skip(ONE_SIDED).finish();
    }
    let g = &cx.adjoint().group;
    let rank = match g.rank(cfg.subgroup_bound) {
        Ok(r) => r,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    let omega_d = g.subgroup_min_generators(&g.omega_subgroup(1));
    report
        .set("rank", rank)
        .set("d_plus", pr.d_plus)
        .set("d_omega1", omega_d);
    report.require(rank == pr.d_plus, || {
        format!("rk(R°) = {rank} but d(R^+) = {}", pr.d_plus)
    });
    report.require(rank == omega_d, || {
        format!("rk(R°) = {rank} but d(Omega_1(R°)) = {omega_d}")
    });
    report.finish()
}

/// `rk(P) <= alpha d(R^+)` for a Sylow p-subgroup `P` of `R°`, with
/// `alpha = 3` for p = 2 and 2 otherwise.
pub fn check_corollary_b(cx: &RingContext, cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("corollary-b", &cx.id);
    let pr = cx.profile();
    let alpha = if pr.p == 2 { 3 } else { 2 };
    report.bound(format!("rk(Sylow_p(R°)) <= {alpha} d(R^+)"));
    let g = &cx.adjoint().group;
    let sylow = g.sylow(pr.p);
    let p_group = crate::group::materialize(g, &sylow.elements());
    let rank = match p_group.rank(cfg.subgroup_bound) {
        Ok(r) => r,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    report
        .set("adjoint_order", g.order())
        .set("sylow_order", sylow.order())
        .set("rank", rank)
        .set("d_plus", pr.d_plus);
    report.require(rank <= alpha * pr.d_plus, || {
        format!("rank {rank} > {alpha} * {}", pr.d_plus)
    });
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::ring::builtin_ring;

    fn cx(spec: &str) -> RingContext {
        RingContext::new(spec, builtin_ring(spec).unwrap())
    }

    #[test]
    fn theorem_a_examples() {
        let r = check_theorem_a(&cx("3z27"));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.computed["omega_orders"], json!([3, 9]));
        assert_eq!(check_theorem_a(&cx("zero3x3")).verdict, Verdict::Pass);
        let r = check_theorem_a(&cx("z9"));
        assert_eq!(r.verdict, Verdict::Skipped);
        assert!(!r.hypothesis_met);
    }

    #[test]
    fn corollary_a_examples() {
        for spec in ["4z16", "3z27", "zero2"] {
            assert_eq!(check_corollary_a(&cx(spec)).verdict, Verdict::Pass, "{spec}");
        }
    }

    #[test]
    fn class_examples() {
        let r = check_theorem_2_2(&cx("3z27"));
        assert_eq!((r.verdict, r.computed["ring_class"].clone()), (Verdict::Pass, json!(2)));
        let r = check_theorem_2_2(&cx("4z16"));
        assert_eq!((r.verdict, r.computed["ring_class"].clone()), (Verdict::Pass, json!(1)));
        assert_eq!(probe_remark_2_2(&cx("3z27")).verdict, Verdict::Skipped);
        assert_eq!(probe_remark_2_2(&cx("4z16")).verdict, Verdict::Pass);
    }

    #[test]
    fn quotient_lemmas() {
        let r = check_lemma_2_3(&cx("3z27"));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.computed["quotient_orders"], json!([3, 1]));
        let r = check_lemma_2_4(&cx("4z16"), 1);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.computed["u_order_omega1"], json!(2));
        assert_eq!(check_lemma_2_3(&cx("zero5")).verdict, Verdict::Pass);
        assert_eq!(check_lemma_2_4(&cx("zero5"), 1).verdict, Verdict::Pass);
    }

    #[test]
    fn rank_checks() {
        let cfg = VerifyConfig::default();
        let r = check_theorem_b(&cx("3z27"), &cfg);
        assert_eq!((r.verdict, r.computed["rank"].clone()), (Verdict::Pass, json!(1)));
        let r = check_theorem_b(&cx("zero3x3"), &cfg);
        assert_eq!((r.verdict, r.computed["rank"].clone()), (Verdict::Pass, json!(2)));
        let r = check_corollary_b(&cx("z4"), &cfg);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(
            (r.computed["sylow_order"].clone(), r.computed["rank"].clone()),
            (json!(2), json!(1))
        );
    }
}
