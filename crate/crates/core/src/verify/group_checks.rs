use serde_json::json;

use super::{exponent_log_of, CheckReport, GroupContext, GroupProfile};
use crate::group::{materialize, FiniteGroup, Subgroup};
use crate::morphisms::{
    aut_n, check_laue, der_subring_trivial_on_omega, enumerate_quotient_derivations, hom_ring, omega_of_module,
};

const P_GROUP: &str = "G a p-group";
const NONTRIVIAL_P_GROUP: &str = "G a nontrivial p-group";

/// Resolves the profile of a p-group or finishes the report: vacuous pass
/// for the trivial group when `vacuous`, skip otherwise.
fn p_group_profile<'a>(
    cx: &'a GroupContext,
    report: &mut CheckReport,
    vacuous: bool,
) -> Option<(&'a GroupProfile, u64)> {
    let g = &cx.group;
    if g.order() == 1 {
        if vacuous {
            report.set("trivial_group", true);
        } else {
            report.skip(NONTRIVIAL_P_GROUP);
        }
        return None;
    }
    let Some(p) = g.prime() else {
        report.skip(if vacuous { P_GROUP } else { NONTRIVIAL_P_GROUP });
        return None;
    };
    match cx.profile() {
        Ok(pr) => Some((pr, p)),
        Err(e) => {
            report.out_of_bounds(e);
            None
        }
    }
}

/// `{x in S : x^{p^n} = 1}` as a subgroup of `G`; `S` is abelian.
fn omega_in(g: &FiniteGroup, s: &Subgroup, p: u64, n: u32) -> Subgroup {
    let bound = p.pow(n);
    let set: Vec<usize> = s.iter().filter(|&x| bound.is_multiple_of(g.element_order(x))).collect();
    g.closure(&set)
}

fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort();
    v
}

/// The five parts for `S = S(G)`: `Hom(G,S)` right p-nil; the Omega
/// equalities inside `Aut_S(G)`; exponent and class at most `p^t`, `t`; and
/// `rk(Aut_S(G)) = d(G) d(S)`.
pub fn check_prop_3_1(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("prop-3-1", &cx.id);
    report.bound("(a) Hom(G,S) right p-nil; (b) Omega equalities; (c) exp <= p^t; (d) class <= t; (e) rk = d(G)d(S)");
    let Some((pr, p)) = p_group_profile(cx, &mut report, true) else {
        return report.finish();
    };
    let g = &cx.group;
    let s = g.s_subgroup().expect("p-group");
    let t = pr.t;

    // (a)
    let hom = match hom_ring(g, &s, false).and_then(|h| h.to_finite_ring(p)) {
        Ok((ring, _)) => ring,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    report.set("hom_order", hom.order());
    report.require(hom.is_right_p_nil(), || "(a) Hom(G,S) is not right p-nil".into());

    // (b)
    let (aut_s, units) = aut_n(g, &s);
    let s_group = materialize(g, &s.elements());
    let levels = aut_s.exponent_log().max(s_group.exponent_log());
    for n in 1..=levels {
        let set = aut_s.omega_set(n);
        let closure = aut_s.omega_subgroup(n);
        report.require(closure.order() == set.len(), || {
            format!(
                "(b) n={n}: Omega_n(Aut_S) has order {} but Omega_{{n}} has {}",
                closure.order(),
                set.len()
            )
        });
        let (_, units_n) = aut_n(g, &omega_in(g, &s, p, n));
        let by_power = sorted(set.iter().map(|&k| units[k].clone()).collect());
        report.require(by_power == sorted(units_n), || {
            format!("(b) n={n}: Omega_{{n}}(Aut_S) != Aut_Omega_n(S)")
        });
    }

    // (c), (d)
    let exp_log = aut_s.exponent_log();
    let class = aut_s.nilpotency_class().expect("p-group");
    report
        .set("aut_s_order", aut_s.order())
        .set("exponent_log", exp_log)
        .set("class", class)
        .set("t", t);
    report.require(exp_log <= t, || format!("(c) exp(Aut_S) = p^{exp_log} > p^{t}"));
    report.require(class <= t as usize, || format!("(d) class {class} > {t}"));

    // (e)
    let rank = match aut_s.rank(cx.config().subgroup_bound) {
        Ok(r) => r,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    let d_s = s_group.min_generators();
    report
        .set("rank", rank)
        .set("d", pr.d)
        .set("d_s", d_s)
        .set("s_trivial_convention", s.is_trivial());
    report.require(rank == pr.d * d_s, || format!("(e) rank {rank} != {} * {d_s}", pr.d));
    report.finish()
}

/// `Z(G) <= Phi(G)` implies `class(Aut_Z(G)) <= t`.
pub fn check_corollary_3_2(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("corollary-3-2", &cx.id);
    report.bound("class(Aut_Z(G)) <= t");
    let Some((pr, _)) = p_group_profile(cx, &mut report, true) else {
        return report.finish();
    };
    let g = &cx.group;
    let z = g.center();
    if !z.is_subgroup_of(&g.frattini()) {
        return report.skip("Z(G) <= Phi(G)").finish();
    }
    let (a, _) = aut_n(g, &z);
    let class = a.nilpotency_class().expect("p-group");
    report.set("aut_z_order", a.order()).set("class", class).set("t", pr.t);
    report.require(class <= pr.t as usize, || format!("class {class} > t = {}", pr.t));
    report.finish()
}

/// `exp Z(Aut_P(G)) <= p^t` with `P = P(G)`.
pub fn check_lemma_3_3(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("lemma-3-3", &cx.id);
    report.bound("exp Z(Aut_P(G)) <= p^t");
    let Some((pr, _)) = p_group_profile(cx, &mut report, true) else {
        return report.finish();
    };
    let g = &cx.group;
    let (a, _) = aut_n(g, &g.p_subgroup().expect("p-group"));
    let z = materialize(&a, &a.center().elements());
    let e = z.exponent_log();
    report
        .set("aut_p_order", a.order())
        .set("center_exponent_log", e)
        .set("t", pr.t);
    report.require(e <= pr.t, || format!("center exponent p^{e} > p^{}", pr.t));
    report.finish()
}

/// For p > 2, whether every central element of a Sylow p-subgroup of
/// `Aut(G)` moves each `x` within `Phi(G)`.
pub fn probe_remark_3_3(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("probe-remark-3-3", &cx.id);
    report.bound("x^-1 u(x) in Phi(G) for u in Z(Sylow_p(Aut G))");
    let g = &cx.group;
    match g.prime() {
        Some(p) if p > 2 => {}
        _ => return report.skip("p > 2").finish(),
    }
    let (aut, members) = match cx.aut().and_then(|a| Ok((a, cx.aut_sylow()?))) {
        Ok(x) => x,
        Err(e) => return report.out_of_bounds(e).finish(),
    };
    let sylow = materialize(aut, members);
    let phi = g.frattini();
    let center = sylow.center();
    let counterexamples = center
        .iter()
        .filter(|&z| !g.moves_into(&aut.members[members[z]], &phi))
        .count();
    report
        .set("sylow_order", members.len())
        .set("center_order", center.order())
        .set("counterexamples", counterexamples);
    report.require(counterexamples == 0, || {
        format!("{counterexamples} central automorphisms leave Phi(G)")
    });
    report.finish()
}

/// `class(Aut_Phi(G)) <= min(r1, s1) - 1 <= tc - 1`, with every member
/// acting trivially on each lower p-central section.
pub fn check_lemma_3_4(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("lemma-3-4", &cx.id);
    report.bound("class(Aut_Phi(G)) <= min(r1,s1) - 1 <= tc - 1");
    let Some((pr, _)) = p_group_profile(cx, &mut report, false) else {
        return report.finish();
    };
    let g = &cx.group;
    let (a, units) = aut_n(g, &g.frattini());
    let class = a.nilpotency_class().expect("p-group") as u32;
    let min_sum = pr.r1.min(pr.s1);
    report
        .set("aut_phi_order", a.order())
        .set("class", class)
        .set("r1", pr.r1)
        .set("s1", pr.s1)
        .set("tc", pr.t * pr.c);
    report.require(pr.r1 <= pr.r * pr.c, || {
        format!("r1 = {} > rc = {}", pr.r1, pr.r * pr.c)
    });
    report.require(pr.s1 <= pr.s * pr.c, || {
        format!("s1 = {} > sc = {}", pr.s1, pr.s * pr.c)
    });
    report.require(class < min_sum, || {
        format!("class {class} > min(r1,s1) - 1 = {}", min_sum as i64 - 1)
    });
    report.require(class < pr.t * pr.c, || {
        format!("class {class} > tc - 1 = {}", (pr.t * pr.c) as i64 - 1)
    });

    let series = g.lower_p_central_series().expect("p-group");
    report.set("p_central_orders", series.iter().map(|h| h.order()).collect::<Vec<_>>());
    'units: for (k, u) in units.iter().enumerate() {
        for (i, w) in series.windows(2).enumerate() {
            let below = w[1].mask(g.order());
            if let Some(x) = w[0].iter().find(|&x| !below[g.op(g.inv(x), u[x])]) {
                report.require(false, || {
                    format!("automorphism #{k} moves element {x} of P_{} outside P_{}", i + 1, i + 2)
                });
                break 'units;
            }
        }
    }
    report.finish()
}

/// `exp(Aut_P(G)) <= p^{t^2 c - t}` and `exp(Sylow_p(Aut G)) <= p^{t^2 c -
/// t + d - 1}` (`2d - 1` for p = 2).
pub fn check_theorem_c(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("theorem-c", &cx.id);
    let Some((pr, p)) = p_group_profile(cx, &mut report, false) else {
        report.bound("exp(Aut_P(G)) <= p^(t^2c-t)");
        return report.finish();
    };
    let g = &cx.group;
    let (t, c, d) = (pr.t, pr.c, pr.d);
    let base = t * t * c - t;
    let sylow_bound = if p == 2 { base + 2 * d - 1 } else { base + d - 1 };
    report.bound(format!(
        "exp(Aut_P(G)) <= p^{base}, exp(Sylow_p(Aut G)) <= p^{sylow_bound}"
    ));
    let (a, _) = aut_n(g, &g.p_subgroup().expect("p-group"));
    let e = a.exponent_log();
    report.set("aut_p_order", a.order()).set("aut_p_exponent_log", e);
    report.require(e <= base, || format!("exp(Aut_P(G)) = p^{e} > p^{base}"));
    let (aut, members) = match cx.aut().and_then(|a| Ok((a, cx.aut_sylow()?))) {
        Ok(x) => x,
        Err(e) => return report.out_of_bounds(e).finish(),
    };
    let se = exponent_log_of(aut, members, p);
    report
        .set("aut_order", aut.order())
        .set("sylow_order", members.len())
        .set("sylow_exponent_log", se);
    report.require(se <= sylow_bound, || format!("exp(Sylow) = p^{se} > p^{sylow_bound}"));
    report.finish()
}

/// Floor of `d d' + d^2/4` (p > 2) or `d d' + (3d^2 - d)/2` (p = 2).
pub(crate) fn theorem_d_bound(p: u64, d: u32, d_prime: u32) -> u32 {
    if p == 2 {
        d * d_prime + (3 * d * d - d) / 2
    } else {
        (4 * d * d_prime + d * d) / 4
    }
}

/// Floor of `9k^2/4` (p > 2) or `(7k^2 - k)/2` (p = 2).
pub(crate) fn corollary_d_bound(p: u64, k: u32) -> u32 {
    if p == 2 {
        (7 * k * k - k) / 2
    } else {
        9 * k * k / 4
    }
}

/// Every subgroup of a Sylow p-subgroup of `Aut(G)`, `G` abelian, needs at
/// most the Theorem D bound of generators.
pub fn check_theorem_d(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("theorem-d", &cx.id);
    let Some((pr, p)) = p_group_profile(cx, &mut report, true) else {
        report.bound("rk(Sylow_p(Aut G)) <= dd' + d^2/4 (p > 2), dd' + (3d^2-d)/2 (p = 2)");
        return report.finish();
    };
    let g = &cx.group;
    if !g.is_abelian() {
        return report.skip("G abelian").finish();
    }
    let d = match g.rank(cx.config().subgroup_bound) {
        Ok(d) => d,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    let bound = theorem_d_bound(p, d, pr.d_prime);
    report.bound(format!("rk(Sylow_p(Aut G)) <= {bound}"));
    report
        .set("d", d)
        .set("d_prime", pr.d_prime)
        .set("d_min_generators", pr.d);
    // rank and d(G) agree on abelian p-groups
    report.require(d == pr.d, || format!("rank {d} != d(G) = {}", pr.d));
    match cx.aut_sylow_rank() {
        Ok(rank) => {
            report
                .set("sylow_order", cx.aut_sylow().map(<[usize]>::len).unwrap_or(0))
                .set("sylow_rank", rank);
            report.require(rank <= bound, || {
                format!("a subgroup of the Sylow needs {rank} > {bound} generators")
            });
        }
        Err(e) => {
            report.out_of_bounds(e);
        }
    }
    report.finish()
}

/// Every subgroup of a Sylow p-subgroup of `Aut(G)` needs at most
/// `9k^2/4` (p > 2) or `(7k^2 - k)/2` (p = 2) generators, `k = rk(G)`.
pub fn check_corollary_d(cx: &GroupContext) -> CheckReport {
    let mut report = CheckReport::new("corollary-d", &cx.id);
    let Some((_, p)) = p_group_profile(cx, &mut report, true) else {
        report.bound("rk(Sylow_p(Aut G)) <= 9k^2/4 (p > 2), (7k^2-k)/2 (p = 2)");
        return report.finish();
    };
    let k = match cx.group.rank(cx.config().subgroup_bound) {
        Ok(k) => k,
        Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
    };
    let bound = corollary_d_bound(p, k);
    report.bound(format!("rk(Sylow_p(Aut G)) <= {bound}"));
    report.set("k", k);
    match cx.aut_sylow_rank() {
        Ok(rank) => {
            report
                .set("sylow_order", cx.aut_sylow().map(<[usize]>::len).unwrap_or(0))
                .set("sylow_rank", rank);
            report.require(rank <= bound, || {
                format!("a subgroup of the Sylow needs {rank} > {bound} generators")
            });
        }
        Err(e) => {
            report.out_of_bounds(e);
        }
    }
    report.finish()
}

fn pair_id(cx: &GroupContext, n: &Subgroup) -> String {
    let elems: Vec<String> = n.iter().map(|x| x.to_string()).collect();
    format!("{}/N={{{}}}", cx.id, elems.join(","))
}

/// Pairs `(G, N)` for every abelian normal `N`, or a single out-of-bounds
/// report.
fn pairs(cx: &GroupContext, check: &str) -> Result<Vec<Subgroup>, CheckReport> {
    let bound = cx.config().pair_order_bound;
    let mut report = CheckReport::new(check, &cx.id);
    if cx.group.order() > bound {
        return Err(report
            .out_of_bounds(&format!("pairs are enumerated for |G| <= {bound}"))
            .finish());
    }
    cx.abelian_normal_subgroups()
        .map_err(|e| report.out_of_bounds(&e.to_string()).finish())
}

/// The Laue correspondence on every pair `(G, N)`.
pub fn check_prop_1_1_suite(cx: &GroupContext) -> Vec<CheckReport> {
    match pairs(cx, "prop-1-1") {
        Ok(ns) => ns.iter().map(|n| check_laue(&cx.group, n, &pair_id(cx, n))).collect(),
        Err(r) => vec![r],
    }
}

/// Derivations vanishing on `Omega_1(N)` (`Omega_2` for p = 2) form a left
/// p-nil ring; its order is compared with `|Der(G/Omega(N), N)|`.
pub fn check_der_subring_p_nil(cx: &GroupContext) -> Vec<CheckReport> {
    let g = &cx.group;
    let Some(p) = g.prime() else {
        let mut report = CheckReport::new("der-subring-p-nil", &cx.id);
        return vec![report
            .skip(if g.order() == 1 { NONTRIVIAL_P_GROUP } else { P_GROUP })
            .finish()];
    };
    let ns = match pairs(cx, "der-subring-p-nil") {
        Ok(ns) => ns,
        Err(r) => return vec![r],
    };
    ns.iter()
        .map(|n| {
            let mut report = CheckReport::new("der-subring-p-nil", &pair_id(cx, n));
            report.bound("Der_Omega(G,N) left p-nil");
            let ring = match der_subring_trivial_on_omega(g, n).and_then(|t| t.to_finite_ring(p)) {
                Ok((ring, _)) => ring,
                Err(e) => return report.out_of_bounds(&e.to_string()).finish(),
            };
            let omega = omega_of_module(g, n);
            let quotient = enumerate_quotient_derivations(g, &omega, n).map(|(_, d)| d.len());
            report
                .set("order", ring.order())
                .set("omega_order", omega.order())
                .set("quotient_der_order", json!(quotient.as_ref().ok()))
                .set("orders_equal", quotient.as_ref().is_ok_and(|&q| q == ring.order()));
            report.require(ring.is_left_p_nil(), || {
                format!(
                    "not left p-nil: {} elements, {} structure constants",
                    ring.order(),
                    ring.dim()
                )
            });
            report.finish()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;
    use crate::report::Verdict;
    use crate::verify::VerifyConfig;

    fn cx(spec: &str) -> GroupContext {
        GroupContext::new(spec, builtin_group(spec).unwrap(), &VerifyConfig::default())
    }

    #[test]
    fn prop_3_1_examples() {
        let r = check_prop_3_1(&cx("c9"));
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(
            (r.computed["exponent_log"].clone(), r.computed["rank"].clone()),
            (json!(1), json!(1))
        );
        let r = check_prop_3_1(&cx("q8"));
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(
            (r.computed["aut_s_order"].clone(), r.computed["rank"].clone()),
            (json!(4), json!(2))
        );
        let r = check_prop_3_1(&cx("c2xc2xc2"));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.computed["s_trivial_convention"], json!(true));
        assert_eq!(check_prop_3_1(&cx("c6")).verdict, Verdict::Skipped);
    }

    #[test]
    fn corollary_3_2_examples() {
        assert_eq!(check_corollary_3_2(&cx("q8")).verdict, Verdict::Pass);
        assert_eq!(check_corollary_3_2(&cx("c9")).verdict, Verdict::Skipped);
        let r = check_corollary_3_2(&cx("d8"));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn lemma_3_3_examples() {
        let r = check_lemma_3_3(&cx("q8"));
        assert_eq!(
            (r.verdict, r.computed["center_exponent_log"].clone()),
            (Verdict::Pass, json!(1))
        );
        let r = check_lemma_3_3(&cx("c9"));
        assert_eq!(
            (r.verdict, r.computed["aut_p_order"].clone()),
            (Verdict::Pass, json!(3))
        );
        let r = check_lemma_3_3(&cx("c3xc3"));
        assert_eq!(
            (r.verdict, r.computed["aut_p_order"].clone()),
            (Verdict::Pass, json!(1))
        );
    }

    #[test]
    fn lemma_3_4_examples() {
        let r = check_lemma_3_4(&cx("c4"));
        assert_eq!(
            (r.verdict, r.computed["aut_phi_order"].clone()),
            (Verdict::Pass, json!(2))
        );
        let r = check_lemma_3_4(&cx("q8"));
        assert_eq!((r.verdict, r.computed["class"].clone()), (Verdict::Pass, json!(1)));
        let r = check_lemma_3_4(&cx("c2xc2"));
        assert_eq!((r.verdict, r.computed["class"].clone()), (Verdict::Pass, json!(0)));
        assert_eq!(check_lemma_3_4(&cx("c1")).verdict, Verdict::Skipped);
    }

    #[test]
    fn theorem_c_examples() {
        let r = check_theorem_c(&cx("q8"));
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        // Sylow-2 of Aut(Q8) = S4 is D8
        assert_eq!(
            (
                r.computed["sylow_order"].clone(),
                r.computed["sylow_exponent_log"].clone()
            ),
            (json!(8), json!(2))
        );
        let r = check_theorem_c(&cx("c9"));
        assert_eq!(
            (r.verdict, r.computed["aut_p_exponent_log"].clone()),
            (Verdict::Pass, json!(1))
        );
        let r = check_theorem_c(&cx("c5"));
        assert_eq!(
            (r.verdict, r.computed["aut_p_order"].clone()),
            (Verdict::Pass, json!(1))
        );
    }

    #[test]
    fn theorem_d_examples() {
        assert_eq!(theorem_d_bound(3, 2, 0), 1);
        assert_eq!(theorem_d_bound(2, 1, 0), 1);
        assert_eq!(corollary_d_bound(3, 1), 2);
        assert_eq!(corollary_d_bound(2, 2), 13);
        let r = check_theorem_d(&cx("c3xc3"));
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(
            (r.computed["d_prime"].clone(), r.computed["sylow_rank"].clone()),
            (json!(0), json!(1))
        );
        let r = check_theorem_d(&cx("c4"));
        assert_eq!((r.verdict, r.computed["d_prime"].clone()), (Verdict::Pass, json!(0)));
        assert_eq!(check_theorem_d(&cx("c1")).verdict, Verdict::Pass);
        assert_eq!(check_theorem_d(&cx("q8")).verdict, Verdict::Skipped);
        assert_eq!(check_corollary_d(&cx("q8")).verdict, Verdict::Pass);
    }

    #[test]
    fn pair_suites() {
        let reports = check_prop_1_1_suite(&cx("c4"));
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
        assert_eq!(reports[1].instance, "c4/N={0,2}");
        let reports = check_der_subring_p_nil(&cx("c8"));
        assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
        assert_eq!(check_der_subring_p_nil(&cx("s3"))[0].verdict, Verdict::Skipped);
    }
}
