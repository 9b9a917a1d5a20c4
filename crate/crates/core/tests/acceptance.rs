//! Acceptance suite. Runs the builtin corpus once, then scores each
//! criterion against the reports and against direct recomputation, printing
//! one line per criterion. Exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use pnil_core::adjoint::adjoint_group;
use pnil_core::corpus::{CorpusManifest, Instance};
use pnil_core::group::FiniteGroup;
use pnil_core::morphisms::{aut_group, aut_n, hom_ring, DEFAULT_AUT_COUNT_BOUND};
use pnil_core::ring::{builtin_ring, FiniteRing};
use pnil_core::runner::{parse_checks, run, to_json_lines, RunOptions, Summary};
use pnil_core::verify::{CheckReport, Verdict, VerifyConfig, ALL_CHECKS};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Corpus) -> Outcome);

struct Corpus {
    instances: Vec<Instance>,
    reports: Vec<CheckReport>,
}

impl Corpus {
    fn rings(&self) -> impl Iterator<Item = (&str, &FiniteRing)> {
        self.instances.iter().filter_map(|i| match i {
            Instance::Ring { id, ring } => Some((id.as_str(), ring)),
            Instance::Group { .. } => None,
        })
    }

    fn groups(&self) -> impl Iterator<Item = (&str, &FiniteGroup)> {
        self.instances.iter().filter_map(|i| match i {
            Instance::Group { id, group } => Some((id.as_str(), group)),
            Instance::Ring { .. } => None,
        })
    }

    fn p_groups_up_to(&self, bound: usize) -> impl Iterator<Item = (&str, &FiniteGroup)> {
        self.groups().filter(move |(_, g)| g.is_p_group() && g.order() <= bound)
    }

    /// Reports of one check keyed by instance id.
    fn by_instance(&self, check: &str) -> BTreeMap<&str, &CheckReport> {
        self.reports
            .iter()
            .filter(|r| r.check == check)
            .map(|r| (r.instance.as_str(), r))
            .collect()
    }
}

fn no_failures<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Result<usize, String> {
    let mut passed = 0;
    for r in reports {
        match r.verdict {
            Verdict::Fail => return Err(format!("{} failed on {}: {:?}", r.check, r.instance, r.witness)),
            Verdict::Pass if r.hypothesis_met => passed += 1,
            _ => {}
        }
    }
    Ok(passed)
}

/// The report for `id` must exist, meet its hypothesis and pass.
fn must_pass(reports: &BTreeMap<&str, &CheckReport>, check: &str, id: &str) -> Result<(), String> {
    match reports.get(id) {
        None => Err(format!("{check}: no report for {id}")),
        Some(r) if !r.hypothesis_met => Err(format!(
            "{check}: {id} skipped ({:?})",
            r.computed.get("failed_hypothesis")
        )),
        Some(r) if r.verdict != Verdict::Pass => Err(format!("{check}: {id} {:?}: {:?}", r.verdict, r.witness)),
        Some(_) => Ok(()),
    }
}

fn one_sided(r: &FiniteRing) -> bool {
    r.is_left_p_nil() || r.is_right_p_nil()
}

/// Circle order of ring element `x`, or `None` if `x` is not quasi-invertible.
fn circle_order(r: &FiniteRing, x: usize) -> Option<u64> {
    let zero = r.index(&r.zero());
    let mut y = x;
    for k in 1..=r.order() as u64 {
        if y == zero {
            return Some(k);
        }
        y = r.circle_idx(y, x);
    }
    None
}

fn additive_order(r: &FiniteRing, x: usize) -> u64 {
    let zero = r.index(&r.zero());
    let mut y = x;
    let mut k = 1;
    while y != zero {
        y = r.add_idx(y, x);
        k += 1;
    }
    k
}

fn omega_level(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// Every subgroup, by adjoining one element at a time starting from cyclic ones.
fn all_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| g.closure(&[x]).elements()).collect();
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(x);
            let k = g.closure(&seed).elements();
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    seen
}

fn criterion_1(c: &Corpus) -> Outcome {
    let reports = c.by_instance("prop-1-1");
    let mut pairs = 0;
    for (id, g) in c.groups().filter(|(_, g)| g.order() <= 16) {
        for h in all_subgroups(g) {
            let sub = g.subgroup(&h).map_err(|e| e.to_string())?;
            let abelian = h.iter().all(|&x| h.iter().all(|&y| g.op(x, y) == g.op(y, x)));
            if !abelian || !g.is_normal(&sub) {
                continue;
            }
            let key = format!(
                "{id}/N={{{}}}",
                h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            );
            must_pass(&reports, "prop-1-1", &key)?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (G, N) pairs with |G| <= 16"))
}

fn criterion_2(c: &Corpus) -> Outcome {
    let reports = c.by_instance("theorem-a");
    let passed = no_failures(reports.values().copied())?;
    let mut rings = 0;
    for (id, r) in c.rings().filter(|(_, r)| one_sided(r)) {
        must_pass(&reports, "theorem-a", id)?;
        let m = r.additive_exponent_log();
        let p = r.p();
        for n in 1..=m {
            let pn = p.pow(n);
            let circle: BTreeSet<usize> = (0..r.order())
                .filter(|&x| circle_order(r, x).is_some_and(|o| pn % o == 0))
                .collect();
            let additive: BTreeSet<usize> = (0..r.order()).filter(|&x| pn % additive_order(r, x) == 0).collect();
            if circle != additive {
                return Err(format!("{id}: element sets differ at n = {n}"));
            }
            if circle
                .iter()
                .any(|&x| circle.iter().any(|&y| !circle.contains(&r.circle_idx(x, y))))
            {
                return Err(format!("{id}: Omega set at n = {n} is not closed"));
            }
        }
        rings += 1;
    }
    if rings == 0 {
        return Err("no one-sided p-nil rings in corpus".into());
    }
    Ok(format!(
        "{rings} one-sided p-nil rings, {passed} passing reports, sets recomputed"
    ))
}

fn criterion_3(c: &Corpus) -> Outcome {
    let reports = c.by_instance("corollary-a");
    no_failures(reports.values().copied())?;
    let mut rings = 0;
    for (id, r) in c.rings().filter(|(_, r)| r.is_p_nil()) {
        must_pass(&reports, "corollary-a", id)?;
        let pl = r.p().pow(omega_level(r.p()));
        let units: Vec<usize> = (0..r.order()).filter(|&x| circle_order(r, x).is_some()).collect();
        for &x in units
            .iter()
            .filter(|&&x| circle_order(r, x).is_some_and(|o| pl % o == 0))
        {
            if let Some(&u) = units.iter().find(|&&u| r.circle_idx(x, u) != r.circle_idx(u, x)) {
                return Err(format!("{id}: #{x} does not commute with #{u}"));
            }
        }
        rings += 1;
    }
    Ok(format!("{rings} p-nil rings p-central"))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let reports = c.by_instance("theorem-2-2");
    no_failures(reports.values().copied())?;
    let mut rings = 0;
    for (id, r) in c.rings().filter(|(_, r)| one_sided(r)) {
        must_pass(&reports, "theorem-2-2", id)?;
        let m = r.additive_exponent_log() as usize;
        let ring_class = r.nilpotency_class().ok_or(format!("{id}: ring not nilpotent"))?;
        let group_class = adjoint_group(r)
            .group
            .nilpotency_class()
            .ok_or(format!("{id}: R° not nilpotent"))?;
        if ring_class > m || group_class > m {
            return Err(format!("{id}: classes {ring_class}, {group_class} exceed m = {m}"));
        }
        rings += 1;
    }
    let probes: Vec<&CheckReport> = c
        .reports
        .iter()
        .filter(|r| r.check == "probe-remark-2-2" && r.hypothesis_met)
        .collect();
    if probes.is_empty() || probes.iter().any(|r| !r.computed.contains_key("counterexamples")) {
        return Err("probe-remark-2-2 did not report counterexamples".into());
    }
    let counter: u64 = probes
        .iter()
        .filter_map(|r| r.computed["counterexamples"].as_u64())
        .sum();
    if Summary::of(&c.reports).failures() != 0 {
        return Err("run has failures".into());
    }
    Ok(format!(
        "{rings} rings; probe ran on {} rings, {counter} counterexamples",
        probes.len()
    ))
}

fn criterion_5(c: &Corpus) -> Outcome {
    let mut details = Vec::new();
    for level in [1, 2] {
        let opts = RunOptions {
            checks: parse_checks("lemma-2-3,lemma-2-4").map_err(|e| e.to_string())?,
            config: VerifyConfig {
                lemma24_omega: level,
                ..VerifyConfig::default()
            },
            jobs: 1,
        };
        let reports = run(&c.instances, &opts).map_err(|e| e.to_string())?;
        let passed = no_failures(&reports)?;
        let lemma24: Vec<&CheckReport> = reports
            .iter()
            .filter(|r| r.check == "lemma-2-4" && r.hypothesis_met)
            .collect();
        if lemma24.is_empty() {
            return Err("no ring satisfies the lemma-2-4 hypothesis".into());
        }
        let p2: Vec<&&CheckReport> = lemma24
            .iter()
            .filter(|r| r.computed.contains_key("ok_omega2"))
            .collect();
        if p2.iter().any(|r| !r.computed.contains_key("variants_diverge")) {
            return Err("variant divergence not reported".into());
        }
        let diverging = p2.iter().filter(|r| r.computed["variants_diverge"] == true).count();
        details.push(format!(
            "omega {level}: {passed} passing, {} p = 2 rings, {diverging} diverge",
            p2.len()
        ));
    }
    Ok(details.join("; "))
}

fn criterion_6(c: &Corpus) -> Outcome {
    let b = c.by_instance("theorem-b");
    let cb = c.by_instance("corollary-b");
    no_failures(b.values().copied())?;
    no_failures(cb.values().copied())?;
    let mut with_b = 0;
    let mut with_cb = 0;
    for (id, r) in c.rings() {
        if one_sided(r) && r.order() <= 81 {
            must_pass(&b, "theorem-b", id)?;
            with_b += 1;
        }
        must_pass(&cb, "corollary-b", id)?;
        with_cb += 1;
    }
    for id in ["z4", "z9"] {
        must_pass(&cb, "corollary-b", id)?;
    }
    let non_p_nil = c.rings().filter(|(_, r)| !r.is_p_nil()).count();
    Ok(format!(
        "theorem-b on {with_b} rings; corollary-b on {with_cb} rings ({non_p_nil} not p-nil)"
    ))
}

fn criterion_7(c: &Corpus) -> Outcome {
    let reports = c.by_instance("prop-3-1");
    no_failures(reports.values().copied())?;
    let mut groups = 0;
    for (id, g) in c.p_groups_up_to(32) {
        must_pass(&reports, "prop-3-1", id)?;
        if let Some(p) = g.prime() {
            let s = g.s_subgroup().map_err(|e| e.to_string())?;
            let (ring, _) = hom_ring(g, &s, false)
                .and_then(|t| t.to_finite_ring(p))
                .map_err(|e| format!("{id}: {e}"))?;
            if !ring.is_right_p_nil() {
                return Err(format!("{id}: Hom(G, S(G)) not right p-nil"));
            }
        }
        groups += 1;
    }
    Ok(format!("{groups} p-groups of order <= 32"))
}

fn criterion_8(c: &Corpus) -> Outcome {
    let reports = c.by_instance("theorem-c");
    no_failures(reports.values().copied())?;
    let mut groups = 0;
    for (id, _) in c.p_groups_up_to(32).filter(|(_, g)| g.order() > 1) {
        must_pass(&reports, "theorem-c", id)?;
        groups += 1;
    }
    Ok(format!("{groups} nontrivial p-groups of order <= 32"))
}

fn criterion_9(c: &Corpus) -> Outcome {
    let mut details = Vec::new();
    for check in ["lemma-3-3", "lemma-3-4", "corollary-3-2"] {
        let reports = c.by_instance(check);
        let passed = no_failures(reports.values().copied())?;
        if passed == 0 {
            return Err(format!("{check}: no instance meets the hypothesis"));
        }
        details.push(format!("{check} {passed}"));
    }
    for (id, _) in c.p_groups_up_to(32).filter(|(_, g)| g.order() > 1) {
        for check in ["lemma-3-3", "lemma-3-4"] {
            must_pass(&c.by_instance(check), check, id)?;
        }
    }
    let probes = c.by_instance("probe-remark-3-3");
    if probes.len() != c.groups().count() {
        return Err("probe-remark-3-3 missing for some groups".into());
    }
    let counter = probes.values().filter(|r| r.verdict == Verdict::Fail).count();
    details.push(format!("probe-remark-3-3 counterexamples {counter}"));
    Ok(details.join(", "))
}

fn criterion_10(c: &Corpus) -> Outcome {
    let d = c.by_instance("theorem-d");
    let cd = c.by_instance("corollary-d");
    no_failures(d.values().copied())?;
    no_failures(cd.values().copied())?;
    let mut abelian = 0;
    for (id, _) in c.p_groups_up_to(81).filter(|(_, g)| g.is_abelian()) {
        must_pass(&d, "theorem-d", id)?;
        abelian += 1;
    }
    let mut all = 0;
    for (id, _) in c.p_groups_up_to(32) {
        must_pass(&cd, "corollary-d", id)?;
        all += 1;
    }
    Ok(format!(
        "theorem-d on {abelian} abelian p-groups, corollary-d on {all} p-groups"
    ))
}

fn criterion_11(c: &Corpus) -> Outcome {
    let baseline = to_json_lines(&c.reports);
    let opts = RunOptions {
        jobs: 3,
        ..RunOptions::default()
    };
    let other = to_json_lines(&run(&c.instances, &opts).map_err(|e| e.to_string())?);
    if baseline != other {
        return Err("reports differ between --jobs 1 and --jobs 3".into());
    }
    Ok(format!("{} report bytes identical for 1 and 3 workers", baseline.len()))
}

fn criterion_12(_: &Corpus) -> Outcome {
    let r = builtin_ring("3z27").map_err(|e| e.to_string())?;
    let a = adjoint_group(&r);
    if a.order() != 9 || a.group.exponent() != 9 {
        return Err(format!(
            "adjoint group of 3Z/27Z: order {}, exponent {}",
            a.order(),
            a.group.exponent()
        ));
    }
    // ring element k stands for 3k in Z/27Z
    let omega = a.ring_indices(&a.group.omega_subgroup(1));
    let values: Vec<u64> = omega.iter().map(|&i| 3 * r.element(i).coords[0]).collect();
    if values != [0, 9, 18] {
        return Err(format!("Omega_1 of 3Z/27Z is {values:?}"));
    }

    let q8 = pnil_core::group::builtin_group("q8").map_err(|e| e.to_string())?;
    let (az, _) = aut_n(&q8, &q8.center());
    if az.order() != 4 || !az.is_abelian() || az.exponent() != 2 {
        return Err(format!("Aut_Z(Q8): order {}, exponent {}", az.order(), az.exponent()));
    }
    let aut = aut_group(&q8, 81, DEFAULT_AUT_COUNT_BOUND).map_err(|e| e.to_string())?;
    if aut.order() != 24 {
        return Err(format!("|Aut(Q8)| = {}", aut.order()));
    }
    Ok("3Z/27Z° = C9 with Omega_1 = {0, 9, 18}; Aut_Z(Q8) = C2 x C2; |Aut(Q8)| = 24".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let instances = CorpusManifest::default_corpus()
        .instances()
        .expect("builtin corpus loads");
    let opts = RunOptions {
        checks: ALL_CHECKS.to_vec(),
        ..RunOptions::default()
    };
    let reports = run(&instances, &opts).expect("corpus run");
    let corpus = Corpus { instances, reports };
    println!(
        "corpus: {} instances, {} reports, {} failures ({:.1}s)",
        corpus.instances.len(),
        corpus.reports.len(),
        Summary::of(&corpus.reports).failures(),
        start.elapsed().as_secs_f64()
    );

    let criteria: [Criterion; 12] = [
        ("Laue correspondence", criterion_1),
        ("Omega sets of adjoint and additive groups", criterion_2),
        ("p-central adjoint groups", criterion_3),
        ("nilpotency classes and the p = 2 probe", criterion_4),
        ("quotients and the ideal U at both omega levels", criterion_5),
        ("ranks of adjoint groups", criterion_6),
        ("Hom and Aut_S structure", criterion_7),
        ("exponent of Aut_P", criterion_8),
        ("center exponent, Aut_Phi class, S <= Phi", criterion_9),
        ("generator bounds in Sylow subgroups of Aut", criterion_10),
        ("determinism across worker counts", criterion_11),
        ("numeric anchors", criterion_12),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f(&corpus);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
