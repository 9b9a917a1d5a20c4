//! Batch verification: instances fan out over a bounded worker pool and
//! reports come back in input order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::corpus::Instance;
use crate::error::{Error, Result};
use crate::report::{CheckReport, Verdict};
use crate::verify::{Check, CheckKind, GroupContext, RingContext, VerifyConfig, ALL_CHECKS};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub checks: Vec<Check>,
    pub config: VerifyConfig,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            checks: ALL_CHECKS.to_vec(),
            config: VerifyConfig::default(),
            jobs: 1,
        }
    }
}

/// Parses a comma list of check names; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend_from_slice(ALL_CHECKS);
            continue;
        }
        out.push(Check::from_name(name).ok_or_else(|| Error::arg(format!("unknown check {name:?}")))?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn run_instance(inst: &Instance, checks: &[Check], cfg: &VerifyConfig) -> Vec<CheckReport> {
    match inst {
        Instance::Ring { id, ring } => {
            let cx = RingContext::new(id.clone(), ring.clone());
            checks
                .iter()
                .filter(|c| c.kind() == CheckKind::Ring)
                .flat_map(|&c| cx.run(c, cfg))
                .collect()
        }
        Instance::Group { id, group } => {
            let cx = GroupContext::new(id.clone(), group.clone(), cfg);
            checks
                .iter()
                .filter(|c| c.kind() == CheckKind::Group)
                .flat_map(|&c| cx.run(c))
                .collect()
        }
    }
}

/// Runs the selected checks on every instance. Output order depends only
/// on the inputs, never on the worker count.
pub fn run(instances: &[Instance], opts: &RunOptions) -> Result<Vec<CheckReport>> {
    let mut checks = opts.checks.clone();
    checks.sort();
    checks.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::arg(format!("worker pool: {e}")))?;
    let per_instance: Vec<Vec<CheckReport>> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(inst, &checks, &opts.config))
            .collect()
    });
    Ok(per_instance.into_iter().flatten().collect())
}

pub fn to_json_lines(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Verdict counts per check name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: BTreeMap<String, Counts>,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut rows: BTreeMap<String, Counts> = BTreeMap::new();
        for r in reports {
            let c = rows.entry(r.check.clone()).or_default();
            match r.verdict {
                Verdict::Pass => c.pass += 1,
                Verdict::Fail => c.fail += 1,
                Verdict::Skipped => c.skipped += 1,
            }
        }
        Summary { rows }
    }

    /// Failures outside probes; these decide the exit status.
    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|(name, _)| !Check::from_name(name).is_some_and(Check::is_probe))
            .map(|(_, c)| c.fail)
            .sum()
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<20} {:>6} {:>6} {:>8}\n", "check", "pass", "fail", "skipped");
        for (name, c) in &self.rows {
            let note = if Check::from_name(name).is_some_and(Check::is_probe) {
                "  (probe)"
            } else {
                ""
            };
            writeln!(out, "{name:<20} {:>6} {:>6} {:>8}{note}", c.pass, c.fail, c.skipped).expect("string write");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusManifest;

    #[test]
    fn check_lists() {
        assert_eq!(
            parse_checks("theorem-a, corollary-a,theorem-a").unwrap(),
            vec![Check::TheoremA, Check::CorollaryA]
        );
        assert_eq!(parse_checks("all").unwrap().len(), ALL_CHECKS.len());
        assert!(parse_checks("theorem-z").is_err());
    }

    #[test]
    fn z9_theorem_a_is_skipped() {
        let m = CorpusManifest::from_json(r#"{"entries":[{"id":"z9","kind":"ring","spec":"z9"}]}"#).unwrap();
        let opts = RunOptions {
            checks: vec![Check::TheoremA],
            ..RunOptions::default()
        };
        let reports = run(&m.instances().unwrap(), &opts).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Skipped);
        assert_eq!(Summary::of(&reports).failures(), 0);
    }

    #[test]
    fn probes_do_not_count() {
        let mut fail = CheckReport::new("probe-remark-2-2", "x");
        fail.require(false, || "w".into());
        let mut real = CheckReport::new("theorem-a", "y");
        real.require(false, || "w".into());
        assert_eq!(Summary::of(&[fail.clone()]).failures(), 0);
        assert_eq!(Summary::of(&[fail, real]).failures(), 1);
    }
}
