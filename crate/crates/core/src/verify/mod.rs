//! One check per structural claim. Each check consumes an instance,
//! computes both sides, and returns a [`CheckReport`].

mod group_checks;
mod profile;
mod ring_checks;

use std::sync::OnceLock;

pub use group_checks::{
    check_corollary_3_2, check_corollary_d, check_der_subring_p_nil, check_lemma_3_3, check_lemma_3_4,
    check_prop_1_1_suite, check_prop_3_1, check_theorem_c, check_theorem_d, probe_remark_3_3,
};
pub use profile::{GroupProfile, RingProfile};
pub use ring_checks::{
    check_corollary_a, check_corollary_b, check_lemma_2_3, check_lemma_2_4, check_theorem_2_2, check_theorem_a,
    check_theorem_b, probe_remark_2_2,
};

pub use crate::report::{CheckReport, Verdict};

use crate::adjoint::{adjoint_group, AdjointGroup};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::morphisms::{aut_group, AutGroup, DEFAULT_AUT_BOUND, DEFAULT_AUT_COUNT_BOUND};
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Omega level of the ideal `U` scored for p = 2 (1 or 2); both are
    /// always computed and reported.
    pub lemma24_omega: u32,
    /// Largest group order whose automorphism group is computed.
    pub aut_bound: usize,
    /// Largest automorphism group kept.
    pub aut_count_bound: usize,
    /// Largest group whose subgroups are enumerated.
    pub subgroup_bound: usize,
    /// Largest group for which every abelian normal subgroup is paired.
    pub pair_order_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lemma24_omega: 1,
            aut_bound: DEFAULT_AUT_BOUND,
            aut_count_bound: DEFAULT_AUT_COUNT_BOUND,
            subgroup_bound: DEFAULT_SUBGROUP_BOUND,
            pair_order_bound: 81,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Ring,
    Group,
}

/// Every named check, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    TheoremA,
    CorollaryA,
    Theorem22,
    ProbeRemark22,
    Lemma23,
    Lemma24,
    TheoremB,
    CorollaryB,
    Prop11,
    DerSubringPNil,
    Prop31,
    Corollary32,
    Lemma33,
    ProbeRemark33,
    Lemma34,
    TheoremC,
    TheoremD,
    CorollaryD,
}

pub const ALL_CHECKS: &[Check] = &[
    Check::TheoremA,
    Check::CorollaryA,
    Check::Theorem22,
    Check::ProbeRemark22,
    Check::Lemma23,
    Check::Lemma24,
    Check::TheoremB,
    Check::CorollaryB,
    Check::Prop11,
    Check::DerSubringPNil,
    Check::Prop31,
    Check::Corollary32,
    Check::Lemma33,
    Check::ProbeRemark33,
    Check::Lemma34,
    Check::TheoremC,
    Check::TheoremD,
    Check::CorollaryD,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremA => "theorem-a",
            Check::CorollaryA => "corollary-a",
            Check::Theorem22 => "theorem-2-2",
            Check::ProbeRemark22 => "probe-remark-2-2",
            Check::Lemma23 => "lemma-2-3",
            Check::Lemma24 => "lemma-2-4",
            Check::TheoremB => "theorem-b",
            Check::CorollaryB => "corollary-b",
            Check::Prop11 => "prop-1-1",
            Check::DerSubringPNil => "der-subring-p-nil",
            Check::Prop31 => "prop-3-1",
            Check::Corollary32 => "corollary-3-2",
            Check::Lemma33 => "lemma-3-3",
            Check::ProbeRemark33 => "probe-remark-3-3",
            Check::Lemma34 => "lemma-3-4",
            Check::TheoremC => "theorem-c",
            Check::TheoremD => "theorem-d",
            Check::CorollaryD => "corollary-d",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        ALL_CHECKS.iter().copied().find(|c| c.name() == name)
    }

    pub fn kind(self) -> CheckKind {
        if self <= Check::CorollaryB {
            CheckKind::Ring
        } else {
            CheckKind::Group
        }
    }

    /// Probes record counterexamples but never affect the exit status.
    pub fn is_probe(self) -> bool {
        matches!(self, Check::ProbeRemark22 | Check::ProbeRemark33)
    }
}

/// A ring instance with lazily computed shared data.
pub struct RingContext {
    pub id: String,
    pub ring: FiniteRing,
    profile: OnceLock<RingProfile>,
    adjoint: OnceLock<AdjointGroup>,
}

impl RingContext {
    pub fn new(id: impl Into<String>, ring: FiniteRing) -> Self {
        RingContext {
            id: id.into(),
            ring,
            profile: OnceLock::new(),
            adjoint: OnceLock::new(),
        }
    }

    pub fn profile(&self) -> &RingProfile {
        self.profile.get_or_init(|| RingProfile::of(&self.ring))
    }

    pub fn adjoint(&self) -> &AdjointGroup {
        self.adjoint.get_or_init(|| adjoint_group(&self.ring))
    }

    pub fn run(&self, check: Check, cfg: &VerifyConfig) -> Vec<CheckReport> {
        let report = match check {
            Check::TheoremA => check_theorem_a(self),
            Check::CorollaryA => check_corollary_a(self),
            Check::Theorem22 => check_theorem_2_2(self),
            Check::ProbeRemark22 => probe_remark_2_2(self),
            Check::Lemma23 => check_lemma_2_3(self),
            Check::Lemma24 => check_lemma_2_4(self, cfg.lemma24_omega),
            Check::TheoremB => check_theorem_b(self, cfg),
            Check::CorollaryB => check_corollary_b(self, cfg),
            _ => return Vec::new(),
        };
        vec![report]
    }
}

/// A group instance with lazily computed shared data. Failures are kept as
/// messages so every check sees the same outcome.
pub struct GroupContext {
    pub id: String,
    pub group: FiniteGroup,
    cfg: VerifyConfig,
    profile: OnceLock<Result<GroupProfile, String>>,
    aut: OnceLock<Result<AutGroup, String>>,
    aut_sylow: OnceLock<Vec<usize>>,
    sylow_rank: OnceLock<Result<u32, String>>,
}

impl GroupContext {
    pub fn new(id: impl Into<String>, group: FiniteGroup, cfg: &VerifyConfig) -> Self {
        GroupContext {
            id: id.into(),
            group,
            cfg: cfg.clone(),
            profile: OnceLock::new(),
            aut: OnceLock::new(),
            aut_sylow: OnceLock::new(),
            sylow_rank: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    pub fn profile(&self) -> Result<&GroupProfile, &str> {
        self.profile
            .get_or_init(|| GroupProfile::of(&self.group, self.cfg.subgroup_bound).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(String::as_str)
    }

    pub fn aut(&self) -> Result<&AutGroup, &str> {
        self.aut
            .get_or_init(|| {
                aut_group(&self.group, self.cfg.aut_bound, self.cfg.aut_count_bound).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(String::as_str)
    }

    /// Members (as `AutGroup` indices) of one Sylow p-subgroup of `Aut(G)`.
    pub fn aut_sylow(&self) -> Result<&[usize], &str> {
        let aut = self.aut()?;
        let p = self.group.prime().ok_or("G is not a p-group")?;
        Ok(self.aut_sylow.get_or_init(|| crate::group::sylow_subgroup(aut, p).0))
    }

    /// Rank of the Sylow subgroup above, by subgroup enumeration.
    pub fn aut_sylow_rank(&self) -> Result<u32, &str> {
        let members = self.aut_sylow()?.to_vec();
        let aut = self.aut()?;
        self.sylow_rank
            .get_or_init(|| {
                let p = crate::group::materialize(aut, &members);
                p.rank(self.cfg.subgroup_bound).map_err(|e| e.to_string())
            })
            .clone()
            .map_err(|_| "subgroup enumeration of the Sylow subgroup exceeds the subgroup bound")
    }

    /// Abelian normal subgroups, ordered by (order, elements).
    pub fn abelian_normal_subgroups(&self) -> crate::error::Result<Vec<Subgroup>> {
        let g = &self.group;
        Ok(g.enumerate_subgroups(self.cfg.subgroup_bound.max(g.order()))?
            .into_iter()
            .filter(|n| g.is_normal(n) && n.iter().all(|x| g.centralizes(x, n)))
            .collect())
    }

    pub fn run(&self, check: Check) -> Vec<CheckReport> {
        match check {
            Check::Prop11 => check_prop_1_1_suite(self),
            Check::DerSubringPNil => check_der_subring_p_nil(self),
            Check::Prop31 => vec![check_prop_3_1(self)],
            Check::Corollary32 => vec![check_corollary_3_2(self)],
            Check::Lemma33 => vec![check_lemma_3_3(self)],
            Check::ProbeRemark33 => vec![probe_remark_3_3(self)],
            Check::Lemma34 => vec![check_lemma_3_4(self)],
            Check::TheoremC => vec![check_theorem_c(self)],
            Check::TheoremD => vec![check_theorem_d(self)],
            Check::CorollaryD => vec![check_corollary_d(self)],
            _ => Vec::new(),
        }
    }
}

/// `log_p` of the exponent of `members`, a p-subgroup of a group given by
/// its operation.
pub(crate) fn exponent_log_of<G: crate::group::GroupOps + ?Sized>(g: &G, members: &[usize], p: u64) -> u32 {
    members
        .iter()
        .map(|&x| {
            let (mut y, mut k) = (x, 1u64);
            while y != g.identity() {
                y = g.op(y, x);
                k += 1;
            }
            crate::arith::exact_log(p, k).expect("p-subgroup elements have p-power order")
        })
        .max()
        .unwrap_or(0)
}
