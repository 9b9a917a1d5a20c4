use super::{FiniteGroup, Subgroup};
use crate::arith::{exact_log, lcm};
use crate::error::{Error, Result};

/// `G/N` with least-index coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// Coset (as an element of `group`) of each element of the parent.
    pub projection: Vec<usize>,
    /// Least parent index in each coset.
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    pub fn center(&self) -> Subgroup {
        let n = self.order();
        Subgroup::from_sorted(
            (0..n)
                .filter(|&z| (0..n).all(|g| self.op(z, g) == self.op(g, z)))
                .map(|z| z as u32)
                .collect(),
        )
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            (0..self.order())
                .filter(|&x| self.centralizes(x, h))
                .map(|x| x as u32)
                .collect(),
        )
    }

    /// `[H, K]`, generated by all `[h, k]`.
    pub fn commutator_of(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut comms: Vec<usize> = h
            .iter()
            .flat_map(|a| k.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_of(&g, &g)
    }

    /// `gamma_1 = G, gamma_{i+1} = [gamma_i, G]`, up to and including the term
    /// where the series stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = self.commutator_of(series.last().unwrap(), &g);
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// `Z_0 = 1, Z_{i+1} = {g : [g, x] in Z_i for all x}`, up to stabilization.
    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut series = vec![self.trivial_subgroup()];
        loop {
            let mask = series.last().unwrap().mask(n);
            let next = Subgroup::from_sorted(
                (0..n)
                    .filter(|&g| (0..n).all(|x| mask[self.commutator(g, x)]))
                    .map(|g| g as u32)
                    .collect(),
            );
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    /// Class of a nilpotent group; `None` when the lower central series
    /// stalls above the trivial subgroup.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        lcs.last().unwrap().is_trivial().then(|| lcs.len() - 1)
    }

    fn require_p(&self, what: &str) -> Result<Option<u64>> {
        if !self.is_p_group() {
            return Err(Error::arg(format!(
                "{what} requires a p-group (order {})",
                self.order()
            )));
        }
        Ok(self.prime())
    }

    /// `P_1 = G, P_{i+1} = P_i^p [P_i, G]`, ending at the trivial subgroup.
    pub fn lower_p_central_series(&self) -> Result<Vec<Subgroup>> {
        let Some(p) = self.require_p("lower p-central series")? else {
            return Ok(vec![self.whole()]);
        };
        let g = self.whole();
        let mut series = vec![g.clone()];
        while !series.last().unwrap().is_trivial() {
            let cur = series.last().unwrap();
            let mut gens: Vec<usize> = cur.iter().map(|x| self.pow(x, p)).collect();
            gens.extend(self.commutator_of(cur, &g).iter());
            series.push(self.closure(&gens));
        }
        Ok(series)
    }

    /// Subgroup generated by `p^n`-th powers (the group's own prime).
    pub fn agemo(&self, n: u32) -> Subgroup {
        match self.prime() {
            Some(p) => self.power_subgroup(p.pow(n)),
            None if self.order() == 1 => self.whole(),
            None => self.power_subgroup(0),
        }
    }

    /// Subgroup generated by all `k`-th powers.
    pub fn power_subgroup(&self, k: u64) -> Subgroup {
        let gens: Vec<usize> = (0..self.order()).map(|x| self.pow(x, k)).collect();
        self.closure(&gens)
    }

    /// `Phi(G) = G' G^p` for p-groups; other groups go through the
    /// maximal-subgroup intersection.
    pub fn frattini(&self) -> Subgroup {
        if self.order() == 1 {
            return self.whole();
        }
        match self.prime() {
            Some(p) => {
                let mut gens = self.commutator_subgroup().elements();
                gens.extend(self.power_subgroup(p).iter());
                self.closure(&gens)
            }
            None => self
                .frattini_by_maximal_subgroups(usize::MAX)
                .expect("unbounded subgroup enumeration"),
        }
    }

    /// `gamma_2(G) G^4` for p = 2, `gamma_2(G) G^p` otherwise.
    pub fn p_subgroup(&self) -> Result<Subgroup> {
        let Some(p) = self.require_p("P(G)")? else {
            return Ok(self.whole());
        };
        let mut gens = self.commutator_subgroup().elements();
        gens.extend(self.power_subgroup(crate::arith::p_nil_threshold(p)).iter());
        Ok(self.closure(&gens))
    }

    /// `S(G) = Z(G) meet P(G)`.
    pub fn s_subgroup(&self) -> Result<Subgroup> {
        Ok(self.center().intersect(&self.p_subgroup()?))
    }

    /// `{x : x^{p^n} = 1}` as sorted indices.
    pub fn omega_set(&self, n: u32) -> Vec<usize> {
        match self.prime() {
            Some(p) => {
                let bound = p.pow(n);
                (0..self.order())
                    .filter(|&x| bound % self.element_order(x) == 0)
                    .collect()
            }
            None => vec![self.identity()],
        }
    }

    pub fn omega_subgroup(&self, n: u32) -> Subgroup {
        self.closure(&self.omega_set(n))
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).map(|x| self.element_order(x)).fold(1, lcm)
    }

    /// `log_p exp(G)` for a p-group.
    pub fn exponent_log(&self) -> u32 {
        self.prime()
            .map_or(0, |p| exact_log(p, self.exponent()).expect("p-group exponent"))
    }

    /// Exponent of the section `upper / lower`: the least `k` with `x^k in lower`
    /// for all `x in upper`, both normal subgroups.
    pub fn section_exponent(&self, upper: &Subgroup, lower: &Subgroup) -> u64 {
        let mask = lower.mask(self.order());
        upper
            .iter()
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while !mask[y] {
                    y = self.op(y, x);
                    k += 1;
                }
                k
            })
            .fold(1, lcm)
    }

    /// `d(G)`: `log_p |G/Phi(G)|` for p-groups, 0 for the trivial group,
    /// generating-set search otherwise.
    pub fn min_generators(&self) -> u32 {
        if self.order() == 1 {
            return 0;
        }
        match self.prime() {
            Some(p) => exact_log(p, (self.order() / self.frattini().order()) as u64).expect("p-group"),
            None => self.min_generators_search(),
        }
    }

    fn min_generators_search(&self) -> u32 {
        let greedy = self.generating_set().len() as u32;
        let candidates: Vec<usize> = (0..self.order()).filter(|&x| x != self.identity()).collect();
        let mut budget = 200_000usize;
        for k in 1..greedy as usize {
            let mut chosen = Vec::with_capacity(k);
            match self.search_generators(&candidates, 0, k, &mut chosen, &mut budget) {
                Some(true) => return k as u32,
                Some(false) => {}
                None => return greedy,
            }
        }
        greedy
    }

    /// `Some(true)` if some `k`-subset of `candidates[from..]` extends `chosen`
    /// to a generating set; `None` once the budget runs out.
    fn search_generators(
        &self,
        candidates: &[usize],
        from: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        budget: &mut usize,
    ) -> Option<bool> {
        if chosen.len() == k {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            return Some(super::generated(self, chosen).len() == self.order());
        }
        for i in from..candidates.len() {
            chosen.push(candidates[i]);
            let found = self.search_generators(candidates, i + 1, k, chosen, budget);
            chosen.pop();
            if found != Some(false) {
                return found;
            }
        }
        Some(false)
    }

    /// A generating set, chosen greedily by descending element order (least
    /// index on ties). For p-groups each pick avoids the span of the previous
    /// picks and `Phi(G)`, so the set is minimal.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut candidates: Vec<usize> = (0..n).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let base: Vec<usize> = if self.prime().is_some() {
            self.frattini().elements()
        } else {
            vec![self.identity()]
        };
        let mut gens = Vec::new();
        let mut span = self.closure(&base);
        for x in candidates {
            if span.order() == n {
                break;
            }
            if span.contains(x) {
                continue;
            }
            gens.push(x);
            let mut seed = base.clone();
            seed.extend(&gens);
            span = self.closure(&seed);
        }
        gens
    }

    /// `Omega_1(G) <= Z(G)` (`Omega_2` for p = 2).
    pub fn is_p_central(&self) -> bool {
        let Some(p) = self.prime() else {
            return true;
        };
        let level = crate::arith::p_nil_omega_level(p);
        self.omega_subgroup(level).is_subgroup_of(&self.center())
    }

    pub fn quotient_group(&self, normal: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_normal(normal) {
            return Err(Error::arg("quotient requires a normal subgroup"));
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset[x] != usize::MAX {
                continue;
            }
            for m in normal.iter() {
                coset[self.op(x, m)] = reps.len();
            }
            reps.push(x);
        }
        let q = reps.len();
        let group = FiniteGroup::from_fn(q, coset[self.identity()], |a, b| coset[self.op(reps[a], reps[b])])?;
        Ok(QuotientGroup {
            group,
            projection: coset,
            representatives: reps,
        })
    }

    /// Membership test `x^-1 u(x) in N` for every `x`, with `u` given by images.
    pub fn moves_into(&self, images: &[usize], target: &Subgroup) -> bool {
        let mask = target.mask(self.order());
        (0..self.order()).all(|x| mask[self.op(self.inv(x), images[x])])
    }
}

#[cfg(test)]
mod tests {
    use crate::group::builtin_group;

    #[test]
    fn center_and_derived() {
        let q8 = builtin_group("q8").unwrap();
        assert_eq!(q8.center().order(), 2);
        assert_eq!(q8.commutator_subgroup().order(), 2);
        assert_eq!(q8.center(), q8.commutator_subgroup());
        let d8 = builtin_group("d8").unwrap();
        assert_eq!(d8.center().order(), 2);
        assert_eq!(d8.commutator_subgroup().order(), 2);
        let c = builtin_group("c4xc2").unwrap();
        assert_eq!(c.center(), c.whole());
        assert!(c.commutator_subgroup().is_trivial());
    }

    #[test]
    fn central_series() {
        let c = builtin_group("c9").unwrap();
        let orders = |s: Vec<crate::group::Subgroup>| s.iter().map(|h| h.order()).collect::<Vec<_>>();
        assert_eq!(orders(c.lower_central_series()), vec![9, 1]);
        assert_eq!(orders(c.upper_central_series()), vec![1, 9]);
        let q8 = builtin_group("q8").unwrap();
        assert_eq!(orders(q8.lower_central_series()), vec![8, 2, 1]);
        assert_eq!(q8.nilpotency_class(), Some(2));
        let es = builtin_group("es27").unwrap();
        assert_eq!(es.nilpotency_class(), Some(2));
        assert_eq!(es.lower_central_series()[1].order(), 3);
        assert_eq!(builtin_group("d6").unwrap().nilpotency_class(), None);
    }

    #[test]
    fn lower_p_central() {
        let orders = |s: Vec<crate::group::Subgroup>| s.iter().map(|h| h.order()).collect::<Vec<_>>();
        assert_eq!(
            orders(builtin_group("c2xc2").unwrap().lower_p_central_series().unwrap()),
            vec![4, 1]
        );
        assert_eq!(
            orders(builtin_group("c4").unwrap().lower_p_central_series().unwrap()),
            vec![4, 2, 1]
        );
        assert_eq!(
            orders(builtin_group("q8").unwrap().lower_p_central_series().unwrap()),
            vec![8, 2, 1]
        );
        assert!(builtin_group("c6").unwrap().lower_p_central_series().is_err());
    }

    #[test]
    fn agemo_and_frattini() {
        assert!(builtin_group("es27").unwrap().agemo(1).is_trivial());
        assert_eq!(builtin_group("c9xc3").unwrap().agemo(1).order(), 3);
        let c16 = builtin_group("c16").unwrap();
        assert_eq!(c16.agemo(2).elements(), vec![0, 4, 8, 12]);
        assert!(builtin_group("c2xc2xc2").unwrap().frattini().is_trivial());
        assert_eq!(builtin_group("c4").unwrap().frattini().elements(), vec![0, 2]);
        assert_eq!(builtin_group("q8").unwrap().frattini().order(), 2);
    }

    #[test]
    fn p_and_s_subgroups() {
        let g = builtin_group("c3xc3").unwrap();
        assert!(g.p_subgroup().unwrap().is_trivial());
        assert!(g.s_subgroup().unwrap().is_trivial());
        let q8 = builtin_group("q8").unwrap();
        assert_eq!(q8.p_subgroup().unwrap(), q8.center());
        assert_eq!(q8.s_subgroup().unwrap(), q8.center());
        let c9 = builtin_group("c9").unwrap();
        assert_eq!(c9.p_subgroup().unwrap().order(), 3);
        assert_eq!(c9.s_subgroup().unwrap().order(), 3);
    }

    #[test]
    fn omega() {
        let g = builtin_group("c4xc2").unwrap();
        assert_eq!(g.omega_set(0), vec![g.identity()]);
        // (a, b) encoded as 2a + b
        assert_eq!(g.omega_set(1), vec![0, 1, 4, 5]);
        assert_eq!(g.omega_subgroup(1).elements(), vec![0, 1, 4, 5]);
        let d8 = builtin_group("d8").unwrap();
        assert_eq!(d8.omega_set(1).len(), 6);
        assert_eq!(d8.omega_subgroup(1), d8.whole());
    }

    #[test]
    fn invariants() {
        let t = builtin_group("c1").unwrap();
        assert_eq!(
            (t.exponent(), t.nilpotency_class(), t.min_generators()),
            (1, Some(0), 0)
        );
        let q8 = builtin_group("q8").unwrap();
        assert_eq!(
            (q8.exponent(), q8.nilpotency_class(), q8.min_generators()),
            (4, Some(2), 2)
        );
        let g = builtin_group("c9xc3").unwrap();
        assert_eq!(
            (g.exponent(), g.nilpotency_class(), g.min_generators()),
            (9, Some(1), 2)
        );
        assert_eq!(builtin_group("d6").unwrap().min_generators(), 2);
        assert_eq!(builtin_group("c6").unwrap().min_generators(), 1);
    }

    #[test]
    fn p_central() {
        assert!(builtin_group("c4xc2").unwrap().is_p_central());
        assert!(!builtin_group("d8").unwrap().is_p_central());
        // Omega_1(M(27)) = <x^3, y> has order 9 while the center has order 3
        let m27 = builtin_group("m27").unwrap();
        assert_eq!(m27.omega_subgroup(1).order(), 9);
        assert!(!m27.is_p_central());
        assert!(builtin_group("c9xc3").unwrap().is_p_central());
    }

    #[test]
    fn quotients() {
        let q8 = builtin_group("q8").unwrap();
        let q = q8.quotient_group(&q8.whole()).unwrap();
        assert_eq!(q.group.order(), 1);
        let q = q8.quotient_group(&q8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.group.exponent(), 2);
        let c4 = builtin_group("c4").unwrap();
        let q = c4.quotient_group(&c4.frattini()).unwrap();
        assert_eq!(q.group.order(), 2);
        let d8 = builtin_group("d8").unwrap();
        let refl = d8.closure(&[4]);
        assert!(d8.quotient_group(&refl).is_err());
    }
}
