use super::{AdditiveType, FiniteRing};
use crate::error::{Error, Result};

/// Hard cap on raw candidate tensors.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Raw candidate count `|R|^{d^2}` for a structure-constant search on `atype`.
pub fn count_candidates(atype: &AdditiveType) -> u128 {
    let d = atype.dim() as u32;
    (atype.order() as u128).saturating_pow(d * d)
}

/// Streams every well-defined associative tensor on an additive type that
/// passes `filter`, in lexicographic order of the flattened tensor.
pub struct RingEnumerator<F> {
    atype: AdditiveType,
    steps: Vec<u64>,
    limits: Vec<u64>,
    digits: Vec<u64>,
    done: bool,
    filter: F,
}

pub fn enumerate_rings<F>(atype: &AdditiveType, budget: u128, filter: F) -> Result<RingEnumerator<F>>
where
    F: FnMut(&FiniteRing) -> bool,
{
    let count = count_candidates(atype);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "candidate tensors",
            count,
            bound: budget,
        });
    }
    let d = atype.dim();
    let exps = atype.exps();
    let p = atype.p();
    let mut steps = Vec::with_capacity(d * d * d);
    let mut limits = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for &ek in exps {
                // p^{min(e_i, e_j)} c = 0 mod p^{e_k}
                let shift = ek.saturating_sub(exps[i].min(exps[j]));
                steps.push(p.pow(shift));
                limits.push(p.pow(ek - shift));
            }
        }
    }
    let digits = vec![0; steps.len()];
    Ok(RingEnumerator {
        atype: atype.clone(),
        steps,
        limits,
        digits,
        done: false,
        filter,
    })
}

impl<F> RingEnumerator<F> {
    fn current(&self) -> Vec<Vec<Vec<u64>>> {
        let d = self.atype.dim();
        let mut t = vec![vec![vec![0; d]; d]; d];
        let mut pos = 0;
        for row in t.iter_mut() {
            for v in row.iter_mut() {
                for c in v.iter_mut() {
                    *c = self.digits[pos] * self.steps[pos];
                    pos += 1;
                }
            }
        }
        t
    }

    fn advance(&mut self) {
        for pos in (0..self.digits.len()).rev() {
            self.digits[pos] += 1;
            if self.digits[pos] < self.limits[pos] {
                return;
            }
            self.digits[pos] = 0;
        }
        self.done = true;
    }
}

impl<F> Iterator for RingEnumerator<F>
where
    F: FnMut(&FiniteRing) -> bool,
{
    type Item = FiniteRing;

    fn next(&mut self) -> Option<FiniteRing> {
        while !self.done {
            let tensor = self.current();
            self.advance();
            if let Ok(ring) = FiniteRing::new(self.atype.clone(), tensor) {
                if (self.filter)(&ring) {
                    return Some(ring);
                }
            }
        }
        None
    }
}
