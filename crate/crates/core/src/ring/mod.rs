//! Finite rings of prime-power order given by structure constants.
//!
//! The additive group is `Z_{p^e_1} + ... + Z_{p^e_d}` with basis
//! `b_1..b_d`; `mul[i][j]` holds the coordinates of `b_i * b_j`. Elements are
//! coordinate vectors, and every element also has a dense index (mixed radix,
//! first coordinate most significant) used by the exhaustive algorithms.

mod construct;
mod enumerate;
mod io;

pub use construct::{builtin_ring, is_ideal, quotient_ring, subring, subring_p_r, QuotientRing, Subring};
pub use enumerate::{count_candidates, enumerate_rings, RingEnumerator, DEFAULT_ENUMERATION_BUDGET};
pub use io::{load_ring, RingFile};

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, p_nil_threshold};
use crate::error::{Error, Result};

/// Largest ring order the dense (exhaustive) algorithms accept.
pub const MAX_DENSE_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdditiveType {
    p: u64,
    exps: Vec<u32>,
}

impl AdditiveType {
    pub fn new(p: u64, exps: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        if exps.contains(&0) {
            return Err(Error::arg("cyclic factor exponents must be positive"));
        }
        let total: u32 = exps.iter().sum();
        if (p as u128)
            .checked_pow(total)
            .is_none_or(|o| o > MAX_DENSE_ORDER as u128)
        {
            return Err(Error::BudgetExceeded {
                what: "ring order",
                count: (p as u128).saturating_pow(total),
                bound: MAX_DENSE_ORDER as u128,
            });
        }
        Ok(AdditiveType { p, exps })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.exps.iter().sum())
    }

    /// `m` with `exp(R^+) = p^m`.
    pub fn exponent_log(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.exps.iter().map(|&e| self.p.pow(e)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    pub coords: Vec<u64>,
}

impl RingElement {
    pub fn new(coords: Vec<u64>) -> Self {
        RingElement { coords }
    }
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An additive subgroup of a ring, as the sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveSubgroup {
    elements: Vec<usize>,
}

impl AdditiveSubgroup {
    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        AdditiveSubgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn intersect(&self, other: &AdditiveSubgroup) -> AdditiveSubgroup {
        let elements = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        AdditiveSubgroup { elements }
    }

    pub fn is_subset_of(&self, other: &AdditiveSubgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    atype: AdditiveType,
    moduli: Vec<u64>,
    mul: Vec<Vec<Vec<u64>>>,
}

impl FiniteRing {
    /// Validates shape, reduction, well-definedness and associativity of `mul`.
    pub fn new(atype: AdditiveType, mul: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let d = atype.dim();
        let moduli = atype.moduli();
        if mul.len() != d || mul.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(Error::InvalidRing(format!(
                "multiplication tensor must have shape {d}x{d}x{d}"
            )));
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if mul[i][j][k] >= moduli[k] {
                        return Err(Error::InvalidRing(format!(
                            "mul[{i}][{j}][{k}] = {} is not reduced modulo {}",
                            mul[i][j][k], moduli[k]
                        )));
                    }
                }
                let e = atype.exps[i].min(atype.exps[j]);
                let scale = atype.p.pow(e);
                if (0..d).any(|k| !(mul[i][j][k] as u128 * scale as u128).is_multiple_of(moduli[k] as u128)) {
                    return Err(Error::InvalidRing(format!(
                        "not well-defined: p^{e} * (b{i} b{j}) != 0 for basis pair ({i},{j})"
                    )));
                }
            }
        }
        let ring = FiniteRing { atype, moduli, mul };
        if let Some((i, j, k)) = ring.associativity_violation() {
            return Err(Error::InvalidRing(format!(
                "not associative: (b{i} b{j}) b{k} != b{i} (b{j} b{k}) for basis triple ({i},{j},{k})"
            )));
        }
        Ok(ring)
    }

    /// The ring with zero multiplication on `atype`.
    pub fn zero_ring(atype: AdditiveType) -> Self {
        let d = atype.dim();
        let moduli = atype.moduli();
        FiniteRing {
            atype,
            moduli,
            mul: vec![vec![vec![0; d]; d]; d],
        }
    }

    /// Bilinearity makes basis triples sufficient.
    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let basis: Vec<RingElement> = (0..d).map(|i| self.basis_element(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let bij = self.mul(&basis[i], &basis[j]);
                for k in 0..d {
                    let left = self.mul(&bij, &basis[k]);
                    let right = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn atype(&self) -> &AdditiveType {
        &self.atype
    }

    pub fn p(&self) -> u64 {
        self.atype.p
    }

    pub fn dim(&self) -> usize {
        self.atype.dim()
    }

    pub fn order(&self) -> usize {
        self.atype.order() as usize
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn tensor(&self) -> &[Vec<Vec<u64>>] {
        &self.mul
    }

    /// The opposite ring: `x *op y = y * x`.
    pub fn opposite(&self) -> FiniteRing {
        let d = self.dim();
        let mut mul = vec![vec![vec![0; d]; d]; d];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.mul[j][i].clone();
            }
        }
        FiniteRing {
            atype: self.atype.clone(),
            moduli: self.moduli.clone(),
            mul,
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new(vec![0; self.dim()])
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut c = vec![0; self.dim()];
        c[i] = 1;
        RingElement::new(c)
    }

    pub fn validate(&self, x: &RingElement) -> Result<()> {
        if x.coords.len() != self.dim() {
            return Err(Error::InvalidElement(format!(
                "element has {} coordinates, ring has dimension {}",
                x.coords.len(),
                self.dim()
            )));
        }
        for (c, m) in x.coords.iter().zip(&self.moduli) {
            if c >= m {
                return Err(Error::InvalidElement(format!("coordinate {c} not reduced modulo {m}")));
            }
        }
        Ok(())
    }

    pub fn element(&self, mut idx: usize) -> RingElement {
        let mut coords = vec![0; self.dim()];
        for i in (0..self.dim()).rev() {
            let m = self.moduli[i] as usize;
            coords[i] = (idx % m) as u64;
            idx /= m;
        }
        RingElement::new(coords)
    }

    pub fn index(&self, x: &RingElement) -> usize {
        let mut idx = 0usize;
        for (c, m) in x.coords.iter().zip(&self.moduli) {
            idx = idx * *m as usize + *c as usize;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Checked addition for untrusted inputs.
    pub fn try_add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.add(x, y))
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        RingElement::new(coords)
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        let coords = x.coords.iter().zip(&self.moduli).map(|(a, m)| (m - a) % m).collect();
        RingElement::new(coords)
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.add(x, &self.neg(y))
    }

    /// `k * x` in the additive group.
    pub fn scale(&self, k: u64, x: &RingElement) -> RingElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, m)| ((*a as u128 * (k % m) as u128) % *m as u128) as u64)
            .collect();
        RingElement::new(coords)
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let d = self.dim();
        let mut acc = vec![0u128; d];
        for i in 0..d {
            if x.coords[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y.coords[j] == 0 {
                    continue;
                }
                let c = x.coords[i] as u128 * y.coords[j] as u128;
                for (k, a) in acc.iter_mut().enumerate() {
                    let m = self.moduli[k] as u128;
                    *a = (*a + c % m * self.mul[i][j][k] as u128) % m;
                }
            }
        }
        RingElement::new(acc.into_iter().map(|a| a as u64).collect())
    }

    /// `x o y = x + y + xy`.
    pub fn circle(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.add(&self.add(x, y), &self.mul(x, y))
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.index(&self.add(&self.element(a), &self.element(b)))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index(&self.mul(&self.element(a), &self.element(b)))
    }

    pub fn circle_idx(&self, a: usize, b: usize) -> usize {
        self.index(&self.circle(&self.element(a), &self.element(b)))
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        x.coords.iter().all(|&c| c == 0)
    }

    /// The circle inverse, by exhaustive search over the ring.
    pub fn quasi_inverse(&self, x: &RingElement) -> Option<RingElement> {
        let found = self
            .elements()
            .find(|y| self.is_zero(&self.circle(x, y)) && self.is_zero(&self.circle(y, x)));
        if let Some(y) = &found {
            if let Some(series) = self.neumann_quasi_inverse(x) {
                debug_assert_eq!(&series, y, "alternating series disagrees with search");
            }
        }
        found
    }

    /// `sum_{k>=1} (-1)^k x^k` when `x` is nilpotent, `None` otherwise.
    pub fn neumann_quasi_inverse(&self, x: &RingElement) -> Option<RingElement> {
        let mut acc = self.zero();
        let mut power = x.clone();
        let mut sign_negative = true;
        for _ in 0..=self.order() {
            if self.is_zero(&power) {
                return Some(acc);
            }
            acc = if sign_negative {
                self.sub(&acc, &power)
            } else {
                self.add(&acc, &power)
            };
            sign_negative = !sign_negative;
            power = self.mul(&power, x);
        }
        None
    }

    /// k-fold circle product of `x`; `k = 0` gives `0`.
    pub fn adjoint_power(&self, x: &RingElement, mut k: u64) -> RingElement {
        let mut result = self.zero();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.circle(&result, &base);
            }
            base = self.circle(&base, &base);
            k >>= 1;
        }
        result
    }

    /// Least `p^n` with `p^n x = 0`.
    pub fn additive_order(&self, x: &RingElement) -> u64 {
        let p = self.p();
        x.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| {
                if c == 0 {
                    1
                } else {
                    let mut g = c;
                    let mut div = 1;
                    while g % p == 0 {
                        g /= p;
                        div *= p;
                    }
                    m / div.min(m)
                }
            })
            .max()
            .unwrap_or(1)
    }

    fn annihilates_with_threshold(&self, threshold: u64, left: bool) -> bool {
        let basis: Vec<RingElement> = (0..self.dim()).map(|i| self.basis_element(i)).collect();
        self.elements()
            .filter(|x| threshold.is_multiple_of(self.additive_order(x)))
            .all(|x| {
                basis.iter().all(|b| {
                    let prod = if left { self.mul(&x, b) } else { self.mul(b, &x) };
                    self.is_zero(&prod)
                })
            })
    }

    /// Every `x` with `p x = 0` (`4x = 0` when p = 2) left-annihilates the ring.
    pub fn is_left_p_nil(&self) -> bool {
        self.annihilates_with_threshold(p_nil_threshold(self.p()), true)
    }

    pub fn is_right_p_nil(&self) -> bool {
        self.annihilates_with_threshold(p_nil_threshold(self.p()), false)
    }

    pub fn is_p_nil(&self) -> bool {
        self.is_left_p_nil() && self.is_right_p_nil()
    }

    /// The p = 2 variant testing elements with `2x = 0` only; coincides with
    /// [`Self::is_left_p_nil`] for odd p.
    pub fn is_left_p_nil_strict(&self) -> bool {
        self.annihilates_with_threshold(self.p(), true)
    }

    pub fn is_right_p_nil_strict(&self) -> bool {
        self.annihilates_with_threshold(self.p(), false)
    }

    /// Additive span of a set of element indices.
    pub fn additive_span(&self, gens: &[usize]) -> AdditiveSubgroup {
        let n = self.order();
        let zero = self.index(&self.zero());
        let mut seen = vec![false; n];
        seen[zero] = true;
        let mut list = vec![zero];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.add_idx(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        AdditiveSubgroup::from_sorted(list)
    }

    pub fn whole(&self) -> AdditiveSubgroup {
        AdditiveSubgroup::from_sorted((0..self.order()).collect())
    }

    pub fn trivial(&self) -> AdditiveSubgroup {
        AdditiveSubgroup::from_sorted(vec![self.index(&self.zero())])
    }

    /// `R^1 = R`, `R^{k+1}` the additive span of `R^k * R`.
    pub fn ring_power(&self, k: usize) -> AdditiveSubgroup {
        assert!(k >= 1, "ring powers start at 1");
        let mut current = self.whole();
        let basis: Vec<usize> = (0..self.dim()).map(|i| self.index(&self.basis_element(i))).collect();
        for _ in 1..k {
            let products: Vec<usize> = current
                .elements()
                .iter()
                .flat_map(|&x| basis.iter().map(move |&b| (x, b)))
                .map(|(x, b)| self.mul_idx(x, b))
                .collect();
            let next = self.additive_span(&products);
            if next == current {
                break;
            }
            current = next;
        }
        current
    }

    /// Least `n` with `R^{n+1} = 0`, or `None` if the power chain stalls above zero.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let mut k = 1;
        let mut prev = self.ring_power(1);
        loop {
            if prev.is_trivial() {
                return Some(k - 1);
            }
            let next = self.ring_power(k + 1);
            if next == prev {
                return None;
            }
            prev = next;
            k += 1;
        }
    }

    /// `{x : x s = 0 for all s in set}`.
    pub fn left_annihilator(&self, set: &[usize]) -> AdditiveSubgroup {
        let elems: Vec<RingElement> = set.iter().map(|&s| self.element(s)).collect();
        let members = (0..self.order())
            .filter(|&x| {
                let xe = self.element(x);
                elems.iter().all(|s| self.is_zero(&self.mul(&xe, s)))
            })
            .collect();
        AdditiveSubgroup::from_sorted(members)
    }

    /// `{x : s x = 0 for all s in set}`.
    pub fn right_annihilator(&self, set: &[usize]) -> AdditiveSubgroup {
        let elems: Vec<RingElement> = set.iter().map(|&s| self.element(s)).collect();
        let members = (0..self.order())
            .filter(|&x| {
                let xe = self.element(x);
                elems.iter().all(|s| self.is_zero(&self.mul(s, &xe)))
            })
            .collect();
        AdditiveSubgroup::from_sorted(members)
    }

    /// `{x : p^n x = 0}`.
    pub fn omega_additive(&self, n: u32) -> AdditiveSubgroup {
        let bound = self.p().pow(n);
        let members = (0..self.order())
            .filter(|&x| bound.is_multiple_of(self.additive_order(&self.element(x))))
            .collect();
        AdditiveSubgroup::from_sorted(members)
    }

    /// `right_annihilator(R, R)` meet `Omega_level(R^+)`; the level is 1 in the
    /// usual reading, 2 selects the p = 2 alternative. Requires a left p-nil ring.
    pub fn ideal_u(&self, omega_level: u32) -> Result<AdditiveSubgroup> {
        if !self.is_left_p_nil() {
            return Err(Error::HypothesisViolation("ring is not left p-nil".into()));
        }
        let all: Vec<usize> = (0..self.order()).collect();
        Ok(self
            .right_annihilator(&all)
            .intersect(&self.omega_additive(omega_level)))
    }

    /// `d(R^+) = log_p |R / pR|`, computed from the elements rather than the
    /// declared type.
    pub fn additive_rank(&self) -> u32 {
        let p = self.p();
        let mut images: Vec<usize> = self.elements().map(|x| self.index(&self.scale(p, &x))).collect();
        images.sort_unstable();
        images.dedup();
        crate::arith::exact_log(p, (self.order() / images.len()) as u64).expect("p-group quotient")
    }

    /// `log_p exp(R^+)`, computed from element orders.
    pub fn additive_exponent_log(&self) -> u32 {
        let exp = self.elements().map(|x| self.additive_order(&x)).max().unwrap_or(1);
        crate::arith::exact_log(self.p(), exp).expect("orders are powers of p")
    }
}
