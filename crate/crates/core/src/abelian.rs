//! Cyclic decomposition of an explicitly tabulated finite abelian p-group.
//!
//! Elements are opaque ids `0..n`. The decomposition is greedy: repeatedly
//! take the element of largest order modulo the span found so far (least id
//! on ties) and replace it by the least-id member of its coset whose true
//! order equals that quotient order. The resulting factor exponents are
//! non-increasing and the whole procedure is deterministic, so re-based
//! structure constants are reproducible.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    p: u64,
    exps: Vec<u32>,
    basis: Vec<usize>,
    coords: Vec<Vec<u64>>,
    from_coords: Vec<usize>,
}

impl CyclicDecomposition {
    /// Decomposes the group `(0..n, add)` with identity `zero`.
    pub fn new(n: usize, zero: usize, p: u64, add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if crate::arith::exact_log(p, n as u64).is_none() {
            return Err(Error::arg(format!("group of order {n} is not a {p}-group")));
        }
        let scale_p = |x: usize| -> usize {
            let mut acc = zero;
            for _ in 0..p {
                acc = add(acc, x);
            }
            acc
        };
        let mut in_span = vec![false; n];
        in_span[zero] = true;
        let mut span = vec![zero];
        let mut basis = Vec::new();
        let mut exps = Vec::new();

        while span.len() < n {
            // quotient order of y modulo the current span, as an exponent
            let mut best: Option<(u32, usize)> = None;
            for y in 0..n {
                if in_span[y] {
                    continue;
                }
                let mut e = 0u32;
                let mut z = y;
                while !in_span[z] {
                    z = scale_p(z);
                    e += 1;
                    if e > 64 {
                        return Err(Error::arg("element of non-p-power order"));
                    }
                }
                if best.is_none_or(|(be, _)| e > be) {
                    best = Some((e, y));
                }
            }
            let (e, y) = best.expect("span is a proper subset");
            let lift = span
                .iter()
                .map(|&h| add(y, h))
                .filter(|&z| {
                    let mut w = z;
                    for _ in 0..e {
                        w = scale_p(w);
                    }
                    w == zero
                })
                .min()
                .ok_or_else(|| Error::arg("no order-preserving lift; operation is not an abelian group"))?;
            let mut next = Vec::with_capacity(span.len() * p.pow(e) as usize);
            for &h in &span {
                let mut acc = h;
                for _ in 0..p.pow(e) {
                    next.push(acc);
                    acc = add(acc, lift);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() != span.len() * p.pow(e) as usize {
                return Err(Error::arg(
                    "span is not a direct sum; operation is not an abelian group",
                ));
            }
            for &x in &next {
                in_span[x] = true;
            }
            span = next;
            basis.push(lift);
            exps.push(e);
        }

        // coordinates by mixed-radix expansion over the basis
        let moduli: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
        let mut coords = vec![Vec::new(); n];
        let mut from_coords = Vec::with_capacity(n);
        let mut layer: Vec<(usize, Vec<u64>)> = vec![(zero, Vec::new())];
        for (i, &b) in basis.iter().enumerate() {
            let mut grown = Vec::with_capacity(layer.len() * moduli[i] as usize);
            for (x, c) in &layer {
                let mut acc = *x;
                for k in 0..moduli[i] {
                    let mut c2 = c.clone();
                    c2.push(k);
                    grown.push((acc, c2));
                    acc = add(acc, b);
                }
            }
            layer = grown;
        }
        // layer is ordered with the first coordinate most significant
        for (x, c) in layer {
            from_coords.push(x);
            coords[x] = c;
        }
        Ok(CyclicDecomposition {
            p,
            exps,
            basis,
            coords,
            from_coords,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Factor exponents, non-increasing.
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Element ids of the chosen cyclic generators.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// Element id for a coordinate vector (first coordinate most significant).
    pub fn element(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (c, e) in coords.iter().zip(&self.exps) {
            idx = idx * self.p.pow(*e) as usize + *c as usize;
        }
        self.from_coords[idx]
    }
}
