use std::collections::HashSet;
use std::sync::Arc;

use super::reduce::reduce;
use super::Budget;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, Polynomial, Ring};

/// A basis element together with its cofactors in terms of the tracked
/// generators (when tracking is on).
#[derive(Clone)]
pub(crate) struct Elem {
    pub poly: Polynomial,
    pub cof: Option<Vec<Polynomial>>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct Engine<'a> {
    ring: Arc<Ring>,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    budget: &'a Budget,
    /// Cofactors are kept reduced modulo this basis (relative mode).
    base: Vec<Polynomial>,
    ngens: usize,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &Arc<Ring>, ngens: usize, base: Vec<Polynomial>, budget: &'a Budget) -> Self {
        Engine {
            ring: ring.clone(),
            elems: Vec::new(),
            pairs: Vec::new(),
            pending: HashSet::new(),
            budget,
            base,
            ngens,
        }
    }

    fn tracking(&self) -> bool {
        self.ngens > 0
    }

    /// Seeds an element known to form a Gröbner basis together with the
    /// elements seeded before it; no pairs are created.
    pub fn seed(&mut self, poly: Polynomial) {
        let cof = self
            .tracking()
            .then(|| vec![Polynomial::zero(&self.ring); self.ngens]);
        self.elems.push(Elem { poly, cof });
    }

    /// Reduces a new input and adds it if it does not vanish.
    pub fn insert(&mut self, e: Elem) -> Result<()> {
        let r = self.reduce_elem(e)?;
        if !r.poly.is_zero() {
            self.add(r)?;
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.iter().any(|e| e.poly.is_constant() && !e.poly.is_zero())
    }

    fn reduce_elem(&self, e: Elem) -> Result<Elem> {
        let basis: Vec<&Polynomial> = self.elems.iter().map(|x| &x.poly).collect();
        if e.poly.len() > self.budget.max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate polynomial exceeds {} terms",
                self.budget.max_terms
            )));
        }
        match e.cof {
            None => Ok(Elem {
                poly: reduce(&e.poly, &basis, None),
                cof: None,
            }),
            Some(mut cof) => {
                let mut q = Vec::new();
                let poly = reduce(&e.poly, &basis, Some(&mut q));
                for (k, qk) in q.iter().enumerate() {
                    if qk.is_zero() {
                        continue;
                    }
                    let ck = self.elems[k].cof.as_ref().expect("tracked element");
                    for (c, x) in cof.iter_mut().zip(ck) {
                        if !x.is_zero() {
                            *c = c.sub(&qk.mul(x));
                        }
                    }
                }
                Ok(Elem {
                    poly,
                    cof: Some(self.reduce_cofactors(cof)),
                })
            }
        }
    }

    fn reduce_cofactors(&self, cof: Vec<Polynomial>) -> Vec<Polynomial> {
        if self.base.is_empty() {
            return cof;
        }
        let base: Vec<&Polynomial> = self.base.iter().collect();
        cof.into_iter().map(|c| reduce(&c, &base, None)).collect()
    }

    fn add(&mut self, mut e: Elem) -> Result<()> {
        let inv = e.poly.lc().inv().expect("nonzero leading coefficient");
        if !inv.is_one() {
            e.poly = e.poly.scale(&inv);
            if let Some(cof) = &mut e.cof {
                for c in cof.iter_mut() {
                    *c = c.scale(&inv);
                }
            }
        }
        let k = self.elems.len();
        for i in 0..k {
            let lcm = self.elems[i].poly.lm().lcm(e.poly.lm());
            self.pairs.push(Pair { i, j: k, lcm });
            self.pending.insert((i, k));
        }
        self.elems.push(e);
        let terms: usize = self.elems.iter().map(|x| x.poly.len()).sum();
        if self.elems.len() > self.budget.max_polys || terms > self.budget.max_terms {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis grew beyond {} polynomials / {} terms",
                self.budget.max_polys, self.budget.max_terms
            )));
        }
        Ok(())
    }

    /// Normal selection strategy: smallest lcm first, ties by index.
    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let mut best: Option<usize> = None;
        for (n, p) in self.pairs.iter().enumerate() {
            best = match best {
                None => Some(n),
                Some(b) => {
                    let q = &self.pairs[b];
                    let o = order
                        .cmp(&p.lcm, &q.lcm)
                        .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
                    if o == std::cmp::Ordering::Less {
                        Some(n)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let b = best?;
        let p = self.pairs.swap_remove(b);
        self.pending.remove(&(p.i, p.j));
        Some(p)
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion.
    fn chain(&self, p: &Pair) -> bool {
        (0..self.elems.len()).any(|k| {
            k != p.i
                && k != p.j
                && self.elems[k].poly.lm().divides(&p.lcm)
                && !self.is_pending(p.i, k)
                && !self.is_pending(p.j, k)
        })
    }

    fn spoly(&self, p: &Pair) -> Elem {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let ma = p.lcm.div(a.poly.lm()).expect("lcm divisible");
        let mb = p.lcm.div(b.poly.lm()).expect("lcm divisible");
        let one = Coeff::one();
        let poly = a
            .poly
            .mul_term(&one, &ma)
            .sub_mul_term(&one, &mb, &b.poly);
        let cof = match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => Some(
                ca.iter()
                    .zip(cb)
                    .map(|(x, y)| x.mul_term(&one, &ma).sub_mul_term(&one, &mb, y))
                    .collect(),
            ),
            _ => None,
        };
        Elem { poly, cof }
    }

    pub fn run(&mut self) -> Result<()> {
        while !self.is_trivial() {
            let Some(p) = self.select() else { break };
            let (a, b) = (self.elems[p.i].poly.lm(), self.elems[p.j].poly.lm());
            if a.coprime(b) || self.chain(&p) {
                continue;
            }
            let s = self.spoly(&p);
            let h = self.reduce_elem(s)?;
            if !h.poly.is_zero() {
                self.add(h)?;
            }
        }
        Ok(())
    }

    /// Minimizes and interreduces; the result is sorted by ascending leading
    /// monomial, which makes it canonical.
    pub fn finish(mut self) -> Vec<Elem> {
        if let Some(pos) = self
            .elems
            .iter()
            .position(|e| e.poly.is_constant() && !e.poly.is_zero())
        {
            let e = self.elems.swap_remove(pos);
            let inv = e.poly.lc().inv().expect("nonzero constant");
            let cof = e
                .cof
                .map(|c| self.reduce_cofactors(c.iter().map(|x| x.scale(&inv)).collect()));
            return vec![Elem {
                poly: Polynomial::one(&self.ring),
                cof,
            }];
        }
        let n = self.elems.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    j != i
                        && self.elems[j].poly.lm().divides(self.elems[i].poly.lm())
                        && (self.elems[j].poly.lm() != self.elems[i].poly.lm() || j < i)
                })
            })
            .collect();
        let order = self.ring.order().clone();
        let mut elems: Vec<Elem> = keep.into_iter().map(|i| self.elems[i].clone()).collect();
        elems.sort_by(|a, b| order.cmp(a.poly.lm(), b.poly.lm()));
        for i in 0..elems.len() {
            let others: Vec<&Polynomial> = elems
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| &e.poly)
                .collect();
            let g = &elems[i].poly;
            let (lm, lc) = g.leading().cloned().expect("nonzero");
            let track = elems[i].cof.is_some();
            let mut q = Vec::new();
            let tail = reduce(&g.tail(), &others, track.then_some(&mut q));
            let poly = Polynomial::term(&self.ring, lm, lc).add(&tail);
            let cof = if track {
                let idx: Vec<usize> = (0..elems.len()).filter(|&j| j != i).collect();
                let mut cof = elems[i].cof.clone().expect("tracked");
                for (qk, &j) in q.iter().zip(&idx) {
                    if qk.is_zero() {
                        continue;
                    }
                    let cj = elems[j].cof.as_ref().expect("tracked");
                    for (c, x) in cof.iter_mut().zip(cj) {
                        if !x.is_zero() {
                            *c = c.sub(&qk.mul(x));
                        }
                    }
                }
                Some(self.reduce_cofactors(cof))
            } else {
                None
            };
            elems[i] = Elem { poly, cof };
        }
        elems
    }
}
