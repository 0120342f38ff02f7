use std::collections::BTreeMap;

use super::Field;

/// Exponent vector with trailing zeros trimmed, so lexicographic comparison of
/// the vectors is lex order with variable 0 most significant.
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> Exponents {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn exp_div(a: &[u32], b: &[u32]) -> Option<Exponents> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = Vec::with_capacity(a.len());
    for (i, &x) in a.iter().enumerate() {
        let y = b.get(i).copied().unwrap_or(0);
        if y > x {
            return None;
        }
        out.push(x - y);
    }
    Some(trim(out))
}

/// Sparse multivariate polynomial over a field, lex ordered.
///
/// This is the workhorse behind rational-function coefficients; it knows
/// nothing about variable names or rings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<F> {
    /// Descending lex, no zero coefficients.
    terms: Vec<(Exponents, F)>,
}

impl<F: Field> SparsePoly<F> {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly {
                terms: vec![(Vec::new(), c)],
            }
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(
            {
                let mut e = vec![0; i + 1];
                e[i] = 1;
                e
            },
            F::one(),
        )
    }

    pub fn monomial(exps: Exponents, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly {
                terms: vec![(trim(exps), c)],
            }
        }
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, F)>) -> Self {
        let mut map: BTreeMap<Exponents, F> = BTreeMap::new();
        for (e, c) in terms {
            let e = trim(e);
            match map.get_mut(&e) {
                Some(acc) => *acc = acc.add_ref(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        SparsePoly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Exponents, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(e, c)] if e.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_empty())
    }

    pub fn leading(&self) -> Option<&(Exponents, F)> {
        self.terms.first()
    }

    pub fn lc(&self) -> F {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.get(v).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// One past the highest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.len()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let rc = |c: &F| if negate { c.neg_ref() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), rc(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub_ref(&b[j].1)
                    } else {
                        a[i].1.add_ref(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), rc(c))));
        SparsePoly { terms: out }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul_ref(c))).collect(),
        }
    }

    fn mul_term(&self, exps: &[u32], c: &F) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (trim(exp_add(e, exps)), x.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut map: BTreeMap<Exponents, F> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = exp_add(ea, eb);
                let c = ca.mul_ref(cb);
                match map.get_mut(&e) {
                    Some(acc) => *acc = acc.add_ref(&c),
                    None => {
                        map.insert(e, c);
                    }
                }
            }
        }
        SparsePoly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / rhs`, or `None` if `rhs` does not divide.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (le, lc) = rhs.leading()?;
        if let Some(c) = rhs.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let lc_inv = lc.inv()?;
        let mut q = Vec::new();
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading().cloned() {
            let e = exp_div(&re, le)?;
            let c = rc.mul_ref(&lc_inv);
            r = r.sub(&rhs.mul_term(&e, &c));
            q.push((e, c));
        }
        Some(SparsePoly { terms: q })
    }

    pub fn derivative(&self, v: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(e, c)| {
            let k = e.get(v).copied().unwrap_or(0);
            if k == 0 {
                return None;
            }
            let mut e = e.clone();
            e[v] -= 1;
            Some((e, c.mul_ref(&F::from_i64(k as i64))))
        }))
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Coefficient of `x_v^d`, as a polynomial in the remaining variables.
    fn coeff_of(&self, v: usize, d: u32) -> Self {
        SparsePoly::from_terms(self.terms.iter().filter_map(|(e, c)| {
            if e.get(v).copied().unwrap_or(0) != d {
                return None;
            }
            let mut e = e.clone();
            if v < e.len() {
                e[v] = 0;
            }
            Some((e, c.clone()))
        }))
    }

    fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v);
        (0..=d).map(|k| self.coeff_of(v, k)).filter(|p| !p.is_zero()).collect()
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `x_v`.
    fn content_in(&self, v: usize) -> Self {
        let mut g = Self::zero();
        for c in self.coeffs_in(v) {
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        if self.is_constant() || rhs.is_constant() {
            return Self::one();
        }
        if self == rhs {
            return self.monic();
        }
        let v = self.num_vars().max(rhs.num_vars()) - 1;
        let (da, db) = (self.degree_in(v), rhs.degree_in(v));
        if da == 0 {
            return self.gcd(&rhs.content_in(v));
        }
        if db == 0 {
            return rhs.gcd(&self.content_in(v));
        }
        let ca = self.content_in(v);
        let cb = rhs.content_in(v);
        let pa = self.exact_div(&ca).expect("content divides");
        let pb = rhs.exact_div(&cb).expect("content divides");
        let g = primitive_gcd(pa, pb, v);
        ca.gcd(&cb).mul(&g).monic()
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `x_v`.
fn prem<F: Field>(a: &SparsePoly<F>, b: &SparsePoly<F>, v: usize) -> SparsePoly<F> {
    let db = b.degree_in(v);
    let lcb = b.coeff_of(v, db);
    let mut r = a.clone();
    let mut left = (a.degree_in(v) + 1).saturating_sub(db);
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lcr = r.coeff_of(v, dr);
        let mut shift = vec![0; v + 1];
        shift[v] = dr - db;
        r = lcb.mul(&r).sub(&lcr.mul(&b.mul_term(&shift, &F::one())));
        left -= 1;
    }
    r.mul(&lcb.pow(left))
}

/// Subresultant remainder sequence on primitive inputs.
fn primitive_gcd<F: Field>(mut a: SparsePoly<F>, mut b: SparsePoly<F>, v: usize) -> SparsePoly<F> {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let (mut g, mut h) = (SparsePoly::one(), SparsePoly::one());
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = prem(&a, &b, v);
        if r.is_zero() {
            let c = b.content_in(v);
            return b.exact_div(&c).expect("content divides").monic();
        }
        if r.degree_in(v) == 0 {
            return SparsePoly::one();
        }
        let d = g.mul(&h.pow(delta));
        a = b;
        b = r.exact_div(&d).expect("subresultant division is exact");
        g = a.coeff_of(v, a.degree_in(v));
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

impl<F: Field> std::fmt::Debug for SparsePoly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}")?;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{v}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    type P = SparsePoly<Rational>;

    fn x(i: usize) -> P {
        P::var(i)
    }

    fn c(n: i64) -> P {
        P::constant(Rational::from(n))
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..5).prop_map(|ts| {
            P::from_terms(
                ts.into_iter()
                    .map(|((a, b, d), k)| (vec![a, b, d], Rational::from(k))),
            )
        })
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = x(0).add(&x(1));
        let a = f.mul(&x(0).sub(&c(1)));
        let b = f.mul(&x(1).add(&c(2)));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x(0).mul(&x(0)).add(&c(1));
        let b = x(0).mul(&x(1)).sub(&c(3));
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn exact_division_fails_on_nondivisor() {
        let a = x(0).mul(&x(0)).add(&c(1));
        assert!(a.exact_div(&x(0)).is_none());
        assert_eq!(a.mul(&x(1)).exact_div(&x(1)), Some(a));
    }

    #[test]
    fn derivative_of_power() {
        let p = x(0).pow(3).mul(&x(1));
        assert_eq!(p.derivative(0), x(0).pow(2).mul(&x(1)).scale(&Rational::from(3)));
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), d in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
            prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), f in arb_poly()) {
            let (fa, fb) = (a.mul(&f), b.mul(&f));
            let g = fa.gcd(&fb);
            if !g.is_zero() {
                prop_assert!(fa.exact_div(&g).is_some());
                prop_assert!(fb.exact_div(&g).is_some());
                if !f.is_zero() {
                    prop_assert!(g.exact_div(&f.monic()).is_some());
                }
            }
        }
    }
}
