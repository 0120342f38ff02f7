use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Monomial, Ring};
use crate::arith::{Field, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Coefficients live in `Q(params)`.
pub type Coeff = RationalFunction;

/// Sparse polynomial with terms strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, Coeff::from_i64(n))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), Coeff::one())],
        }
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.index_of(name)?))
    }

    /// The parameter with index `i` as a constant polynomial.
    pub fn param(ring: &Arc<Ring>, i: usize) -> Self {
        Self::constant(ring, Coeff::param(i))
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Sorts and merges arbitrary terms.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut map: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already strictly descending and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// All terms but the leading one.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this is a constant (zero included).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.first().expect("leading monomial of zero").0
    }

    pub fn lc(&self) -> &Coeff {
        &self.terms.first().expect("leading coefficient of zero").1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exp(i) > 0))
            .collect()
    }

    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.support().into_iter().all(allowed)
    }

    fn check(&self, rhs: &Polynomial) {
        assert!(
            Ring::same(&self.ring, &rhs.ring),
            "polynomials from different rings"
        );
    }

    pub fn checked_add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        if !Ring::same(&self.ring, &rhs.ring) {
            return Err(Error::RingMismatch("operands from different rings".into()));
        }
        Ok(self.add(rhs))
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        self.merge(rhs.terms.iter().cloned())
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        self.merge(rhs.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())))
    }

    /// `self - c * m * g` in one merge pass; the workhorse of reduction.
    pub fn sub_mul_term(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.check(g);
        let nc = c.neg_ref();
        self.merge(g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc.mul_ref(&nc))))
    }

    /// Merges a descending term stream into `self`.
    fn merge(&self, other: impl Iterator<Item = (Monomial, Coeff)>) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + 8);
        let mut a = self.terms.iter().peekable();
        for (m, c) in other {
            loop {
                match a.peek() {
                    Some((am, _)) => match order.cmp(am, &m) {
                        Ordering::Greater => out.push(a.next().unwrap().clone()),
                        Ordering::Equal => {
                            let (_, ac) = a.next().unwrap();
                            let s = ac.add_ref(&c);
                            if !s.is_zero() {
                                out.push((m.clone(), s));
                            }
                            break;
                        }
                        Ordering::Less => {
                            out.push((m.clone(), c.clone()));
                            break;
                        }
                    },
                    None => {
                        out.push((m.clone(), c.clone()));
                        break;
                    }
                }
            }
        }
        out.extend(a.cloned());
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect(),
        }
    }

    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.ring);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return rhs.mul_term(c, m);
        }
        if let [(m, c)] = rhs.terms.as_slice() {
            return self.mul_term(c, m);
        }
        Self::from_terms(
            &self.ring,
            self.terms.iter().flat_map(|(am, ac)| {
                rhs.terms
                    .iter()
                    .map(move |(bm, bc)| (am.mul(bm), ac.mul_ref(bc)))
            }),
        )
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn diff(&self, v: usize) -> Polynomial {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let k = m.exp(v);
                (m.with_exp(v, k - 1), c.mul_ref(&Coeff::from_i64(k as i64)))
            })
            .collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn diff_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.diff(self.ring.index_of(name)?))
    }

    /// Simultaneous substitution of variables by polynomials of the same ring.
    pub fn subst(&self, bindings: &[(usize, Polynomial)]) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        for (_, b) in bindings {
            self.check(b);
        }
        let n = self.ring.nvars();
        let mut target: Vec<Option<&Polynomial>> = vec![None; n];
        for (v, b) in bindings {
            target[*v] = Some(b);
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut kept = m.exps().to_vec();
            let mut t = Self::one(&self.ring);
            for v in 0..n {
                let k = m.exp(v);
                if k == 0 {
                    continue;
                }
                if let Some(b) = target[v] {
                    kept[v] = 0;
                    let p = powers.entry((v, k)).or_insert_with(|| b.pow(k as u32));
                    t = t.mul(p);
                }
            }
            acc = acc.add(&t.mul_term(c, &Monomial::new(kept)));
        }
        acc
    }

    /// Re-expresses the polynomial in `ring`, mapping variables by name; only
    /// the variables actually present need to exist there.
    pub fn embed(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if Ring::same(&self.ring, ring) {
            return Ok(self.clone());
        }
        if ring.params() != self.ring.params() {
            return Err(Error::RingMismatch("parameter lists differ".into()));
        }
        if ring.extends(&self.ring) {
            let n = ring.nvars();
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.iter().map(|(m, c)| (m.pad(n), c.clone())).collect(),
            });
        }
        let mut map = vec![0; self.ring.nvars()];
        for i in self.support() {
            map[i] = ring.index_of(self.ring.table().name(i))?;
        }
        let n = ring.nvars();
        Ok(Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &k) in m.exps().iter().enumerate() {
                    if k > 0 {
                        e[map[i]] = k;
                    }
                }
                (Monomial::new(e), c.clone())
            }),
        ))
    }

    /// Splits a polynomial that is at most linear in `vars` into
    /// `c0 + sum_j c_j * vars[j]` with the `c`s free of `vars`.
    pub fn linear_parts(&self, vars: &[usize]) -> Result<(Polynomial, Vec<Polynomial>)> {
        let mut c0 = Vec::new();
        let mut cs: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); vars.len()];
        for (m, c) in &self.terms {
            let hits: Vec<usize> = (0..vars.len()).filter(|&j| m.exp(vars[j]) > 0).collect();
            match hits.as_slice() {
                [] => c0.push((m.clone(), c.clone())),
                [j] if m.exp(vars[*j]) == 1 => {
                    cs[*j].push((m.with_exp(vars[*j], 0), c.clone()))
                }
                _ => {
                    return Err(Error::Invalid(
                        "expression is not linear in the requested variables".into(),
                    ))
                }
            }
        }
        Ok((
            Self::from_terms(&self.ring, c0),
            cs.into_iter().map(|t| Self::from_terms(&self.ring, t)).collect(),
        ))
    }

    /// Evaluates at rational values for every variable and parameter.
    pub fn eval(&self, vars: &[Rational], params: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval(params)?;
            for (i, &k) in m.exps().iter().enumerate() {
                if k > 0 {
                    t = t.mul_ref(&vars[i].pow(k as u32));
                }
            }
            acc = acc.add_ref(&t);
        }
        Some(acc)
    }

    /// Maps every coefficient; the result is re-normalized.
    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
