use super::{Field, Rational, SparsePoly};

type Poly = SparsePoly<Rational>;

/// Element of `Q(p_1, ..., p_k)`: a reduced fraction of polynomials in the
/// parameters with a monic denominator.
///
/// Canonical form makes structural equality coincide with field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn from_poly(num: Poly) -> Self {
        RationalFunction {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The `i`-th parameter.
    pub fn param(i: usize) -> Self {
        Self::from_poly(Poly::var(i))
    }

    /// Reduces `num / den`; `None` if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = den.as_constant() {
            return Some(Self::from_poly(num.scale(&c.inv()?)));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.lc().inv()?;
        Some(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// The value if this is a constant of `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Evaluates at a parameter point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        self.num.eval(point).div_ref(&d)
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("nonzero denominator")
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel; the result is already reduced with a monic denominator.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let div = |a: &Poly, g: &Poly| {
            if g.is_one() {
                a.clone()
            } else {
                a.exact_div(g).expect("gcd divides")
            }
        };
        RationalFunction {
            num: div(&self.num, &g1).mul(&div(&rhs.num, &g2)),
            den: div(&self.den, &g2).mul(&div(&rhs.den, &g1)),
        }
    }

    fn neg_ref(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.lc().inv()?;
        Some(RationalFunction {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
}

impl std::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "({:?})", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type R = RationalFunction;

    fn g() -> R {
        R::param(0)
    }

    fn k(n: i64) -> R {
        R::from_i64(n)
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..3, 0u32..2), -3i64..4), 0..4).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|((a, b), c)| (vec![a, b], Rational::from(c))))
        })
    }

    fn arb_ratfun() -> impl Strategy<Value = R> {
        (arb_poly(), arb_poly()).prop_filter_map("zero denominator", |(n, d)| R::new(n, d))
    }

    #[test]
    fn cancels_common_factor() {
        let a = g().mul_ref(&g()).sub_ref(&k(1));
        let b = g().sub_ref(&k(1));
        let q = a.div_ref(&b).unwrap();
        assert_eq!(q, g().add_ref(&k(1)));
        assert!(q.is_polynomial());
    }

    #[test]
    fn half_over_g_squared_times_g_squared() {
        let h = k(1).div_ref(&k(2).mul_ref(&g().pow(2))).unwrap();
        assert_eq!(h.mul_ref(&g().pow(2)), R::from_rational(Rational::new(1, 2).unwrap()));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(R::zero().inv().is_none());
        assert!(R::new(Poly::one(), Poly::zero()).is_none());
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
            prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
            prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
            prop_assert!(a.sub_ref(&a).is_zero());
            if let Some(ai) = a.inv() {
                prop_assert!(a.mul_ref(&ai).is_one());
            }
        }

        #[test]
        fn agrees_with_evaluation(a in arb_ratfun(), b in arb_ratfun(), x in -5i64..6, y in -5i64..6) {
            let pt = [Rational::from(x), Rational::from(y)];
            let (s, p) = (a.add_ref(&b), a.mul_ref(&b));
            if let (Some(va), Some(vb)) = (a.eval(&pt), b.eval(&pt)) {
                if let Some(vs) = s.eval(&pt) {
                    prop_assert_eq!(vs, va.add_ref(&vb));
                }
                if let Some(vp) = p.eval(&pt) {
                    prop_assert_eq!(vp, va.mul_ref(&vb));
                }
            }
        }
    }
}
