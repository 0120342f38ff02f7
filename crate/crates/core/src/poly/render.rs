//! Canonical text form of polynomials.
//!
//! Terms appear in descending order, exponents use `^`, products use an
//! explicit `*`, and coefficients are written `num/den` with the rational
//! content pulled out front. The output re-parses to the same polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Coeff, Monomial, Polynomial};
use crate::arith::{Field, Rational, SparsePoly};

type ParamPoly = SparsePoly<Rational>;

/// Splits `p` into `content * primitive` where the primitive part has
/// coprime integer coefficients and a positive leading coefficient.
fn content_split(p: &ParamPoly) -> (Rational, ParamPoly) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return (Rational::zero(), ParamPoly::zero());
    }
    let mut content = Rational::new(num_gcd, den_lcm).expect("nonzero lcm");
    if p.lc().is_negative() {
        content = content.neg_ref();
    }
    let inv = content.inv().expect("nonzero content");
    (content, p.scale(&inv))
}

fn render_param_monomial(exps: &[u32], params: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in exps.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(params[i].clone()),
            _ => parts.push(format!("{}^{}", params[i], k)),
        }
    }
    parts.join("*")
}

/// Renders a primitive integer polynomial in the parameters, lex descending.
fn render_param_poly(p: &ParamPoly, params: &[String]) -> String {
    let mut out = String::new();
    for (i, (e, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = render_param_monomial(e, params);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

fn is_single_power(p: &ParamPoly) -> bool {
    match p.terms() {
        [(e, c)] => c.is_one() && e.iter().filter(|&&k| k > 0).count() == 1,
        _ => false,
    }
}

/// Absolute value of a coefficient as text plus its sign; the empty string
/// stands for 1.
fn coeff_abs(c: &Coeff, params: &[String]) -> (bool, String) {
    let (cn, n) = content_split(c.numer());
    let (cd, d) = content_split(c.denom());
    let r = cn.checked_div(&cd).expect("nonzero denominator content");
    let neg = r.is_negative();
    let r = r.abs();
    let (p, q) = (Rational::from_integer(r.numer().clone()), r.denom().clone());

    let num = if n.is_one() {
        if p.is_one() {
            String::new()
        } else {
            p.to_string()
        }
    } else {
        let ns = render_param_poly(&n, params);
        let ns = if n.terms().len() > 1 { format!("({ns})") } else { ns };
        if p.is_one() {
            ns
        } else {
            format!("{p}*{ns}")
        }
    };
    let den = if d.is_one() {
        if q.is_one() {
            None
        } else {
            Some(q.to_string())
        }
    } else {
        let ds = render_param_poly(&d, params);
        if q.is_one() && is_single_power(&d) {
            Some(ds)
        } else if q.is_one() {
            Some(format!("({ds})"))
        } else {
            Some(format!("({q}*{ds})"))
        }
    };
    match den {
        None => (neg, num),
        Some(den) => {
            let num = if num.is_empty() { "1".to_string() } else { num };
            (neg, format!("{num}/{den}"))
        }
    }
}

/// Renders a coefficient on its own, e.g. `-1/(2*g^2)`.
pub fn render_coeff(c: &Coeff, params: &[String]) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let (neg, s) = coeff_abs(c, params);
    let s = if s.is_empty() { "1".to_string() } else { s };
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

pub fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in m.exps().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

pub(super) fn render_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let (names, params) = (ring.table().names(), ring.params());
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let (neg, cs) = coeff_abs(c, params);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = render_monomial(m, names);
        match (cs.is_empty(), ms.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&ms),
            (false, true) => out.push_str(&cs),
            (false, false) => {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&ms);
            }
        }
    }
    out
}
