//! Exact linear algebra over the coordinate ring of the constraint surface.
//!
//! Entries are polynomials taken modulo a Gröbner basis; an entry is zero
//! iff its normal form vanishes. Results are generic: every polynomial we
//! divide by is recorded in a [`Certificate`].

mod certificate;

pub use certificate::{Assumption, Certificate, Justification};

use std::sync::Arc;

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{Polynomial, Ring};

pub type Vector = Vec<Polynomial>;
pub type Matrix = Vec<Vec<Polynomial>>;

/// Fraction-free reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows; row `k` has its pivot in column `pivots[k]` and zeros
    /// in every other pivot column.
    pub rows: Matrix,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn reduce_all(m: &Matrix, modulus: &GroebnerBasis) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|x| modulus.normal_form(x)).collect())
        .collect()
}

fn ncols(m: &Matrix) -> usize {
    m.first().map_or(0, |r| r.len())
}

fn monic_row(row: &mut [Polynomial]) {
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        let inv = first.lc().inv().expect("nonzero");
        if !inv.is_one() {
            for x in row.iter_mut() {
                *x = x.scale(&inv);
            }
        }
    }
}

/// Gaussian elimination without division. Pivots are chosen with the fewest
/// terms, ties broken by the smaller leading monomial and then row index.
pub fn echelon(m: &Matrix, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<Echelon> {
    let n = ncols(m);
    let mut a = reduce_all(m, modulus);
    let order = modulus.ring().order().clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let best = (r..a.len())
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| {
                let (x, y) = (&a[i][col], &a[j][col]);
                x.len()
                    .cmp(&y.len())
                    .then_with(|| order.cmp(x.lm(), y.lm()))
                    .then(i.cmp(&j))
            });
        let Some(b) = best else { continue };
        a.swap(r, b);
        let p = a[r][col].clone();
        cert.record(&p, modulus)?;
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let row: Vec<Polynomial> = (0..n)
                .map(|j| modulus.normal_form(&p.mul(&a[i][j]).sub(&f.mul(&a[r][j]))))
                .collect();
            a[i] = row;
            monic_row(&mut a[i]);
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Ok(Echelon {
        rows: a,
        pivots,
        ncols: n,
    })
}

/// Generic rank of `m` over the constraint surface.
pub fn rank(m: &Matrix, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<usize> {
    Ok(echelon(m, modulus, cert)?.rank())
}

/// Divides a vector by the gcd of its entries and normalizes its sign.
fn primitive(v: Vector) -> Vector {
    let g = v.iter().fold(Polynomial::zero(v[0].ring()), |g, x| g.gcd(x));
    let mut out: Vector = if g.is_constant() || g.is_zero() {
        v
    } else {
        v.iter().map(|x| x.exact_div(&g).expect("gcd divides")).collect()
    };
    monic_row(&mut out);
    out
}

/// `m * v`, reduced.
pub fn apply(m: &Matrix, v: &[Polynomial], modulus: &GroebnerBasis) -> Vector {
    m.iter()
        .map(|row| {
            let s = row
                .iter()
                .zip(v)
                .fold(Polynomial::zero(modulus.ring()), |s, (a, b)| s.add(&a.mul(b)));
            modulus.normal_form(&s)
        })
        .collect()
}

fn annihilates(m: &Matrix, v: &[Polynomial], modulus: &GroebnerBasis) -> bool {
    apply(m, v, modulus).iter().all(|x| x.is_zero())
}

/// Basis of the generic kernel with polynomial entries. Every vector is
/// checked to satisfy `m * v = 0` on the constraint surface.
pub fn kernel(m: &Matrix, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<Vec<Vector>> {
    let e = echelon(m, modulus, cert)?;
    let ring = modulus.ring();
    let mut out = Vec::new();
    for f in (0..e.ncols).filter(|c| !e.pivots.contains(c)) {
        let active: Vec<usize> = (0..e.rank()).filter(|&k| !e.rows[k][f].is_zero()).collect();
        let l = active
            .iter()
            .fold(Polynomial::one(ring), |l, &k| l.lcm(&e.rows[k][e.pivots[k]]));
        let mut v = vec![Polynomial::zero(ring); e.ncols];
        v[f] = l.clone();
        for &k in &active {
            let d = &e.rows[k][e.pivots[k]];
            let s = l.exact_div(d).expect("lcm divisible");
            v[e.pivots[k]] = modulus.normal_form(&e.rows[k][f].mul(&s).neg());
        }
        let p = primitive(v.clone());
        let v = if annihilates(m, &p, modulus) { p } else { v };
        if !annihilates(m, &v, modulus) {
            return Err(Error::Inconsistent("kernel vector fails verification".into()));
        }
        out.push(v);
    }
    Ok(out)
}

/// Determinant by fraction-free (Bareiss) elimination, exactly in the
/// polynomial ring.
pub fn determinant(m: &Matrix, ring: &Arc<Ring>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn minor(m: &Matrix, r: usize, c: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != c)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Adjugate matrix: `m * adj = det * I`.
pub fn adjugate(m: &Matrix, ring: &Arc<Ring>) -> Matrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![Polynomial::one(ring)]];
    }
    let mut adj = vec![vec![Polynomial::zero(ring); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&minor(m, i, j), ring);
            adj[j][i] = if (i + j) % 2 == 1 { d.neg() } else { d };
        }
    }
    adj
}

/// Inverse as `adj / det`.
#[derive(Clone, Debug)]
pub struct Inverse {
    pub adj: Matrix,
    pub det: Polynomial,
}

/// Inverts `c` on the constraint surface; `c * adj = det * I` is verified.
pub fn inverse(c: &Matrix, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<Inverse> {
    let ring = modulus.ring();
    let c = reduce_all(c, modulus);
    let det = modulus.normal_form(&determinant(&c, ring));
    if det.is_zero() {
        return Err(Error::Inconsistent(
            "second-class matrix is singular on the constraint surface".into(),
        ));
    }
    cert.record(&det, modulus)?;
    let adj = reduce_all(&adjugate(&c, ring), modulus);
    let n = c.len();
    for i in 0..n {
        let col: Vector = (0..n).map(|k| adj[k][i].clone()).collect();
        let prod = apply(&c, &col, modulus);
        for (k, x) in prod.iter().enumerate() {
            let want = if k == i { det.clone() } else { Polynomial::zero(ring) };
            if !modulus.normal_form(&x.sub(&want)).is_zero() {
                return Err(Error::Inconsistent("inverse fails verification".into()));
            }
        }
    }
    Ok(Inverse { adj, det })
}

/// Basis of vectors orthogonal to every row of `p`, taken from the columns
/// of the cleared projector `det(P P^T) I - P^T adj(P P^T) P`.
pub fn complement(p: &[Vector], dim: usize, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<Vec<Vector>> {
    let ring = modulus.ring();
    let s = p.len();
    if s == 0 {
        return Ok((0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                    .collect()
            })
            .collect());
    }
    let gram: Matrix = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    p[i].iter()
                        .zip(&p[j])
                        .fold(Polynomial::zero(ring), |a, (x, y)| a.add(&x.mul(y)))
                })
                .collect()
        })
        .collect();
    let det = determinant(&gram, ring);
    if modulus.normal_form(&det).is_zero() {
        return Err(Error::Invalid("first-class vectors are linearly dependent".into()));
    }
    cert.record(&det, modulus)?;
    let adj = adjugate(&gram, ring);
    // w = adj * P  (s x dim)
    let w: Matrix = (0..s)
        .map(|i| {
            (0..dim)
                .map(|c| {
                    (0..s).fold(Polynomial::zero(ring), |a, k| a.add(&adj[i][k].mul(&p[k][c])))
                })
                .collect()
        })
        .collect();
    let mut chosen: Vec<Vector> = Vec::new();
    let mut scratch = Certificate::default();
    for col in 0..dim {
        let v: Vector = (0..dim)
            .map(|r| {
                let proj = (0..s).fold(Polynomial::zero(ring), |a, i| a.add(&p[i][r].mul(&w[i][col])));
                let diag = if r == col { det.clone() } else { Polynomial::zero(ring) };
                diag.sub(&proj)
            })
            .collect();
        if v.iter().all(|x| modulus.normal_form(x).is_zero()) {
            continue;
        }
        let v = primitive(v);
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if rank(&trial, modulus, &mut scratch)? == trial.len() {
            chosen = trial;
        }
        if chosen.len() == dim - s {
            break;
        }
    }
    if chosen.len() != dim - s {
        return Err(Error::Invalid(format!(
            "complement has dimension {} instead of {}",
            chosen.len(),
            dim - s
        )));
    }
    for t in &chosen {
        if !annihilates(&p.to_vec(), t, modulus) {
            return Err(Error::Inconsistent("complement vector fails verification".into()));
        }
    }
    Ok(chosen.into_iter().map(|t| t.iter().map(|x| modulus.normal_form(x)).collect()).collect())
}

/// Rank of a rational matrix, used for numeric cross-checks.
pub fn numeric_rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero");
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].mul_ref(&inv);
                for j in 0..n {
                    let t = a[i][j].sub_ref(&f.mul_ref(&a[r][j]));
                    a[i][j] = t;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests;
