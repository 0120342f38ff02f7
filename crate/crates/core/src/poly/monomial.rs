/// Power product over a ring's variables.
///
/// The exponent vector always has the ring's length; the total degree and a
/// 64-bit support mask are cached for cheap degree ties and divisibility
/// rejection.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    deg: u32,
    mask: u64,
}

fn support_mask(exps: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        let mask = support_mask(&exps);
        Monomial {
            exps: exps.into_boxed_slice(),
            deg,
            mask,
        }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
            deg: 0,
            mask: 0,
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::new(e)
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), rhs.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            deg: self.deg + rhs.deg,
            mask: self.mask | rhs.mask,
        }
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        if self.deg > rhs.deg || self.mask & !rhs.mask != 0 {
            return false;
        }
        self.exps.iter().zip(rhs.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / rhs`, or `None` if `rhs` does not divide `self`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        if !rhs.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, rhs: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.mask & rhs.mask == 0
            && self
                .exps
                .iter()
                .zip(rhs.exps.iter())
                .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pads with zeros to length `n` (new variables appended at the end).
    pub fn pad(&self, n: usize) -> Monomial {
        let mut e = self.exps.to_vec();
        e.resize(n, 0);
        Monomial::new(e)
    }

    /// Same exponents with variable `i` set to `k`.
    pub fn with_exp(&self, i: usize, k: u16) -> Monomial {
        let mut e = self.exps.to_vec();
        e[i] = k;
        Monomial::new(e)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}
