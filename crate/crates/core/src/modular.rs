//! Arithmetic in the prime field F_p and the binomial coefficients that
//! appear in the relations of the algebra.

use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// An odd prime. Construction rejects 2, composites and anything below 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into the canonical range.
    #[inline]
    pub fn reduce(self, x: i64) -> Fp {
        Fp(x.rem_euclid(self.0 as i64) as u32)
    }

    #[inline]
    pub fn add(self, a: Fp, b: Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        Fp((s % self.0 as u64) as u32)
    }

    #[inline]
    pub fn sub(self, a: Fp, b: Fp) -> Fp {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: Fp) -> Fp {
        if a.0 == 0 {
            a
        } else {
            Fp(self.0 - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.0 as u64) as u32)
    }

    pub fn pow(self, mut base: Fp, mut exp: u64) -> Fp {
        let mut acc = Fp::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Fp) -> Option<Fp> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }

    /// `(-1)^e` as a field element.
    #[inline]
    pub fn sign(self, e: u64) -> Fp {
        if e.is_multiple_of(2) {
            Fp::ONE
        } else {
            Fp(self.0 - 1)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p, always stored in `0..p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `C(n, k) mod p` for `0 <= k <= n < p` by the multiplicative formula.
fn small_binom(p: Prime, n: u64, k: u64) -> Fp {
    let k = k.min(n - k);
    let mut num = Fp::ONE;
    let mut den = Fp::ONE;
    for i in 0..k {
        num = p.mul(num, p.reduce((n - i) as i64));
        den = p.mul(den, p.reduce((i + 1) as i64));
    }
    // den is a product of integers in 1..p, hence a unit
    p.mul(num, p.inv(den).expect("unit denominator"))
}

/// `C(n, k) mod p` via Lucas' theorem. Returns zero whenever `k < 0`,
/// `n < 0` or `k > n`.
pub fn binom_mod_p(p: Prime, n: i64, k: i64) -> Fp {
    if n < 0 || k < 0 || k > n {
        return Fp::ZERO;
    }
    let q = p.get() as u64;
    let (mut n, mut k) = (n as u64, k as u64);
    let mut acc = Fp::ONE;
    while k > 0 {
        let (nd, kd) = (n % q, k % q);
        if kd > nd {
            return Fp::ZERO;
        }
        acc = p.mul(acc, small_binom(p, nd, kd));
        n /= q;
        k /= q;
    }
    acc
}

/// Binomials mod a fixed prime, backed by a Pascal triangle of the base-p
/// digit binomials. Lookups are then a handful of table reads per digit.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    p: Prime,
    // row-major (p x p), entry [n * p + k] = C(n, k) mod p for k <= n
    digits: Vec<Fp>,
}

/// Largest prime for which the full digit triangle is tabulated.
const TABLE_LIMIT: u32 = 1 << 10;

impl BinomialTable {
    pub fn new(p: Prime) -> Self {
        let q = p.get();
        let digits = if q <= TABLE_LIMIT {
            let q = q as usize;
            let mut t = vec![Fp::ZERO; q * q];
            for n in 0..q {
                t[n * q] = Fp::ONE;
                for k in 1..=n {
                    t[n * q + k] = p.add(t[(n - 1) * q + k - 1], t[(n - 1) * q + k]);
                }
            }
            t
        } else {
            Vec::new()
        };
        BinomialTable { p, digits }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn binom(&self, n: i64, k: i64) -> Fp {
        if self.digits.is_empty() {
            return binom_mod_p(self.p, n, k);
        }
        if n < 0 || k < 0 || k > n {
            return Fp::ZERO;
        }
        let q = self.p.get() as u64;
        let (mut n, mut k) = (n as u64, k as u64);
        let mut acc = Fp::ONE;
        while k > 0 {
            let (nd, kd) = (n % q, k % q);
            if kd > nd {
                return Fp::ZERO;
            }
            acc = self.p.mul(acc, self.digits[(nd * q + kd) as usize]);
            n /= q;
            k /= q;
        }
        acc
    }

    /// `A(k, r, j) = (-1)^(r+j) C((p-1)(k-j) - 1, r - pj)`.
    pub fn coeff_a(&self, k: u64, r: u64, j: u64) -> Fp {
        let q = self.p.get() as i64;
        let top = (q - 1) * (k as i64 - j as i64) - 1;
        let bottom = r as i64 - q * j as i64;
        self.p.mul(self.p.sign(r + j), self.binom(top, bottom))
    }

    /// `B(k, r, j) = (-1)^(r+j) C((p-1)(k-j), r - pj)`.
    pub fn coeff_b(&self, k: u64, r: u64, j: u64) -> Fp {
        let q = self.p.get() as i64;
        let top = (q - 1) * (k as i64 - j as i64);
        let bottom = r as i64 - q * j as i64;
        self.p.mul(self.p.sign(r + j), self.binom(top, bottom))
    }
}

/// `A(k, r, j)` mod p without a precomputed table.
pub fn coeff_a(p: Prime, k: u64, r: u64, j: u64) -> Fp {
    let q = p.get() as i64;
    let top = (q - 1) * (k as i64 - j as i64) - 1;
    p.mul(p.sign(r + j), binom_mod_p(p, top, r as i64 - q * j as i64))
}

/// `B(k, r, j)` mod p without a precomputed table.
pub fn coeff_b(p: Prime, k: u64, r: u64, j: u64) -> Fp {
    let q = p.get() as i64;
    let top = (q - 1) * (k as i64 - j as i64);
    p.mul(p.sign(r + j), binom_mod_p(p, top, r as i64 - q * j as i64))
}
