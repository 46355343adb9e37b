//! The ambient ring: `k[x_1..x_n]` standard graded, `k = F_p`.
//!
//! Field elements are plain `u32` values reduced to `[0, p)`; every
//! arithmetic routine takes the ring as context. The maximal graded ideal
//! `m = (x_1..x_n)` is implicit.

use crate::Error;

/// Coefficient in `F_p`, always reduced modulo the ring's prime.
pub type Coeff = u32;

/// Default coefficient prime: large enough that random linear forms are
/// generic with overwhelming probability, small enough for `u64` products.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    p: u32,
    vars: Vec<String>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p64 = p as u64;
    while d * d <= p64 {
        if p64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PolyRing {
    pub fn new(p: u32, vars: Vec<String>) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if vars.is_empty() {
            return Err(Error::NoVariables);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(PolyRing { p, vars })
    }

    /// Ring with variables `x1..xn` over the default prime.
    pub fn standard(n: usize) -> Self {
        let names = ["x", "y", "z", "w"];
        let vars = if n <= 4 {
            names[..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        PolyRing::new(DEFAULT_PRIME, vars).expect("standard ring is valid")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    // ---- field arithmetic on reduced representatives ----

    pub fn reduce_i64(&self, v: i64) -> Coeff {
        let p = self.p as i64;
        (((v % p) + p) % p) as Coeff
    }

    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as Coeff
    }

    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.p as u64) as Coeff
    }

    /// Multiplicative inverse by extended Euclid. Panics on zero.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "{a} not invertible mod {}", self.p);
        self.reduce_i64(t0)
    }

    pub fn div(&self, a: Coeff, b: Coeff) -> Coeff {
        self.mul(a, self.inv(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rejects_bad_rings() {
        assert!(matches!(
            PolyRing::new(32004, vec!["x".into()]),
            Err(Error::NonPrimeModulus(_))
        ));
        assert!(matches!(PolyRing::new(7, vec![]), Err(Error::NoVariables)));
        assert!(matches!(
            PolyRing::new(7, vec!["x".into(), "x".into()]),
            Err(Error::DuplicateVariable(_))
        ));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let r = PolyRing::standard(2);
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let a = rng.gen_range(0..r.p());
            let b = rng.gen_range(0..r.p());
            let c = rng.gen_range(0..r.p());
            assert_eq!(r.add(a, b), r.add(b, a));
            assert_eq!(r.mul(a, b), r.mul(b, a));
            assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
            assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
            assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
            assert_eq!(r.add(a, r.neg(a)), 0);
            if a != 0 {
                assert_eq!(r.mul(a, r.inv(a)), 1);
            }
        }
    }

    #[test]
    fn reduce_handles_negatives() {
        let r = PolyRing::standard(2);
        assert_eq!(r.reduce_i64(-1), r.p() - 1);
        assert_eq!(r.reduce_i64(r.p() as i64), 0);
    }
}
