//! Hilbert functions, series and polynomials.
//!
//! Three routes to Hilbert data coexist by design and are cross-checked by
//! the test suites:
//! * per-degree dimension counts of standard monomials against a Gröbner
//!   basis of the relations ([`count_standard_monomials`]);
//! * the series numerator read off a Betti table (alternating sum of
//!   twists), from which the Hilbert polynomial and its coefficients in the
//!   binomial basis are extracted exactly;
//! * the combinatorial numerator of a monomial quotient
//!   ([`lead_term_series_numerator`]), used where a dimension or a
//!   finite-length test is needed without building a resolution.

use crate::freemod::FreeModule;
use crate::monomial::Monomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Combinatorial binomial with the convention `C(a, b) = 0` when `a < b` or
/// `b < 0`.
pub fn binom_big(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b).max(0);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..b {
        num *= BigInt::from(a - k);
        den *= BigInt::from(k + 1);
    }
    num / den
}

/// Same as [`binom_big`] for counting-sized values.
pub fn binom_u64(a: i64, b: i64) -> u64 {
    use std::convert::TryFrom;
    u64::try_from(binom_big(a, b)).expect("binomial fits u64")
}

/// The polynomial `C(v, m) = v(v-1)...(v-m+1)/m!` evaluated at any integer,
/// as opposed to the combinatorial convention above.
pub fn binom_poly(v: i64, m: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..m as i64 {
        num *= BigInt::from(v - k);
        den *= BigInt::from(k + 1);
    }
    num / den
}

/// Integer Laurent polynomial in one variable `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    off: i64,
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { off: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { off: 0, coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(e: i64, c: BigInt) -> Self {
        ZPoly { off: e, coeffs: vec![c] }.normalized()
    }

    pub fn from_coeffs(off: i64, coeffs: Vec<BigInt>) -> Self {
        ZPoly { off, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.off += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.off = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if e < self.off || e >= self.off + self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[(e - self.off) as usize].clone()
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.off)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.off + self.coeffs.len() as i64 - 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.off + k as i64, c))
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let off = self.off.min(other.off);
        let hi = (self.off + self.coeffs.len() as i64).max(other.off + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - off) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - off) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - off) as usize] += c;
        }
        ZPoly { off, coeffs }.normalized()
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            off: self.off,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let off = self.off + other.off;
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly { off, coeffs }.normalized()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact division by `(1 - z)`; `None` when `1` is not a root.
    pub fn div_one_minus_z(&self) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // K = (1 - z) Q with Q_k = sum_{j <= k} K_j (indices relative to off)
        let mut q = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            q.push(acc.clone());
        }
        Some(ZPoly { off: self.off, coeffs: q }.normalized())
    }

    /// Multiplicity of the root `z = 1` (0 for the zero polynomial).
    pub fn one_multiplicity(&self) -> usize {
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.div_one_minus_z() {
                Some(next) => {
                    k += 1;
                    cur = next;
                }
                None => break,
            }
        }
        k
    }
}

/// A numerical polynomial in the binomial basis of dimension `d`:
/// `P(t) = sum_i coeffs[i] * C(t + d - 1 - i, d - 1 - i)` for `i < d`.
/// `d = 0` is the zero polynomial. The basis makes the difference operator
/// exact: applying it drops the last coefficient and lowers `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPoly {
    d: usize,
    coeffs: Vec<BigInt>,
}

impl HilbertPoly {
    pub fn zero() -> Self {
        HilbertPoly { d: 0, coeffs: Vec::new() }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        HilbertPoly { d: coeffs.len(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0
    }

    pub fn dim_basis(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = self.d - 1 - i;
            acc += c * binom_poly(t + m as i64, m);
        }
        acc
    }

    /// `i`-fold finite difference `ΔP(t) = P(t) - P(t-1)`.
    pub fn delta(&self, i: usize) -> HilbertPoly {
        if i >= self.d {
            return HilbertPoly::zero();
        }
        HilbertPoly {
            d: self.d - i,
            coeffs: self.coeffs[..self.d - i].to_vec(),
        }
    }

    /// Whether the polynomial is constant (degree <= 0).
    pub fn is_constant(&self) -> bool {
        self.d <= 1
    }

    /// `P(t + s)` re-expanded in the binomial basis.
    pub fn shift_arg(&self, s: i64) -> HilbertPoly {
        // match values on d sample points by Newton's forward differences
        let d = self.d;
        if d == 0 || s == 0 {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); d];
        // c_i = (Δ^{d-1-i} P')(i - d + ...): recover coefficients from
        // iterated differences evaluated at the basis root t = -1:
        // with P = Σ c_i C(t+d-1-i, d-1-i), Δ^k P = Σ_{i<d-k} c_i C(t+d-1-k-i, d-1-k-i)
        // and C(-1+m, m) = 0 for m >= 1, C(-1, 0) = 1, so (Δ^k P)(-1) = c_{d-1-k}.
        let shifted_eval = |t: i64| self.eval(t + s);
        for k in 0..d {
            // (Δ^k Q)(-1) with Q(t) = P(t+s), via the alternating sum
            let mut acc = BigInt::zero();
            for j in 0..=k {
                let v = shifted_eval(-1 - j as i64);
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                acc += sign * binom_big(k as i64, j as i64) * v;
            }
            out[d - 1 - k] = acc;
        }
        HilbertPoly { d, coeffs: out }
    }
}

/// Hilbert data of a module with numerator `K(z)` over `(1-z)^n`.
#[derive(Debug, Clone)]
pub struct HilbertData {
    /// Alternating Betti numerator `K(z) = sum (-1)^i beta_{i,j} z^j`.
    pub numerator: ZPoly,
    /// `K / (1-z)^{n-d}` with nonzero value at 1 (zero module: zero).
    pub reduced: ZPoly,
    /// Krull dimension (0 for finite length and for the zero module).
    pub dim: usize,
    /// Hilbert polynomial (zero polynomial when `dim = 0`).
    pub poly: HilbertPoly,
    /// Coefficients `e_0..e_{d-1}` with `P(t) = sum (-1)^i e_i C(t+d-1-i, d-1-i)`.
    pub e: Vec<BigInt>,
    /// `e_0` when `dim >= 1`; total length when `dim = 0`.
    pub degree: BigInt,
}

impl HilbertData {
    pub fn from_numerator(numerator: ZPoly, n: usize) -> HilbertData {
        if numerator.is_zero() {
            return HilbertData {
                numerator,
                reduced: ZPoly::zero(),
                dim: 0,
                poly: HilbertPoly::zero(),
                e: Vec::new(),
                degree: BigInt::zero(),
            };
        }
        let mult = numerator.one_multiplicity();
        assert!(mult <= n, "numerator divisible by (1-z)^{mult} > (1-z)^{n}");
        let d = n - mult;
        let mut reduced = numerator.clone();
        for _ in 0..(n - d) {
            reduced = reduced.div_one_minus_z().unwrap();
        }
        if d == 0 {
            // finite length: the series itself is the (Laurent) polynomial
            let degree = reduced.eval_at_one();
            return HilbertData {
                numerator,
                reduced,
                dim: 0,
                poly: HilbertPoly::zero(),
                e: Vec::new(),
                degree,
            };
        }
        // e_i = Q^{(i)}(1) / i! = sum_s Q_s C(s, i), exact in BigInt
        let mut e = Vec::with_capacity(d);
        for i in 0..d {
            let mut acc = BigInt::zero();
            for (s, c) in reduced.terms() {
                acc += c * binom_poly(s, i);
            }
            e.push(acc);
        }
        let coeffs = e
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v })
            .collect();
        let degree = e[0].clone();
        HilbertData {
            numerator,
            reduced,
            dim: d,
            poly: HilbertPoly::new(coeffs),
            e,
            degree,
        }
    }

    /// Hilbert function value at `t` read from the series (exact for all t).
    pub fn series_value(&self, n: usize, t: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, c) in self.numerator.terms() {
            acc += c * binom_big(t - j + n as i64 - 1, n as i64 - 1);
        }
        acc
    }
}

/// Counts degree-`t` monomials `u e_r` of the free module avoiding the given
/// lead terms — the standard monomial basis of the quotient in degree `t`.
pub fn count_standard_monomials(
    n: usize,
    ambient: &FreeModule,
    leads: &[(usize, Monomial)],
    t: i64,
) -> u64 {
    let mut total = 0u64;
    for (r, a) in ambient.twists().iter().enumerate() {
        let d = t - a;
        if d < 0 {
            continue;
        }
        let blockers: Vec<&Monomial> = leads
            .iter()
            .filter(|(p, _)| *p == r)
            .map(|(_, m)| m)
            .collect();
        for m in crate::monomial::monomials_of_degree(n, d as u32) {
            if !blockers.iter().any(|b| b.divides(&m)) {
                total += 1;
            }
        }
    }
    total
}

/// Series numerator of `F / <lead terms>` over `(1-z)^n`, computed by the
/// colon/sum splitting recursion on monomial ideals.
pub fn lead_term_series_numerator(
    n: usize,
    ambient: &FreeModule,
    leads: &[(usize, Monomial)],
) -> ZPoly {
    let mut acc = ZPoly::zero();
    for (r, a) in ambient.twists().iter().enumerate() {
        let gens: Vec<Monomial> = leads
            .iter()
            .filter(|(p, _)| *p == r)
            .map(|(_, m)| m.clone())
            .collect();
        let num = monomial_ideal_numerator(n, gens);
        acc = acc.add(&ZPoly::monomial(*a, BigInt::one()).mul(&num));
    }
    acc
}

/// Numerator of `R/I` for a monomial ideal `I`.
pub fn monomial_ideal_numerator(n: usize, gens: Vec<Monomial>) -> ZPoly {
    let gens = minimalize_monomials(gens);
    if gens.iter().any(|g| g.is_one()) {
        return ZPoly::zero();
    }
    if gens.is_empty() {
        return ZPoly::one();
    }
    // pure powers of distinct variables: complete intersection
    if gens.iter().all(|g| g.exps().iter().filter(|e| **e > 0).count() == 1) {
        let mut acc = ZPoly::one();
        for g in &gens {
            acc = acc.mul(&ZPoly::one().sub(&ZPoly::monomial(g.degree() as i64, BigInt::one())));
        }
        return acc;
    }
    // pivot on the variable used most among mixed generators
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (i, e) in g.exps().iter().enumerate() {
            if *e > 0 {
                counts[i] += 1;
            }
        }
    }
    let mixed = gens
        .iter()
        .find(|g| g.exps().iter().filter(|e| **e > 0).count() > 1)
        .unwrap();
    let pivot = mixed
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .max_by_key(|(i, _)| counts[*i])
        .map(|(i, _)| i)
        .unwrap();
    let x = Monomial::var(n, pivot);
    // I = (I + x) ⊕ z * (I : x)
    let mut plus = gens.clone();
    plus.push(x.clone());
    let colon = gens
        .iter()
        .map(|g| {
            let mut e = g.exps().to_vec();
            if e[pivot] > 0 {
                e[pivot] -= 1;
            }
            Monomial::new(e)
        })
        .collect();
    monomial_ideal_numerator(n, plus)
        .add(&ZPoly::monomial(1, BigInt::one()).mul(&monomial_ideal_numerator(n, colon)))
}

fn minimalize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| g.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Verifies `H - P = sum_i (-1)^i dim H^i` — the degreewise comparison of a
/// Hilbert function value against the local cohomology Euler sum.
pub fn grothendieck_serre_check(h: &BigInt, p: &BigInt, lc_dims: &[(usize, u64)]) -> bool {
    let mut rhs = BigInt::zero();
    for (i, dim) in lc_dims {
        let term = BigInt::from(*dim);
        if i % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    h - p == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom_big(4, 2), big(6));
        assert_eq!(binom_big(1, 2), big(0));
        assert_eq!(binom_big(-3, 2), big(0));
        assert_eq!(binom_big(5, 0), big(1));
        // polynomial convention differs at negative arguments
        assert_eq!(binom_poly(-3, 2), big(6));
        assert_eq!(binom_poly(-1, 1), big(-1));
        assert_eq!(binom_poly(-3, 0), big(1));
    }

    #[test]
    fn zpoly_division() {
        // 1 - 2z^2 + z^3 = (1 - z)(1 + z - z^2)
        let k = ZPoly::from_coeffs(0, vec![big(1), big(0), big(-2), big(1)]);
        let q = k.div_one_minus_z().unwrap();
        assert_eq!(q, ZPoly::from_coeffs(0, vec![big(1), big(1), big(-1)]));
        assert_eq!(k.one_multiplicity(), 1);
        assert!(q.div_one_minus_z().is_none());
    }

    #[test]
    fn hilbert_poly_of_plane() {
        // numerator 1, n = 2: P(t) = t + 1, d = 2, e = (1, 0)
        let h = HilbertData::from_numerator(ZPoly::one(), 2);
        assert_eq!(h.dim, 2);
        assert_eq!(h.e, vec![big(1), big(0)]);
        assert_eq!(h.poly.eval(3), big(4));
        assert_eq!(h.degree, big(1));
    }

    #[test]
    fn hilbert_poly_of_hypersurface_quotient() {
        // R/(x) in three variables: K = 1 - z, d = 2, P(t) = t + 1
        let k = ZPoly::from_coeffs(0, vec![big(1), big(-1)]);
        let h = HilbertData::from_numerator(k, 3);
        assert_eq!(h.dim, 2);
        assert_eq!(h.e, vec![big(1), big(0)]);
        assert_eq!(h.poly.eval(5), big(6));
    }

    #[test]
    fn hilbert_poly_with_nonzero_e1() {
        // R/(x^2, xy) in three variables: K = 1 - 2z^2 + z^3, d = 2,
        // P(t) = t + 2, e = (1, -1)
        let k = ZPoly::from_coeffs(0, vec![big(1), big(0), big(-2), big(1)]);
        let h = HilbertData::from_numerator(k, 3);
        assert_eq!(h.dim, 2);
        assert_eq!(h.e, vec![big(1), big(-1)]);
        assert_eq!(h.poly.eval(2), big(4));
        assert_eq!(h.poly.eval(3), big(5));
    }

    #[test]
    fn finite_length_data() {
        // R/(x^2, y^2) in two variables: K = (1 - z^2)^2, length 4
        let one_minus_z2 = ZPoly::from_coeffs(0, vec![big(1), big(0), big(-1)]);
        let k = one_minus_z2.mul(&one_minus_z2);
        let h = HilbertData::from_numerator(k, 2);
        assert_eq!(h.dim, 0);
        assert_eq!(h.degree, big(4));
        assert!(h.poly.is_zero());
    }

    #[test]
    fn delta_examples() {
        // Δ(t + 1) = 1
        let p = HilbertPoly::new(vec![big(1), big(0)]);
        assert_eq!(p.eval(4), big(5));
        let dp = p.delta(1);
        assert_eq!(dp.eval(17), big(1));
        // Δ^2 of a degree-1 polynomial vanishes
        assert!(p.delta(2).is_zero());
        // Δ C(t+2, 2) = C(t+1, 1)
        let q = HilbertPoly::new(vec![big(1), big(0), big(0)]);
        let dq = q.delta(1);
        for t in -3..6 {
            assert_eq!(dq.eval(t), binom_poly(t + 1, 1));
        }
    }

    #[test]
    fn shift_arg_matches_values() {
        let p = HilbertPoly::new(vec![big(2), big(-3), big(5)]);
        let q = p.shift_arg(4);
        for t in -6..8 {
            assert_eq!(q.eval(t), p.eval(t + 4));
        }
    }

    #[test]
    fn standard_monomial_counts() {
        use crate::monomial::Monomial as M;
        // R over k[x,y] at t = 3
        let free = FreeModule::new(vec![0]);
        assert_eq!(count_standard_monomials(2, &free, &[], 3), 4);
        // R/(x^2, xy) at t = 2: {y^2}
        let leads = vec![(0usize, M::new(vec![2, 0])), (0usize, M::new(vec![1, 1]))];
        assert_eq!(count_standard_monomials(2, &free, &leads, 2), 1);
        // R(-2) at t = 2
        let shifted = FreeModule::new(vec![2]);
        assert_eq!(count_standard_monomials(2, &shifted, &[], 2), 1);
    }

    #[test]
    fn monomial_series_recursion() {
        use crate::monomial::Monomial as M;
        // (x^2, xy) in k[x,y]: numerator 1 - 2z^2 + z^3
        let num = monomial_ideal_numerator(2, vec![M::new(vec![2, 0]), M::new(vec![1, 1])]);
        assert_eq!(num, ZPoly::from_coeffs(0, vec![big(1), big(0), big(-2), big(1)]));
        // whole ring and unit ideal
        assert_eq!(monomial_ideal_numerator(2, vec![]), ZPoly::one());
        assert!(monomial_ideal_numerator(2, vec![M::one(2)]).is_zero());
    }

    #[test]
    fn series_value_matches_counts() {
        use crate::monomial::Monomial as M;
        let free = FreeModule::new(vec![0]);
        let leads = vec![(0usize, M::new(vec![2, 0])), (0usize, M::new(vec![1, 1]))];
        let num = lead_term_series_numerator(2, &free, &leads);
        let h = HilbertData::from_numerator(num, 2);
        for t in 0..8 {
            assert_eq!(
                h.series_value(2, t),
                BigInt::from(count_standard_monomials(2, &free, &leads, t))
            );
        }
    }
}
