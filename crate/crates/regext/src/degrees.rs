//! Filter-regular sequences of random linear forms and the homological
//! degree.
//!
//! Genericity is realized by drawing coefficients uniformly from `F_p` and
//! verifying the defining property exactly, redrawing on failure; every draw
//! flows from one seed, so identical seeds give identical data.

use crate::analysis::{saturate, ModuleData, SaturationData};
use crate::cohomology::ext_into_ring;
use crate::freemod::FreeVector;
use crate::gb::{colon_by_poly, groebner_basis, ModOrder};
use crate::hilbert::{binom_big, lead_term_series_numerator};
use crate::poly::Poly;
use crate::presentation::Presentation;
use crate::{Error, ExtInt};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::HashMap;

const RETRY_LIMIT: usize = 32;

/// The data of a verified filter-regular sequence `l_1..l_d` on `M`:
/// quotients `M_j = M/(l_1..l_j)M`, the regularities `rbar_j` of their
/// saturations, and `B = dim_k M_d`.
#[derive(Debug, Clone)]
pub struct FilterRegularData {
    pub seed: u64,
    pub forms: Vec<Poly>,
    /// `M_0 = M, M_1, ..., M_d`, each analyzed.
    pub quotients: Vec<ModuleData>,
    /// Saturation data of each quotient.
    pub sats: Vec<SaturationData>,
    /// `rbar_j = reg(M_j / H^0(M_j))` for `j = 0..=d` (`-inf` once the
    /// saturated quotient vanishes).
    pub rbar: Vec<ExtInt>,
    /// `H_{Mbar_j}(rbar_j)` (zero when `Mbar_j = 0`).
    pub h_mbar_at_rbar: Vec<BigInt>,
    /// `B = dim_k(M/(l_1..l_d)M)`.
    pub b_value: BigInt,
}

impl FilterRegularData {
    /// The same data for the shifted module `M(s)`: forms are unchanged,
    /// regularities drop by `s`, lengths and Hilbert values are invariant.
    pub fn shifted(&self, s: i64) -> FilterRegularData {
        FilterRegularData {
            seed: self.seed,
            forms: self.forms.clone(),
            quotients: self.quotients.clone(),
            sats: self.sats.clone(),
            rbar: self
                .rbar
                .iter()
                .map(|r| match r {
                    ExtInt::Fin(v) => ExtInt::Fin(v - s),
                    other => *other,
                })
                .collect(),
            h_mbar_at_rbar: self.h_mbar_at_rbar.clone(),
            b_value: self.b_value.clone(),
        }
    }
}

/// Whether `(0 :_{F/rels} l)` has finite length: the series of the
/// subquotient `(rels : l)/rels` must be a polynomial, i.e. the difference
/// of numerators divisible by `(1-z)^n`.
fn colon_has_finite_length(md: &ModuleData, l: &Poly) -> bool {
    let ring = md.ring();
    let n = md.n();
    let colon = colon_by_poly(ring, &md.pres.gens, &md.pres.rels, l);
    let colon_gb = groebner_basis(ring, &md.pres.gens, &colon, ModOrder::Top).expect("homogeneous");
    let num_rels = lead_term_series_numerator(n, &md.pres.gens, &md.rel_gb.leads);
    let num_colon = lead_term_series_numerator(n, &md.pres.gens, &colon_gb.leads);
    let diff = num_rels.sub(&num_colon);
    if diff.is_zero() {
        return true;
    }
    let mut cur = diff;
    for _ in 0..n {
        match cur.div_one_minus_z() {
            Some(next) => cur = next,
            None => return false,
        }
    }
    true
}

fn random_linear_form(ring: &crate::ring::PolyRing, rng: &mut ChaCha20Rng) -> Poly {
    let n = ring.n();
    loop {
        let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..ring.p())).collect();
        if coeffs.iter().any(|c| *c != 0) {
            return Poly::from_terms(
                ring,
                coeffs
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (crate::monomial::Monomial::var(n, i), c)),
            );
        }
    }
}

/// Draws and verifies a filter-regular sequence on `M`, deterministic in the
/// seed. Fails with [`Error::RetryLimit`] when some step cannot be realized.
pub fn filter_regular_sequence(md: &ModuleData, seed: u64) -> Result<FilterRegularData, Error> {
    let ring = md.pres.ring.clone();
    let d = md.inv.dim;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut forms = Vec::with_capacity(d);
    let mut quotients = vec![md.clone()];
    for j in 0..d {
        let current = quotients[j].clone();
        let mut accepted = None;
        for _ in 0..RETRY_LIMIT {
            let l = random_linear_form(&ring, &mut rng);
            if colon_has_finite_length(&current, &l) {
                accepted = Some(l);
                break;
            }
        }
        let Some(l) = accepted else {
            return Err(Error::RetryLimit(format!(
                "no filter-regular form found at step {} of {} (seed {seed})",
                j + 1,
                d
            )));
        };
        let rank = current.pres.gens.rank();
        let mut rels = current.pres.rels.clone();
        for r in 0..rank {
            let mut v = FreeVector::zero(rank);
            v.comps[r] = l.clone();
            rels.push(v);
        }
        let next = Presentation::new(ring.clone(), current.pres.gens.clone(), rels)
            .expect("linear multiples are homogeneous");
        quotients.push(ModuleData::analyze(&next));
        forms.push(l);
    }
    let last = quotients.last().unwrap();
    assert_eq!(
        last.inv.dim, 0,
        "filter-regular quotient chain must end in finite length"
    );
    let b_value = last.hilb.degree.clone();
    let sats: Vec<SaturationData> = quotients.iter().map(saturate).collect();
    let rbar: Vec<ExtInt> = sats.iter().map(|s| s.rbar).collect();
    for w in rbar.windows(2) {
        assert!(w[1] <= w[0], "rbar must be non-increasing along the chain");
    }
    let h_mbar_at_rbar = sats
        .iter()
        .map(|s| match s.rbar {
            ExtInt::Fin(r) => s.mbar.hilbert_fn_big(r),
            _ => BigInt::zero(),
        })
        .collect();
    Ok(FilterRegularData {
        seed,
        forms,
        quotients,
        sats,
        rbar,
        h_mbar_at_rbar,
        b_value,
    })
}

/// Memo table for the homological degree recursion, keyed by canonicalized
/// presentations.
#[derive(Default)]
pub struct HdegContext {
    memo: HashMap<String, BigInt>,
}

/// The homological degree with its per-term breakdown.
#[derive(Debug, Clone)]
pub struct HdegResult {
    pub value: BigInt,
    /// `("deg", deg M)` followed by one entry per deficiency module.
    pub breakdown: Vec<(String, BigInt)>,
}

/// `hdeg(M) = deg M + sum_{i<d} C(d-1, i) hdeg(Ext^{n+i+1-d}(M, R))`,
/// with `hdeg = length` in dimension zero. The recursion terminates because
/// each deficiency module has strictly smaller dimension.
pub fn hdeg(md: &ModuleData, ctx: &mut HdegContext) -> HdegResult {
    if md.is_zero() {
        return HdegResult {
            value: BigInt::zero(),
            breakdown: Vec::new(),
        };
    }
    let d = md.inv.dim;
    if d == 0 {
        return HdegResult {
            value: md.hilb.degree.clone(),
            breakdown: vec![("length".to_string(), md.hilb.degree.clone())],
        };
    }
    let n = md.n();
    let mut breakdown = vec![("deg".to_string(), md.hilb.degree.clone())];
    let mut value = md.hilb.degree.clone();
    for i in 0..d {
        let idx = (n + i + 1 - d) as i64;
        let e = ModuleData::analyze(&ext_into_ring(md, idx));
        if !e.is_zero() {
            assert!(
                e.inv.dim < d,
                "deficiency module must drop dimension (got {} >= {})",
                e.inv.dim,
                d
            );
        }
        let sub = hdeg_value(&e, ctx);
        let term = binom_big(d as i64 - 1, i as i64) * &sub;
        breakdown.push((format!("C({},{})*hdeg(Ext^{})", d - 1, i, idx), term.clone()));
        value += term;
    }
    HdegResult { value, breakdown }
}

pub fn hdeg_value(md: &ModuleData, ctx: &mut HdegContext) -> BigInt {
    if md.is_zero() {
        return BigInt::zero();
    }
    let key = md.pres.canonical_key();
    if let Some(v) = ctx.memo.get(&key) {
        return v.clone();
    }
    let v = hdeg(md, ctx).value;
    ctx.memo.insert(key, v.clone());
    v
}

/// `hdeg(M) = hdeg(M/H^0_m(M)) + dim_k H^0_m(M)`.
pub fn hdeg_note_b_check(md: &ModuleData, sat: &SaturationData, ctx: &mut HdegContext) -> bool {
    let lhs = hdeg_value(md, ctx);
    let rhs = hdeg_value(&sat.mbar, ctx) + BigInt::from(sat.h0_length);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use std::sync::Arc;

    fn ring2() -> Arc<PolyRing> {
        Arc::new(PolyRing::standard(2))
    }

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn filter_regular_on_free_module() {
        let ring = ring2();
        let md = ModuleData::analyze(&Presentation::free(ring.clone(), vec![0]));
        let frd = filter_regular_sequence(&md, 5).unwrap();
        assert_eq!(frd.forms.len(), 2);
        assert_eq!(frd.b_value, BigInt::from(1));
        assert_eq!(frd.rbar[0], ExtInt::Fin(0));
    }

    #[test]
    fn filter_regular_on_x2_xy() {
        let ring = ring2();
        let md = ModuleData::analyze(
            &Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        let frd = filter_regular_sequence(&md, 5).unwrap();
        assert_eq!(frd.forms.len(), 1);
        // M/(l) = k[x]/(x^2) up to the coordinate change: B = 2
        assert_eq!(frd.b_value, BigInt::from(2));
        for w in frd.rbar.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn finite_length_has_empty_sequence() {
        let ring = ring2();
        let md = ModuleData::analyze(
            &Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), y().mul(&ring, &y())])
                .unwrap(),
        );
        let frd = filter_regular_sequence(&md, 9).unwrap();
        assert!(frd.forms.is_empty());
        assert_eq!(frd.b_value, BigInt::from(4));
    }

    #[test]
    fn determinism_in_the_seed() {
        let ring = ring2();
        let md = ModuleData::analyze(
            &Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        let a = filter_regular_sequence(&md, 42).unwrap();
        let b = filter_regular_sequence(&md, 42).unwrap();
        assert_eq!(a.forms, b.forms);
        assert_eq!(a.rbar, b.rbar);
        assert_eq!(a.b_value, b.b_value);
    }

    #[test]
    fn hdeg_named_values() {
        let ring = ring2();
        let mut ctx = HdegContext::default();
        let r_mod = ModuleData::analyze(&Presentation::free(ring.clone(), vec![0]));
        assert_eq!(hdeg(&r_mod, &mut ctx).value, BigInt::from(1));

        let m1 = ModuleData::analyze(
            &Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        assert_eq!(hdeg(&m1, &mut ctx).value, BigInt::from(2));

        let m2 = ModuleData::analyze(
            &Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), y().mul(&ring, &y())])
                .unwrap(),
        );
        assert_eq!(hdeg(&m2, &mut ctx).value, BigInt::from(4));
    }

    #[test]
    fn hdeg_note_b_examples() {
        let ring = ring2();
        let mut ctx = HdegContext::default();
        for gens in [
            vec![x()],
            vec![x().mul(&ring, &x()), x().mul(&ring, &y())],
            vec![x().mul(&ring, &x()), y().mul(&ring, &y())],
        ] {
            let md = ModuleData::analyze(&Presentation::cyclic(ring.clone(), gens).unwrap());
            let sat = saturate(&md);
            assert!(hdeg_note_b_check(&md, &sat, &mut ctx));
        }
    }
}
