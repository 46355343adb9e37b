//! One-stop analysis of a presented module: minimal presentation, relation
//! basis, minimal resolution, Betti table, Hilbert data, invariants, and the
//! saturation `0 -> H^0_m(M) -> M -> Mbar -> 0`.

use crate::freemod::FreeVector;
use crate::gb::{saturate_by_maximal_ideal, ModuleGb};
use crate::hilbert::{count_standard_monomials, HilbertData};
use crate::presentation::Presentation;
use crate::resolution::{minimal_resolution, BettiTable, Invariants, Resolution};
use crate::ring::PolyRing;
use crate::ExtInt;
use num_bigint::BigInt;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct ModuleData {
    /// Minimalized presentation.
    pub pres: Presentation,
    pub rel_gb: ModuleGb,
    pub res: Resolution,
    pub betti: BettiTable,
    pub hilb: HilbertData,
    pub inv: Invariants,
}

impl ModuleData {
    pub fn analyze(pres: &Presentation) -> ModuleData {
        let pres = pres.minimalize();
        let ring = pres.ring.clone();
        let rel_gb = pres.rel_gb();
        let res = minimal_resolution(&ring, &pres);
        let betti = BettiTable::from_resolution(&res);
        let hilb = HilbertData::from_numerator(betti.series_numerator(), ring.n());
        let inv = Invariants::derive(ring.n(), &betti, &hilb);
        ModuleData {
            pres,
            rel_gb,
            res,
            betti,
            hilb,
            inv,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.pres.ring
    }

    pub fn n(&self) -> usize {
        self.pres.ring.n()
    }

    pub fn is_zero(&self) -> bool {
        self.pres.gens.is_zero()
    }

    /// `dim_k M_t` by counting standard monomials.
    pub fn hilbert_fn(&self, t: i64) -> u64 {
        count_standard_monomials(self.n(), &self.pres.gens, &self.rel_gb.leads, t)
    }

    pub fn hilbert_fn_big(&self, t: i64) -> BigInt {
        BigInt::from(self.hilbert_fn(t))
    }

    /// `P_M(t)`.
    pub fn poly_eval(&self, t: i64) -> BigInt {
        self.hilb.poly.eval(t)
    }

    /// Sum of Hilbert function values over a finite degree interval.
    pub fn hilbert_sum(&self, lo: i64, hi: i64) -> BigInt {
        let mut acc = BigInt::from(0);
        for t in lo..=hi {
            acc += self.hilbert_fn_big(t);
        }
        acc
    }

    pub fn shift(&self, s: i64) -> ModuleData {
        ModuleData::analyze(&self.pres.shift(s))
    }
}

/// The saturation data of a module: graded dimensions of `H^0_m(M)` and the
/// quotient `Mbar = M / H^0_m(M)`.
#[derive(Debug, Clone)]
pub struct SaturationData {
    pub h0_dims: BTreeMap<i64, u64>,
    pub h0_length: u64,
    pub h0_indeg: ExtInt,
    pub h0_end: ExtInt,
    pub mbar: ModuleData,
    /// `reg(Mbar)`.
    pub rbar: ExtInt,
}

pub fn saturate(md: &ModuleData) -> SaturationData {
    let ring = &md.pres.ring;
    let sat = saturate_by_maximal_ideal(ring, &md.pres.gens, &md.pres.rels);
    let mbar_pres = Presentation::new(ring.clone(), md.pres.gens.clone(), sat.clone())
        .expect("saturation generators are homogeneous");
    let mbar = ModuleData::analyze(&mbar_pres);
    let mut h0_dims = BTreeMap::new();
    if !md.is_zero() {
        let sat_gb = crate::gb::groebner_basis(ring, &md.pres.gens, &sat, crate::gb::ModOrder::Top)
            .expect("homogeneous");
        let lo = md.inv.indeg.expect_fin("indeg of a nonzero module");
        let hi = md.inv.reg.expect_fin("reg of a nonzero module");
        for t in lo..=hi {
            let m_t = md.hilbert_fn(t);
            let q_t = count_standard_monomials(md.n(), &md.pres.gens, &sat_gb.leads, t);
            debug_assert!(m_t >= q_t);
            if m_t > q_t {
                h0_dims.insert(t, m_t - q_t);
            }
        }
    }
    let h0_length = h0_dims.values().sum();
    let h0_indeg = h0_dims
        .keys()
        .next()
        .copied()
        .map(ExtInt::Fin)
        .unwrap_or(ExtInt::PosInf);
    let h0_end = h0_dims
        .keys()
        .next_back()
        .copied()
        .map(ExtInt::Fin)
        .unwrap_or(ExtInt::NegInf);
    let rbar = mbar.inv.reg;
    SaturationData {
        h0_dims,
        h0_length,
        h0_indeg,
        h0_end,
        mbar,
        rbar,
    }
}

/// Carrier for a saturation-related fact: `Mbar` satisfies `(0 : m) = 0` and
/// dimensions add up degreewise. Used by tests and the verifier.
pub fn saturation_consistent(md: &ModuleData, sat: &SaturationData) -> bool {
    if md.is_zero() {
        return sat.mbar.is_zero() && sat.h0_length == 0;
    }
    let lo = md.inv.indeg.expect_fin("indeg");
    let hi = md.inv.reg.expect_fin("reg") + 3;
    for t in lo..=hi {
        let h0 = sat.h0_dims.get(&t).copied().unwrap_or(0);
        if md.hilbert_fn(t) != h0 + sat.mbar.hilbert_fn(t) {
            return false;
        }
    }
    true
}

/// Quick truth for one vector being a free-module element of a presentation
/// ambient — convenience for tests.
pub fn in_relations(md: &ModuleData, v: &FreeVector) -> bool {
    self::ModuleGb::contains(&md.rel_gb, md.ring(), v)
}
