//! Minimal graded free resolutions by iterated syzygy computation, Betti
//! tables, and the numerical invariants read from them.
//!
//! Each differential's columns are a minimal generating set of the kernel of
//! the previous one, so no matrix ever acquires a unit entry and the
//! resolution is minimal by construction; length is capped by the variable
//! count (Hilbert's syzygy theorem), violation of which is an engine bug.

use crate::freemod::{FreeModule, GradedMap};
use crate::gb::{kernel_gens, GradedMapLike};
use crate::hilbert::{HilbertData, ZPoly};
use crate::presentation::{minimal_generators, Presentation};
use crate::ring::PolyRing;
use crate::ExtInt;
use num_bigint::BigInt;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Resolution {
    /// `F_0..F_pd`.
    pub modules: Vec<FreeModule>,
    /// `maps[i]: F_{i+1} -> F_i`.
    pub maps: Vec<GradedMap>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }
}

/// Minimal free resolution of `coker(rels)`. Expects a minimalized
/// presentation (no unit entries, relations minimally generating).
pub fn minimal_resolution(ring: &PolyRing, pres: &Presentation) -> Resolution {
    let mut modules = vec![pres.gens.clone()];
    let mut maps: Vec<GradedMap> = Vec::new();
    if pres.gens.is_zero() || pres.rels.is_empty() {
        return Resolution { modules, maps };
    }
    maps.push(pres.rel_map());
    modules.push(maps[0].source.clone());
    loop {
        let last = maps.last().unwrap();
        let ker = kernel_gens(ring, &GradedMapLike::from(last));
        let ker = minimal_generators(ring, &last.source, &ker);
        if ker.is_empty() {
            break;
        }
        let twists: Vec<i64> = ker
            .iter()
            .map(|v| v.homogeneous_degree(&last.source).unwrap().unwrap())
            .collect();
        let next = GradedMap::new(FreeModule::new(twists), last.source.clone(), ker);
        modules.push(next.source.clone());
        maps.push(next);
        assert!(
            maps.len() <= ring.n(),
            "resolution exceeded the ambient variable count"
        );
    }
    Resolution { modules, maps }
}

/// Graded Betti numbers `beta_{i,j} = dim Tor_i(M, k)_j`, read off a minimal
/// resolution.
#[derive(Debug, Clone, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), u64>,
}

impl BettiTable {
    pub fn from_resolution(res: &Resolution) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, f) in res.modules.iter().enumerate() {
            for &j in f.twists() {
                *entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `T_i = sum_j beta_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((ii, _), _)| *ii == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// `f_i = min { j : beta_{i,j} != 0 }` (`+inf` for an empty row).
    pub fn f(&self, i: usize) -> ExtInt {
        self.entries
            .iter()
            .filter(|((ii, _), v)| *ii == i && **v > 0)
            .map(|((_, j), _)| *j)
            .min()
            .map(ExtInt::Fin)
            .unwrap_or(ExtInt::PosInf)
    }

    /// `b_i = max { j : beta_{i,j} != 0 }` (`-inf` for an empty row).
    pub fn b(&self, i: usize) -> ExtInt {
        self.entries
            .iter()
            .filter(|((ii, _), v)| *ii == i && **v > 0)
            .map(|((_, j), _)| *j)
            .max()
            .map(ExtInt::Fin)
            .unwrap_or(ExtInt::NegInf)
    }

    pub fn pd(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, v)| **v > 0)
            .map(|((i, _), _)| *i)
            .max()
            .unwrap_or(0)
    }

    /// `reg = max (j - i)` over nonzero entries; `-inf` for the zero module.
    pub fn reg(&self) -> ExtInt {
        self.entries
            .iter()
            .filter(|(_, v)| **v > 0)
            .map(|((i, j), _)| j - *i as i64)
            .max()
            .map(ExtInt::Fin)
            .unwrap_or(ExtInt::NegInf)
    }

    /// Alternating series numerator `sum_{i,j} (-1)^i beta_{i,j} z^j`.
    pub fn series_numerator(&self) -> ZPoly {
        let mut acc = ZPoly::zero();
        for ((i, j), v) in &self.entries {
            let c = if i % 2 == 0 {
                BigInt::from(*v)
            } else {
                -BigInt::from(*v)
            };
            acc = acc.add(&ZPoly::monomial(*j, c));
        }
        acc
    }
}

/// The numerical invariants of a module derived from its Betti table and
/// Hilbert data. Sentinels: `reg(0) = -inf`, `indeg(0) = +inf`.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub reg: ExtInt,
    pub indeg: ExtInt,
    /// End of the module when it has finite length, `+inf` otherwise.
    pub end_finite_part: ExtInt,
    pub pd: usize,
    pub depth: ExtInt,
    pub dim: usize,
    pub mu: u64,
    /// Largest degree of a minimal generator (`-inf` for the zero module).
    pub gen: ExtInt,
    /// `e_0` when `dim >= 1`, the length when `dim = 0`.
    pub degree: BigInt,
}

impl Invariants {
    pub fn derive(n: usize, betti: &BettiTable, hilb: &HilbertData) -> Invariants {
        let mu = betti.total(0);
        let zero = mu == 0;
        let reg = betti.reg();
        let pd = betti.pd();
        let depth = if zero {
            ExtInt::PosInf
        } else {
            ExtInt::Fin(n as i64 - pd as i64)
        };
        Invariants {
            reg,
            indeg: betti.f(0),
            end_finite_part: if hilb.dim == 0 { reg } else { ExtInt::PosInf },
            pd,
            depth,
            dim: hilb.dim,
            mu,
            gen: betti.b(0),
            degree: hilb.degree.clone(),
        }
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == ExtInt::Fin(self.dim as i64) || self.depth == ExtInt::PosInf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use std::sync::Arc;

    fn setup(n: usize) -> Arc<PolyRing> {
        Arc::new(PolyRing::standard(n))
    }

    fn analyze(pres: &Presentation) -> (Resolution, BettiTable, HilbertData, Invariants) {
        let ring = &pres.ring;
        let m = pres.minimalize();
        let res = minimal_resolution(ring, &m);
        let betti = BettiTable::from_resolution(&res);
        let hilb = HilbertData::from_numerator(betti.series_numerator(), ring.n());
        let inv = Invariants::derive(ring.n(), &betti, &hilb);
        (res, betti, hilb, inv)
    }

    #[test]
    fn free_module_resolution_is_trivial() {
        let ring = setup(2);
        let pres = Presentation::free(ring.clone(), vec![0]);
        let (res, betti, _, inv) = analyze(&pres);
        assert_eq!(res.length(), 0);
        assert_eq!(betti.get(0, 0), 1);
        assert_eq!(inv.reg, ExtInt::Fin(0));
        assert_eq!(inv.pd, 0);
        assert_eq!(inv.depth, ExtInt::Fin(2));
        assert_eq!(inv.dim, 2);
        assert_eq!(inv.mu, 1);
    }

    #[test]
    fn resolution_of_x2_xy() {
        // 0 -> R(-3) -> R(-2)^2 -> R
        let ring = setup(2);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let pres = Presentation::cyclic(ring.clone(), vec![x.mul(&ring, &x), x.mul(&ring, &y)])
            .unwrap();
        let (res, betti, _, inv) = analyze(&pres);
        assert_eq!(res.length(), 2);
        assert_eq!(betti.get(0, 0), 1);
        assert_eq!(betti.get(1, 2), 2);
        assert_eq!(betti.get(2, 3), 1);
        assert_eq!(betti.entries.values().sum::<u64>(), 4);
        assert_eq!(inv.reg, ExtInt::Fin(1));
        assert_eq!(inv.pd, 2);
        assert_eq!(inv.depth, ExtInt::Fin(0));
        assert_eq!(inv.dim, 1);
        // composite of consecutive maps vanishes
        let c = res.maps[0].compose(&ring, &res.maps[1]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn koszul_resolution_of_the_point() {
        let ring = setup(2);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let pres = Presentation::cyclic(ring.clone(), vec![x, y]).unwrap();
        let (res, betti, _, inv) = analyze(&pres);
        assert_eq!(res.length(), 2);
        assert_eq!(betti.get(0, 0), 1);
        assert_eq!(betti.get(1, 1), 2);
        assert_eq!(betti.get(2, 2), 1);
        assert_eq!(inv.reg, ExtInt::Fin(0));
        assert_eq!(inv.dim, 0);
        assert_eq!(inv.degree, BigInt::from(1));
    }

    #[test]
    fn maximal_ideal_as_module() {
        // m = (x, y) with generators in degree 1: Betti {(0,1):2, (1,2):1}
        let ring = setup(2);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let pres = Presentation::new(
            ring.clone(),
            FreeModule::new(vec![1, 1]),
            vec![crate::freemod::FreeVector {
                comps: vec![y, x.neg(&ring)],
            }],
        )
        .unwrap();
        let (_, betti, _, inv) = analyze(&pres);
        assert_eq!(betti.get(0, 1), 2);
        assert_eq!(betti.get(1, 2), 1);
        assert_eq!(inv.reg, ExtInt::Fin(1));
        assert_eq!(inv.indeg, ExtInt::Fin(1));
        assert_eq!(inv.mu, 2);
    }

    #[test]
    fn complete_intersection_invariants() {
        // R/(x^2, y^2): reg 2, pd 2, depth 0, dim 0, length 4
        let ring = setup(2);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let pres = Presentation::cyclic(ring.clone(), vec![x.mul(&ring, &x), y.mul(&ring, &y)])
            .unwrap();
        let (_, _, hilb, inv) = analyze(&pres);
        assert_eq!(inv.reg, ExtInt::Fin(2));
        assert_eq!(inv.pd, 2);
        assert_eq!(inv.depth, ExtInt::Fin(0));
        assert_eq!(inv.dim, 0);
        assert_eq!(hilb.degree, BigInt::from(4));
        assert_eq!(inv.end_finite_part, ExtInt::Fin(2));
    }

    #[test]
    fn zero_module_sentinels() {
        let ring = setup(2);
        let pres = Presentation::zero(ring.clone());
        let (_, _, _, inv) = analyze(&pres);
        assert_eq!(inv.reg, ExtInt::NegInf);
        assert_eq!(inv.indeg, ExtInt::PosInf);
        assert_eq!(inv.mu, 0);
    }

    #[test]
    fn no_unit_entries_anywhere() {
        let ring = setup(3);
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let gens = vec![
            x.mul(&ring, &y).sub(&ring, &z.mul(&ring, &z)),
            y.mul(&ring, &y),
            x.mul(&ring, &z),
        ];
        let pres = Presentation::cyclic(ring.clone(), gens).unwrap().minimalize();
        let res = minimal_resolution(&ring, &pres);
        for map in &res.maps {
            for col in &map.cols {
                for p in &col.comps {
                    assert!(!p.is_unit_constant());
                }
            }
        }
        for w in res.maps.windows(2) {
            assert!(w[0].compose(&ring, &w[1]).unwrap().is_zero());
        }
    }
}
