//! Ext modules, graded local cohomology dimensions, and truncation.
//!
//! `Ext^i(M, N)` is the `i`-th cohomology of the total Hom complex of two
//! minimal resolutions; `Ext^i(M, R)` specializes to the dual of the
//! resolution of `M`. A cohomology module is presented as a subquotient:
//! kernel generators become the generators, and relations are pulled back
//! through the block matrix `[kernel | image]` — two syzygy computations and
//! a minimalization.

use crate::analysis::ModuleData;
use crate::freemod::{FreeModule, FreeVector, GradedMap};
use crate::gb::{kernel_gens, GradedMapLike};
use crate::monomial::monomials_of_degree;
use crate::poly::Poly;
use crate::presentation::Presentation;
use crate::resolution::Resolution;
use crate::ring::PolyRing;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A bounded cochain complex of free modules; `modules[k]` sits in
/// cohomological degree `lo + k` and `maps[k]` is `C^{lo+k} -> C^{lo+k+1}`.
#[derive(Debug, Clone)]
pub struct Complex {
    pub lo: i64,
    pub modules: Vec<FreeModule>,
    pub maps: Vec<GradedMap>,
}

impl Complex {
    pub fn module_at(&self, i: i64) -> Option<&FreeModule> {
        let k = i - self.lo;
        (0..self.modules.len() as i64)
            .contains(&k)
            .then(|| &self.modules[k as usize])
    }

    pub fn map_at(&self, i: i64) -> Option<&GradedMap> {
        let k = i - self.lo;
        (0..self.maps.len() as i64)
            .contains(&k)
            .then(|| &self.maps[k as usize])
    }
}

/// `Hom(F_•, R)`: transpose every differential, negate every twist.
pub fn dual_complex(res: &Resolution) -> Complex {
    Complex {
        lo: 0,
        modules: res.modules.iter().map(|f| f.dual()).collect(),
        maps: res.maps.iter().map(|d| d.dual()).collect(),
    }
}

/// Total Hom complex `Hom(F^M_•, F^N_•)` with `C^i = ⊕_{s-t=i} Hom(F_s, G_t)`.
pub fn hom_complex(ring: &PolyRing, fm: &Resolution, fnn: &Resolution) -> Complex {
    let pf = fm.modules.len() as i64 - 1;
    let pg = fnn.modules.len() as i64 - 1;
    let lo = -pg;
    let hi = pf;

    // flat basis of C^i: blocks (s, t = s - i), entries (j over F_s, l over G_t)
    let block_starts = |i: i64| -> (Vec<(usize, usize, usize)>, FreeModule) {
        let mut starts = Vec::new();
        let mut twists = Vec::new();
        for s in 0..=pf {
            let t = s - i;
            if !(0..=pg).contains(&t) {
                continue;
            }
            let fs = &fm.modules[s as usize];
            let gt = &fnn.modules[t as usize];
            starts.push((s as usize, t as usize, twists.len()));
            for &aj in fs.twists() {
                for &bl in gt.twists() {
                    twists.push(bl - aj);
                }
            }
        }
        (starts, FreeModule::new(twists))
    };

    let mut modules = Vec::new();
    let mut layouts = Vec::new();
    for i in lo..=hi {
        let (starts, module) = block_starts(i);
        layouts.push(starts);
        modules.push(module);
    }

    fn flat_index(
        layout: &[(usize, usize, usize)],
        s: usize,
        j: usize,
        l: usize,
        g_ranks: &[usize],
    ) -> Option<usize> {
        layout
            .iter()
            .find(|(bs, _, _)| *bs == s)
            .map(|(_, bt, off)| off + j * g_ranks[*bt] + l)
    }
    let g_ranks: Vec<usize> = fnn.modules.iter().map(|g| g.rank()).collect();

    let mut maps = Vec::new();
    for i in lo..hi {
        let src_layout = &layouts[(i - lo) as usize];
        let tgt_layout = &layouts[(i + 1 - lo) as usize];
        let source = modules[(i - lo) as usize].clone();
        let target = modules[(i + 1 - lo) as usize].clone();

        let sign = if (i + 1).rem_euclid(2) == 0 { 1 } else { -1 };
        let mut cols = vec![FreeVector::zero(target.rank()); source.rank()];
        for &(s, t, off) in src_layout {
            let fs_rank = fm.modules[s].rank();
            let gt_rank = fnn.modules[t].rank();
            for j in 0..fs_rank {
                for l in 0..gt_rank {
                    let col = &mut cols[off + j * gt_rank + l];
                    // post-compose with d^G_t : G_t -> G_{t-1}
                    if t >= 1 {
                        let dg = &fnn.maps[t - 1];
                        for lp in 0..fnn.modules[t - 1].rank() {
                            let entry = dg.entry(lp, l);
                            if entry.is_zero() {
                                continue;
                            }
                            if let Some(row) = flat_index(tgt_layout, s, j, lp, &g_ranks) {
                                col.comps[row] = col.comps[row].add(ring, entry);
                            }
                        }
                    }
                    // pre-compose with d^F_{s+1} : F_{s+1} -> F_s, with sign
                    if (s as i64) < pf {
                        let df = &fm.maps[s];
                        for jp in 0..fm.modules[s + 1].rank() {
                            let entry = df.entry(j, jp);
                            if entry.is_zero() {
                                continue;
                            }
                            if let Some(row) = flat_index(tgt_layout, s + 1, jp, l, &g_ranks) {
                                let signed = if sign == 1 { entry.clone() } else { entry.neg(ring) };
                                col.comps[row] = col.comps[row].add(ring, &signed);
                            }
                        }
                    }
                }
            }
        }
        maps.push(GradedMap::new(source, target, cols));
    }

    Complex { lo, modules, maps }
}

/// Presentation of `H^i` of a complex of free modules, minimalized.
pub fn homology_presentation(ring: &Arc<PolyRing>, cx: &Complex, i: i64) -> Presentation {
    let Some(c_i) = cx.module_at(i) else {
        return Presentation::zero(ring.clone());
    };
    // kernel generators
    let kernel: Vec<FreeVector> = match cx.map_at(i) {
        Some(d) => kernel_gens(ring, &GradedMapLike::from(d)),
        None => (0..c_i.rank())
            .map(|j| FreeVector::unit(c_i.rank(), j, ring.n()))
            .collect(),
    };
    if kernel.is_empty() {
        return Presentation::zero(ring.clone());
    }
    let gen_twists: Vec<i64> = kernel
        .iter()
        .map(|v| v.homogeneous_degree(c_i).unwrap().unwrap())
        .collect();
    // relations: preimages of <kernel> ∩ (im + 0) under [kernel | image]
    let mut block_twists = gen_twists.clone();
    let mut block_cols = kernel.clone();
    if let Some(prev) = cx.map_at(i - 1) {
        for (j, col) in prev.cols.iter().enumerate() {
            block_twists.push(prev.source.twist(j));
            block_cols.push(col.clone());
        }
    }
    let block_source = FreeModule::new(block_twists);
    let syz = kernel_gens(
        ring,
        &GradedMapLike {
            source: &block_source,
            target: c_i,
            cols: &block_cols,
        },
    );
    let k = kernel.len();
    let rels: Vec<FreeVector> = syz
        .into_iter()
        .map(|v| v.project(0..k))
        .filter(|v| !v.is_zero())
        .collect();
    Presentation::new(ring.clone(), FreeModule::new(gen_twists), rels)
        .expect("homogeneous subquotient")
        .minimalize()
}

/// `Ext^i(M, R)` from the dual of the minimal resolution of `M`.
pub fn ext_into_ring(md: &ModuleData, i: i64) -> Presentation {
    homology_presentation(&md.pres.ring, &dual_complex(&md.res), i)
}

/// `Ext^i(M, N)` from the total Hom complex of the two minimal resolutions.
pub fn ext_module(m: &ModuleData, n_mod: &ModuleData, i: i64) -> Presentation {
    let ring = &m.pres.ring;
    homology_presentation(ring, &hom_complex(ring, &m.res, &n_mod.res), i)
}

/// All of `Ext^0(M,R) .. Ext^n(M,R)`, analyzed.
pub fn ext_ring_family(md: &ModuleData) -> Vec<ModuleData> {
    let cx = dual_complex(&md.res);
    (0..=md.n() as i64)
        .map(|i| ModuleData::analyze(&homology_presentation(&md.pres.ring, &cx, i)))
        .collect()
}

/// Graded local cohomology dimensions over a degree window, through duality:
/// `dim H^i_m(M)_mu = dim Ext^{n-i}(M, R)_{-mu-n}`.
#[derive(Debug, Clone)]
pub struct LocalCohomologyTable {
    pub dims: BTreeMap<(usize, i64), u64>,
    pub window: (i64, i64),
}

pub fn local_cohomology_dims(
    md: &ModuleData,
    ext_family: &[ModuleData],
    window: (i64, i64),
) -> LocalCohomologyTable {
    let n = md.n();
    let mut dims = BTreeMap::new();
    for i in 0..=n {
        let e = &ext_family[n - i];
        if e.is_zero() {
            continue;
        }
        for mu in window.0..=window.1 {
            let d = e.hilbert_fn(-mu - n as i64);
            if d > 0 {
                dims.insert((i, mu), d);
            }
        }
    }
    LocalCohomologyTable { dims, window }
}

impl LocalCohomologyTable {
    pub fn dim(&self, i: usize, mu: i64) -> u64 {
        self.dims.get(&(i, mu)).copied().unwrap_or(0)
    }

    /// `(i, dim H^i_mu)` pairs at a fixed degree.
    pub fn column(&self, n: usize, mu: i64) -> Vec<(usize, u64)> {
        (0..=n).map(|i| (i, self.dim(i, mu))).collect()
    }
}

/// The truncation `M_{>= t}`: generated by a basis of `M_t` together with
/// the minimal generators of `M` in degrees above `t`; relations by syzygy.
pub fn truncate(md: &ModuleData, t: i64) -> Presentation {
    let ring = &md.pres.ring;
    if md.is_zero() {
        return Presentation::zero(ring.clone());
    }
    let indeg = md.inv.indeg.expect_fin("indeg of nonzero module");
    if t <= indeg {
        return md.pres.clone();
    }
    let n = md.n();
    let rank = md.pres.gens.rank();
    let mut cand: Vec<FreeVector> = Vec::new();
    // standard monomial basis of M_t
    for (r, a) in md.pres.gens.twists().iter().enumerate() {
        let d = t - a;
        if d < 0 {
            continue;
        }
        let blockers: Vec<_> = md
            .rel_gb
            .leads
            .iter()
            .filter(|(p, _)| *p == r)
            .map(|(_, m)| m.clone())
            .collect();
        for m in monomials_of_degree(n, d as u32) {
            if !blockers.iter().any(|b| b.divides(&m)) {
                let mut v = FreeVector::zero(rank);
                v.comps[r] = Poly::monomial(m, 1);
                cand.push(v);
            }
        }
    }
    // minimal generators of M above degree t
    for (r, a) in md.pres.gens.twists().iter().enumerate() {
        if *a > t {
            cand.push(FreeVector::unit(rank, r, n));
        }
    }
    if cand.is_empty() {
        return Presentation::zero(ring.clone());
    }
    let mut block_twists: Vec<i64> = cand
        .iter()
        .map(|v| v.homogeneous_degree(&md.pres.gens).unwrap().unwrap())
        .collect();
    let gen_twists = block_twists.clone();
    let mut block_cols = cand.clone();
    for r in &md.pres.rels {
        block_twists.push(r.homogeneous_degree(&md.pres.gens).unwrap().unwrap());
        block_cols.push(r.clone());
    }
    let block_source = FreeModule::new(block_twists);
    let syz = kernel_gens(
        ring,
        &GradedMapLike {
            source: &block_source,
            target: &md.pres.gens,
            cols: &block_cols,
        },
    );
    let k = cand.len();
    let rels: Vec<FreeVector> = syz
        .into_iter()
        .map(|v| v.project(0..k))
        .filter(|v| !v.is_zero())
        .collect();
    Presentation::new(ring.clone(), FreeModule::new(gen_twists), rels)
        .expect("homogeneous truncation")
        .minimalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExtInt;
    use num_bigint::BigInt;

    fn ring2() -> Arc<PolyRing> {
        Arc::new(PolyRing::standard(2))
    }

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    fn md(pres: Presentation) -> ModuleData {
        ModuleData::analyze(&pres)
    }

    #[test]
    fn ext_of_free_module() {
        let ring = ring2();
        let r_mod = md(Presentation::free(ring.clone(), vec![0]));
        let e0 = ModuleData::analyze(&ext_into_ring(&r_mod, 0));
        assert!(!e0.is_zero());
        for t in 0..4 {
            assert_eq!(e0.hilbert_fn(t), r_mod.hilbert_fn(t));
        }
        for i in 1..=2 {
            assert!(ext_into_ring(&r_mod, i).is_zero_module());
        }
    }

    #[test]
    fn ext0_into_module_matches_hom() {
        // Ext^0(R, N) = N for N = R/(x^2, xy)
        let ring = ring2();
        let r_mod = md(Presentation::free(ring.clone(), vec![0]));
        let n_mod = md(
            Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        let e0 = ModuleData::analyze(&ext_module(&r_mod, &n_mod, 0));
        for t in 0..5 {
            assert_eq!(e0.hilbert_fn(t), n_mod.hilbert_fn(t));
        }
        assert!(ext_module(&r_mod, &n_mod, 1).is_zero_module());
    }

    #[test]
    fn ext1_of_two_lines() {
        // Ext^1(R/(x), R/(y)) over k[x,y] is k in degree -1
        let ring = ring2();
        let m_mod = md(Presentation::cyclic(ring.clone(), vec![x()]).unwrap());
        let n_mod = md(Presentation::cyclic(ring.clone(), vec![y()]).unwrap());
        let e1 = ModuleData::analyze(&ext_module(&m_mod, &n_mod, 1));
        assert_eq!(e1.hilbert_fn(-1), 1);
        let total: u64 = (-4..4).map(|t| e1.hilbert_fn(t)).sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn dual_ext_of_hypersurface() {
        // Ext^1(R/(x), R) = (R/(x))(1): dimension 1 in every degree >= -1
        let ring = ring2();
        let m_mod = md(Presentation::cyclic(ring.clone(), vec![x()]).unwrap());
        let e1 = ModuleData::analyze(&ext_into_ring(&m_mod, 1));
        assert_eq!(e1.hilbert_fn(-2), 0);
        for t in -1..4 {
            assert_eq!(e1.hilbert_fn(t), 1);
        }
        assert!(ext_into_ring(&m_mod, 0).is_zero_module());
        // and it agrees with the Hom-complex route against N = R
        let r_mod = md(Presentation::free(ring.clone(), vec![0]));
        let via_hom = ModuleData::analyze(&ext_module(&m_mod, &r_mod, 1));
        for t in -3..4 {
            assert_eq!(e1.hilbert_fn(t), via_hom.hilbert_fn(t));
        }
    }

    #[test]
    fn top_ext_of_the_point_is_socle() {
        // Ext^2(R/(x,y), R) = k(-(-2)) concentrated in degree -2
        let ring = ring2();
        let m_mod = md(Presentation::cyclic(ring.clone(), vec![x(), y()]).unwrap());
        let e2 = ModuleData::analyze(&ext_into_ring(&m_mod, 2));
        assert_eq!(e2.hilbert_fn(-2), 1);
        assert_eq!(e2.inv.reg, ExtInt::Fin(-2));
        assert_eq!(e2.inv.indeg, ExtInt::Fin(-2));
        assert_eq!(e2.hilb.degree, BigInt::from(1));
    }

    #[test]
    fn local_cohomology_of_plane() {
        // H^2_m(R)_{-2} has dimension 1 over k[x,y]
        let ring = ring2();
        let r_mod = md(Presentation::free(ring.clone(), vec![0]));
        let fam = ext_ring_family(&r_mod);
        let lc = local_cohomology_dims(&r_mod, &fam, (-4, 2));
        assert_eq!(lc.dim(2, -2), 1);
        assert_eq!(lc.dim(2, -1), 0);
        assert_eq!(lc.dim(2, -3), 2);
        assert_eq!(lc.dim(0, 0), 0);
        assert_eq!(lc.dim(1, -1), 0);
    }

    #[test]
    fn local_cohomology_matches_saturation() {
        let ring = ring2();
        let m_mod = md(
            Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        let fam = ext_ring_family(&m_mod);
        let lc = local_cohomology_dims(&m_mod, &fam, (-3, 4));
        let sat = crate::analysis::saturate(&m_mod);
        for mu in -3..=4 {
            assert_eq!(lc.dim(0, mu), sat.h0_dims.get(&mu).copied().unwrap_or(0));
        }
    }

    #[test]
    fn truncation_examples() {
        let ring = ring2();
        let r_mod = md(Presentation::free(ring.clone(), vec![0]));
        // t <= indeg leaves the module unchanged
        let same = truncate(&r_mod, 0);
        assert_eq!(same.gens.twists(), &[0]);
        // R_{>=2} is generated by the three degree-2 monomials
        let t2 = ModuleData::analyze(&truncate(&r_mod, 2));
        assert_eq!(t2.inv.mu, 3);
        assert_eq!(t2.inv.indeg, ExtInt::Fin(2));
        assert_eq!(t2.inv.reg, ExtInt::Fin(2));
        for t in 0..2 {
            assert_eq!(t2.hilbert_fn(t), 0);
        }
        for t in 2..6 {
            assert_eq!(t2.hilbert_fn(t), r_mod.hilbert_fn(t));
        }
    }

    #[test]
    fn truncation_regularity_rule() {
        // reg(M_{>=t}) = max(t, reg M)
        let ring = ring2();
        let m_mod = md(
            Presentation::cyclic(ring.clone(), vec![x().mul(&ring, &x()), x().mul(&ring, &y())])
                .unwrap(),
        );
        let reg = m_mod.inv.reg.expect_fin("reg");
        for t in [0, 1, 2, 3] {
            let tr = ModuleData::analyze(&truncate(&m_mod, t));
            assert_eq!(tr.inv.reg, ExtInt::Fin(reg.max(t)));
        }
    }
}
