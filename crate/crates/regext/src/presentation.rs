//! Cokernel presentations of graded modules and their minimalization.

use crate::freemod::{vector_sort_key, FreeModule, FreeVector, GradedMap};
use crate::gb::{groebner_basis, ModOrder, ModuleGb};
use crate::poly::Poly;
use crate::ring::PolyRing;
use crate::Error;
use std::sync::Arc;

/// `M = coker(rels)`: the generators span `F = ⊕ R(-a_j)` and each relation
/// is a homogeneous column in `F`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub ring: Arc<PolyRing>,
    pub gens: FreeModule,
    pub rels: Vec<FreeVector>,
}

impl Presentation {
    pub fn new(
        ring: Arc<PolyRing>,
        gens: FreeModule,
        rels: Vec<FreeVector>,
    ) -> Result<Self, Error> {
        let mut kept = Vec::with_capacity(rels.len());
        for r in rels {
            if r.comps.len() != gens.rank() {
                return Err(Error::ShapeMismatch(format!(
                    "relation has {} entries for {} generators",
                    r.comps.len(),
                    gens.rank()
                )));
            }
            r.homogeneous_degree(&gens)?;
            if !r.is_zero() {
                kept.push(r);
            }
        }
        Ok(Presentation {
            ring,
            gens,
            rels: kept,
        })
    }

    /// The free module `F` itself.
    pub fn free(ring: Arc<PolyRing>, twists: Vec<i64>) -> Self {
        Presentation {
            ring,
            gens: FreeModule::new(twists),
            rels: Vec::new(),
        }
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Presentation {
            ring,
            gens: FreeModule::zero(),
            rels: Vec::new(),
        }
    }

    /// Cyclic module `R/I`.
    pub fn cyclic(ring: Arc<PolyRing>, ideal_gens: Vec<Poly>) -> Result<Self, Error> {
        let rels = ideal_gens
            .into_iter()
            .map(|p| FreeVector { comps: vec![p] })
            .collect();
        Presentation::new(ring, FreeModule::new(vec![0]), rels)
    }

    /// Relation map `d_1: ⊕ R(-deg r_k) -> F`.
    pub fn rel_map(&self) -> GradedMap {
        let twists = self
            .rels
            .iter()
            .map(|r| {
                r.homogeneous_degree(&self.gens)
                    .expect("validated on construction")
                    .expect("zero relations are dropped")
            })
            .collect();
        GradedMap::new(FreeModule::new(twists), self.gens.clone(), self.rels.clone())
    }

    pub fn rel_gb(&self) -> ModuleGb {
        groebner_basis(&self.ring, &self.gens, &self.rels, ModOrder::Top)
            .expect("validated on construction")
    }

    /// `M(s)`: all generator degrees drop by `s`.
    pub fn shift(&self, s: i64) -> Presentation {
        Presentation {
            ring: self.ring.clone(),
            gens: self.gens.shift(s),
            rels: self.rels.clone(),
        }
    }

    /// Direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        let gens = self.gens.concat(&other.gens);
        let r1 = self.gens.rank();
        let r2 = other.gens.rank();
        let mut rels = Vec::new();
        for r in &self.rels {
            let mut comps = r.comps.clone();
            comps.extend(vec![Poly::zero(); r2]);
            rels.push(FreeVector { comps });
        }
        for r in &other.rels {
            let mut comps = vec![Poly::zero(); r1];
            comps.extend(r.comps.clone());
            rels.push(FreeVector { comps });
        }
        Presentation {
            ring: self.ring.clone(),
            gens,
            rels,
        }
    }

    /// Eliminates unit entries (each one cancels a generator against a
    /// relation), then thins the surviving relations to a minimal generating
    /// set of the relation submodule. The result presents the same module
    /// with `F_0` a minimal generating set.
    pub fn minimalize(&self) -> Presentation {
        let ring = &*self.ring;
        let mut twists: Vec<i64> = self.gens.twists().to_vec();
        let mut rels: Vec<FreeVector> = self.rels.clone();
        'outer: loop {
            for j in 0..rels.len() {
                for i in 0..twists.len() {
                    if rels[j].comps[i].is_unit_constant() {
                        let c = rels[j].comps[i].lead().unwrap().1;
                        let cinv = ring.inv(c);
                        let pivot = rels[j].clone();
                        for (jj, r) in rels.iter_mut().enumerate() {
                            if jj == j || r.comps[i].is_zero() {
                                continue;
                            }
                            let q = r.comps[i].scale(ring, cinv);
                            *r = r.sub(ring, &pivot.mul_poly(ring, &q));
                        }
                        for r in rels.iter_mut() {
                            r.comps.remove(i);
                        }
                        rels.remove(j);
                        twists.remove(i);
                        rels.retain(|r| !r.is_zero());
                        continue 'outer;
                    }
                }
            }
            break;
        }
        let gens = FreeModule::new(twists);
        let rels = minimal_generators(ring, &gens, &rels);
        Presentation {
            ring: self.ring.clone(),
            gens,
            rels,
        }
    }

    /// A minimalized presentation with no generators presents the zero module.
    pub fn is_zero_module(&self) -> bool {
        self.minimalize().gens.is_zero()
    }

    /// Stable identifier for memoization: isomorphic keys arise from equal
    /// generator degrees and equal relation submodules.
    pub fn canonical_key(&self) -> String {
        let m = self.minimalize();
        let mut perm: Vec<usize> = (0..m.gens.rank()).collect();
        perm.sort_by_key(|&i| m.gens.twist(i));
        let twists: Vec<i64> = perm.iter().map(|&i| m.gens.twist(i)).collect();
        let gens = FreeModule::new(twists.clone());
        let rels: Vec<FreeVector> = m
            .rels
            .iter()
            .map(|r| FreeVector {
                comps: perm.iter().map(|&i| r.comps[i].clone()).collect(),
            })
            .collect();
        let gb = groebner_basis(&self.ring, &gens, &rels, ModOrder::Top).expect("homogeneous");
        let mut out = format!("p{};n{};t{:?};", self.ring.p(), self.ring.n(), twists);
        for g in &gb.gens {
            out.push('|');
            for (pos, exps, c) in vector_sort_key(g) {
                out.push_str(&format!("{pos}:{exps:?}:{c};"));
            }
        }
        out
    }
}

/// Thins homogeneous `candidates` to a minimal generating set of the
/// submodule they generate: a candidate is redundant exactly when it lies in
/// `m·K` plus the span of the candidates accepted before it (processed in
/// ascending degree).
pub fn minimal_generators(
    ring: &PolyRing,
    ambient: &FreeModule,
    candidates: &[FreeVector],
) -> Vec<FreeVector> {
    let mut cands: Vec<FreeVector> = candidates.iter().filter(|v| !v.is_zero()).cloned().collect();
    if cands.is_empty() {
        return Vec::new();
    }
    cands.sort_by(|a, b| {
        let da = a.homogeneous_degree(ambient).unwrap();
        let db = b.homogeneous_degree(ambient).unwrap();
        da.cmp(&db).then_with(|| vector_sort_key(a).cmp(&vector_sort_key(b)))
    });
    cands.dedup();
    let n = ring.n();
    let mut mk: Vec<FreeVector> = Vec::with_capacity(n * cands.len());
    for v in &cands {
        for b in 0..n {
            mk.push(v.mul_term(ring, &crate::monomial::Monomial::var(n, b), 1));
        }
    }
    let mut gb = groebner_basis(ring, ambient, &mk, ModOrder::Top).expect("homogeneous");
    let mut accepted = Vec::new();
    for v in cands {
        if gb.contains(ring, &v) {
            continue;
        }
        accepted.push(v.clone());
        gb = gb.extend(ring, vec![v]);
    }
    accepted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Arc<PolyRing> {
        Arc::new(PolyRing::standard(2))
    }

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn unit_entry_elimination() {
        // coker [ [x], [1] over two generators ]: generator 2 is redundant
        let ring = r2();
        let pres = Presentation::new(
            ring.clone(),
            FreeModule::new(vec![0, 1]),
            vec![FreeVector {
                comps: vec![x(), Poly::constant(&ring, 1)],
            }],
        )
        .unwrap();
        let m = pres.minimalize();
        assert_eq!(m.gens.twists(), &[0]);
        assert!(m.rels.is_empty()); // e_2 = -x e_1, relation used up
    }

    #[test]
    fn redundant_relation_dropped() {
        let ring = r2();
        let x2 = x().mul(&ring, &x());
        let x2y = x2.mul(&ring, &y());
        let pres = Presentation::cyclic(ring, vec![x2.clone(), x2y]).unwrap();
        let m = pres.minimalize();
        assert_eq!(m.rels.len(), 1);
        assert_eq!(m.rels[0], FreeVector { comps: vec![x2] });
    }

    #[test]
    fn minimal_generators_by_degree() {
        let ring = r2();
        let amb = FreeModule::new(vec![0]);
        // x and x^2: only x survives; x, y, x+y: two survive
        let v = |p: Poly| FreeVector { comps: vec![p] };
        let out = minimal_generators(&ring, &amb, &[v(x()), v(x().mul(&ring, &x()))]);
        assert_eq!(out.len(), 1);
        let out = minimal_generators(&ring, &amb, &[v(x()), v(y()), v(x().add(&ring, &y()))]);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn canonical_key_ignores_generator_order() {
        let ring = r2();
        let a = Presentation::new(
            ring.clone(),
            FreeModule::new(vec![0, 2]),
            vec![FreeVector { comps: vec![x().mul(&ring, &x()), Poly::zero()] }],
        )
        .unwrap();
        let b = Presentation::new(
            ring.clone(),
            FreeModule::new(vec![2, 0]),
            vec![FreeVector { comps: vec![Poly::zero(), x().mul(&ring, &x())] }],
        )
        .unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
    }
}
