//! Twisted graded free modules `F = ⊕_j R(-a_j)`, their elements, and
//! homogeneous maps between them.
//!
//! Conventions used throughout:
//! * a twist list `[a_1..a_s]` means the `j`-th generator has degree `a_j`;
//!   the empty list is the zero module;
//! * a map is stored column-wise: column `j` is the image of the `j`-th
//!   source generator, an element of the target;
//! * a degree-0 homogeneous map has entry `(i, j)` zero or homogeneous of
//!   degree `source.twists[j] - target.twists[i]`.

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::{Coeff, PolyRing};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeModule {
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }

    /// The shifted module `F(s)`, whose degree-`t` piece is `F_{t+s}`;
    /// `R(-a)(s) = R(-(a-s))`.
    pub fn shift(&self, s: i64) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().map(|a| a - s).collect(),
        }
    }

    /// `Hom(F, R)`: twists negate.
    pub fn dual(&self) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().map(|a| -a).collect(),
        }
    }

    pub fn concat(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule { twists }
    }

    /// Number of degree-`t` basis monomials `u e_j`.
    pub fn dim_at(&self, n: usize, t: i64) -> u64 {
        self.twists
            .iter()
            .map(|a| {
                let d = t - a;
                if d < 0 {
                    0
                } else {
                    crate::hilbert::binom_u64(d + n as i64 - 1, n as i64 - 1)
                }
            })
            .sum()
    }
}

/// Element of a free module; `comps.len()` equals the ambient rank.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeVector {
    pub comps: Vec<Poly>,
}

impl FreeVector {
    pub fn zero(rank: usize) -> Self {
        FreeVector {
            comps: vec![Poly::zero(); rank],
        }
    }

    pub fn unit(rank: usize, pos: usize, n: usize) -> Self {
        let mut v = FreeVector::zero(rank);
        v.comps[pos] = Poly::one(n);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, ring: &PolyRing, other: &FreeVector) -> FreeVector {
        FreeVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(ring, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &FreeVector) -> FreeVector {
        FreeVector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(ring, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: Coeff) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.scale(ring, c)).collect(),
        }
    }

    pub fn mul_term(&self, ring: &PolyRing, u: &Monomial, c: Coeff) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.mul_term(ring, u, c)).collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, f: &Poly) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|p| p.mul(ring, f)).collect(),
        }
    }

    /// Degree of a homogeneous element in the given ambient module;
    /// `Ok(None)` for the zero vector, error when inhomogeneous.
    pub fn homogeneous_degree(&self, ambient: &FreeModule) -> Result<Option<i64>, Error> {
        let mut deg: Option<i64> = None;
        for (i, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous(format!("component {i} is not homogeneous")))?
                as i64
                + ambient.twist(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(e) => {
                    return Err(Error::Inhomogeneous(format!(
                        "component degrees disagree ({e} vs {d})"
                    )))
                }
            }
        }
        Ok(deg)
    }

    /// Strips entries so only a slice of positions survives.
    pub fn project(&self, range: std::ops::Range<usize>) -> FreeVector {
        FreeVector {
            comps: self.comps[range].to_vec(),
        }
    }
}

/// Canonical (deterministic, order-independent of construction) comparison
/// key for vectors. Sorting by this key makes generated bases reproducible.
pub fn vector_sort_key(v: &FreeVector) -> Vec<(usize, Vec<u32>, Coeff)> {
    let mut key = Vec::new();
    for (i, p) in v.comps.iter().enumerate() {
        for (m, c) in p.terms() {
            key.push((i, m.exps().to_vec(), *c));
        }
    }
    key
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<FreeVector>,
}

impl GradedMap {
    pub fn new(source: FreeModule, target: FreeModule, cols: Vec<FreeVector>) -> Self {
        assert_eq!(source.rank(), cols.len(), "one column per source generator");
        for c in &cols {
            assert_eq!(c.comps.len(), target.rank(), "column lives in the target");
        }
        GradedMap {
            source,
            target,
            cols,
        }
    }

    pub fn identity(f: &FreeModule, n: usize) -> Self {
        let cols = (0..f.rank())
            .map(|j| FreeVector::unit(f.rank(), j, n))
            .collect();
        GradedMap::new(f.clone(), f.clone(), cols)
    }

    pub fn zero_map(source: FreeModule, target: FreeModule) -> Self {
        let cols = (0..source.rank())
            .map(|_| FreeVector::zero(target.rank()))
            .collect();
        GradedMap::new(source, target, cols)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j].comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Every entry zero or homogeneous of degree `source_j - target_i`.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, col)| {
            col.comps.iter().enumerate().all(|(i, p)| {
                p.is_zero()
                    || p.homogeneous_degree()
                        .map(|d| d as i64 == self.source.twist(j) - self.target.twist(i))
                        .unwrap_or(false)
            })
        })
    }

    pub fn apply(&self, ring: &PolyRing, v: &FreeVector) -> FreeVector {
        let mut out = FreeVector::zero(self.target.rank());
        for (j, p) in v.comps.iter().enumerate() {
            if !p.is_zero() {
                out = out.add(ring, &self.cols[j].mul_poly(ring, p));
            }
        }
        out
    }

    /// `self ∘ other` (matrix product); requires `self.source == other.target`.
    pub fn compose(&self, ring: &PolyRing, other: &GradedMap) -> Result<GradedMap, Error> {
        if self.source != other.target {
            return Err(Error::ShapeMismatch(format!(
                "inner modules differ: {:?} vs {:?}",
                self.source.twists(),
                other.target.twists()
            )));
        }
        let cols = other.cols.iter().map(|c| self.apply(ring, c)).collect();
        Ok(GradedMap::new(
            other.source.clone(),
            self.target.clone(),
            cols,
        ))
    }

    /// `Hom(-, R)`: transposed matrix between dualized modules.
    pub fn dual(&self) -> GradedMap {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let cols = (0..src.rank())
            .map(|j| FreeVector {
                comps: (0..tgt.rank()).map(|i| self.entry(j, i).clone()).collect(),
            })
            .collect();
        GradedMap::new(src, tgt, cols)
    }

    /// The same map with both sides shifted by `s`.
    pub fn shift(&self, s: i64) -> GradedMap {
        GradedMap {
            source: self.source.shift(s),
            target: self.target.shift(s),
            cols: self.cols.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> PolyRing {
        PolyRing::standard(2)
    }

    #[test]
    fn homogeneity_examples() {
        let r = r2();
        // identity on R(-2)
        let f = FreeModule::new(vec![2]);
        assert!(GradedMap::identity(&f, r.n()).is_homogeneous());

        // [x^2, xy] : R(-2)^2 -> R
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let m = GradedMap::new(
            FreeModule::new(vec![2, 2]),
            FreeModule::new(vec![0]),
            vec![
                FreeVector { comps: vec![x.mul(&r, &x)] },
                FreeVector { comps: vec![x.mul(&r, &y)] },
            ],
        );
        assert!(m.is_homogeneous());

        // [x] : R(-2) -> R has a degree mismatch
        let bad = GradedMap::new(
            FreeModule::new(vec![2]),
            FreeModule::new(vec![0]),
            vec![FreeVector { comps: vec![x.clone()] }],
        );
        assert!(!bad.is_homogeneous());
    }

    #[test]
    fn compose_with_identity_and_zero() {
        let r = r2();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = GradedMap::new(
            FreeModule::new(vec![1, 1]),
            FreeModule::new(vec![0]),
            vec![
                FreeVector { comps: vec![x.clone()] },
                FreeVector { comps: vec![y.clone()] },
            ],
        );
        let id = GradedMap::identity(&f.source, r.n());
        assert_eq!(f.compose(&r, &id).unwrap(), f);

        let z = GradedMap::zero_map(FreeModule::new(vec![2]), f.source.clone());
        assert!(f.compose(&r, &z).unwrap().is_zero());
    }

    #[test]
    fn koszul_composite_vanishes() {
        // d1 = [x y]: R(-1)^2 -> R, d2 = [y, -x]^T: R(-2) -> R(-1)^2
        let r = r2();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let d1 = GradedMap::new(
            FreeModule::new(vec![1, 1]),
            FreeModule::new(vec![0]),
            vec![
                FreeVector { comps: vec![x.clone()] },
                FreeVector { comps: vec![y.clone()] },
            ],
        );
        let d2 = GradedMap::new(
            FreeModule::new(vec![2]),
            FreeModule::new(vec![1, 1]),
            vec![FreeVector {
                comps: vec![y.clone(), x.neg(&r)],
            }],
        );
        let c = d1.compose(&r, &d2).unwrap();
        assert!(c.is_zero());
        assert!(c.is_homogeneous());
    }

    #[test]
    fn twist_bookkeeping_in_dual() {
        let f = FreeModule::new(vec![-3, 0, 2]);
        assert_eq!(f.dual().twists(), &[3, 0, -2]);
        assert_eq!(f.shift(2).twists(), &[-5, -2, 0]);
    }
}
