//! Deterministic generation of test modules.
//!
//! A corpus mixes freely random homogeneous presentations with forced strata
//! that the bound suite needs to exercise: cyclic monomial quotients,
//! complete intersections, finite-length modules, modules with nonzero
//! `H^0`, and truncations. Identical parameters and seed reproduce the
//! corpus byte for byte.

use crate::analysis::ModuleData;
use crate::cohomology::truncate;
use crate::freemod::{FreeModule, FreeVector};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Poly;
use crate::presentation::Presentation;
use crate::ring::PolyRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CorpusParams {
    pub n: usize,
    pub max_deg: u32,
    pub num_gens: usize,
    pub num_rels: usize,
    pub count: usize,
    pub prime: u32,
}

impl CorpusParams {
    pub fn new(n: usize, max_deg: u32, count: usize) -> CorpusParams {
        CorpusParams {
            n,
            max_deg,
            num_gens: 2,
            num_rels: 3,
            count,
            prime: crate::ring::DEFAULT_PRIME,
        }
    }
}

fn random_homogeneous(ring: &PolyRing, deg: u32, rng: &mut ChaCha20Rng) -> Poly {
    let monos = monomials_of_degree(ring.n(), deg);
    loop {
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        for m in &monos {
            if rng.gen_bool(0.6) {
                terms.push((m.clone(), rng.gen_range(1..ring.p())));
            }
        }
        if !terms.is_empty() {
            return Poly::from_terms(ring, terms);
        }
    }
}

fn random_monomial(ring: &PolyRing, deg: u32, rng: &mut ChaCha20Rng) -> Poly {
    let monos = monomials_of_degree(ring.n(), deg);
    let m = monos[rng.gen_range(0..monos.len())].clone();
    Poly::monomial(m, 1)
}

/// A random presentation: generators in degrees `0..=1`, relations in
/// degrees up to `max_deg`, every column homogeneous and unit-free.
fn random_presentation(
    ring: &Arc<PolyRing>,
    params: &CorpusParams,
    rng: &mut ChaCha20Rng,
) -> Presentation {
    let g = rng.gen_range(1..=params.num_gens);
    let twists: Vec<i64> = (0..g).map(|_| rng.gen_range(0..=1)).collect();
    let max_twist = *twists.iter().max().unwrap();
    let r = rng.gen_range(0..=params.num_rels);
    let mut rels = Vec::new();
    for _ in 0..r {
        let col_deg = rng.gen_range(max_twist + 1..=(params.max_deg as i64).max(max_twist + 1));
        let mut comps = Vec::with_capacity(g);
        for &a in &twists {
            let entry_deg = col_deg - a;
            if entry_deg < 0 || rng.gen_bool(0.25) {
                comps.push(Poly::zero());
            } else {
                comps.push(random_homogeneous(ring, entry_deg as u32, rng));
            }
        }
        let v = FreeVector { comps };
        if !v.is_zero() {
            rels.push(v);
        }
    }
    Presentation::new(ring.clone(), FreeModule::new(twists), rels).expect("homogeneous by construction")
}

/// One corpus member per stratum index.
fn stratum_instance(
    ring: &Arc<PolyRing>,
    params: &CorpusParams,
    stratum: usize,
    rng: &mut ChaCha20Rng,
) -> Presentation {
    let n = ring.n();
    match stratum {
        // cyclic monomial quotient
        0 => {
            let k = rng.gen_range(1..=3);
            let gens = (0..k)
                .map(|_| random_monomial(ring, rng.gen_range(1..=params.max_deg), rng))
                .collect();
            Presentation::cyclic(ring.clone(), gens).unwrap()
        }
        // complete intersection of pure powers in a subset of the variables
        1 => {
            let c = rng.gen_range(1..=n);
            let gens = (0..c)
                .map(|i| {
                    let e = rng.gen_range(1..=params.max_deg);
                    Poly::monomial(
                        Monomial::new((0..n).map(|j| if j == i { e } else { 0 }).collect()),
                        1,
                    )
                })
                .collect();
            Presentation::cyclic(ring.clone(), gens).unwrap()
        }
        // finite length: all variables to powers
        2 => {
            let gens = (0..n)
                .map(|i| {
                    let e = rng.gen_range(1..=params.max_deg);
                    Poly::monomial(
                        Monomial::new((0..n).map(|j| if j == i { e } else { 0 }).collect()),
                        1,
                    )
                })
                .collect();
            Presentation::cyclic(ring.clone(), gens).unwrap()
        }
        // guaranteed nonzero H^0: a random module plus a finite-length summand
        3 => {
            let base = random_presentation(ring, params, rng);
            let t = rng.gen_range(1..=2u32);
            let socle_gens: Vec<Poly> = (0..n)
                .map(|i| Poly::monomial(Monomial::var(n, i).mul(&Monomial::var(n, i)), 1))
                .collect::<Vec<_>>()
                .into_iter()
                .take(if t == 1 { n } else { n })
                .collect();
            let socle = Presentation::cyclic(ring.clone(), socle_gens).unwrap();
            base.direct_sum(&socle)
        }
        // a truncation of the free module: the power m^t as a module
        4 => {
            let t = rng.gen_range(1..=params.max_deg.min(3)) as i64;
            let free = ModuleData::analyze(&Presentation::free(ring.clone(), vec![0]));
            truncate(&free, t)
        }
        _ => random_presentation(ring, params, rng),
    }
}

/// Deterministic corpus: `count` presentations over `F_prime[x_1..x_n]`.
pub fn generate_corpus(params: &CorpusParams, seed: u64) -> Vec<Presentation> {
    let names = ["x", "y", "z", "w"];
    let vars: Vec<String> = if params.n <= 4 {
        names[..params.n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=params.n).map(|i| format!("x{i}")).collect()
    };
    let ring = Arc::new(PolyRing::new(params.prime, vars).expect("valid corpus ring"));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(params.count);
    for k in 0..params.count {
        let pres = stratum_instance(&ring, params, k % 8, &mut rng);
        out.push(pres);
    }
    out
}
