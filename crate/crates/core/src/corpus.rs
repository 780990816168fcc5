//! Seeded generators of test instances over small Gaussian rationals.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{GaussianRational, UniPoly};
use crate::power::max_power_exponent;

/// A pair `(P, Q)`; `planted` is the common exponent used to build it, if
/// any.
#[derive(Debug, Clone)]
pub struct Instance {
    pub p: UniPoly,
    pub q: UniPoly,
    pub planted: Option<usize>,
}

/// Real and imaginary parts with numerators in `-3..=3` and denominators
/// `1` or `2`.
pub fn small_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::from_fractions(
        rng.gen_range(-3..=3),
        rng.gen_range(1..=2),
        rng.gen_range(-3..=3),
        rng.gen_range(1..=2),
    )
}

/// Random polynomial of exactly the given degree.
pub fn random_poly<R: Rng>(rng: &mut R, var: &str, degree: usize) -> UniPoly {
    let mut coeffs: Vec<GaussianRational> = (0..degree).map(|_| small_gaussian(rng)).collect();
    let lead = loop {
        let c = small_gaussian(rng);
        if !num::Zero::is_zero(&c) {
            break c;
        }
    };
    coeffs.push(lead);
    UniPoly::new(var, coeffs)
}

/// Random polynomial of the given degree that is not a proper power.
pub fn random_non_power<R: Rng>(rng: &mut R, var: &str, degree: usize) -> UniPoly {
    loop {
        let a = random_poly(rng, var, degree);
        if max_power_exponent(&a).expect("non-constant") == 1 {
            return a;
        }
    }
}

/// `n` instances with degrees at most `max_degree`: even indices random,
/// odd indices planted as `P = A^d`, `Q = B^d` with `d` cycling through
/// 2, 3, 4 and `A`, `B` not proper powers.
pub fn reducibility_corpus(seed: u64, n: usize, max_degree: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut planted_count = 0usize;
    for k in 0..n {
        if k % 2 == 0 {
            let dp = rng.gen_range(1..=max_degree);
            let dq = rng.gen_range(1..=max_degree);
            out.push(Instance { p: random_poly(&mut rng, "z", dp), q: random_poly(&mut rng, "w", dq), planted: None });
        } else {
            let d = [2, 3, 4][planted_count % 3].min(max_degree.max(2));
            planted_count += 1;
            let top = (max_degree / d).max(1);
            let (da, db) = (rng.gen_range(1..=top), rng.gen_range(1..=top));
            let a = random_non_power(&mut rng, "z", da);
            let b = random_non_power(&mut rng, "w", db);
            out.push(Instance { p: a.pow(d as u32), q: b.pow(d as u32), planted: Some(d) });
        }
    }
    out
}
