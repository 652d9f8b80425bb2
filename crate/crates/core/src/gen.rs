//! Seeded random polynomials, forms, and points for the axiom suites.
//! Everything is a pure function of the seed, so check runs and property
//! tests are reproducible.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forms::{DiffForm, MultiIndex};
use crate::poly::{ExponentVector, Polynomial, NVARS};
use crate::rational::{rat, Rational};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational; never huge, so randomized suites stay fast.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-12i64..=12);
    let den = rng.gen_range(1i64..=12);
    rat(num, den)
}

pub fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Sparse random polynomial with at most `max_terms` terms of per-variable
/// degree at most 2 and total degree at most `max_total_degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, max_terms: usize, max_total_degree: u32) -> Polynomial {
    let n_terms = rng.gen_range(0..=max_terms);
    let mut out = Polynomial::zero();
    for _ in 0..n_terms {
        let mut exps = [0u32; NVARS];
        let mut total = 0;
        for e in exps.iter_mut() {
            if total >= max_total_degree {
                break;
            }
            let cap = (max_total_degree - total).min(2);
            *e = rng.gen_range(0..=cap);
            total += *e;
        }
        let term = Polynomial::from_terms([(ExponentVector(exps), random_nonzero_rational(rng))]);
        out = out.add(&term);
    }
    out
}

/// Random form of the given degree with a few random polynomial
/// coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, degree: usize, max_components: usize) -> DiffForm {
    let all: Vec<MultiIndex> = all_multi_indices(degree);
    let mut out = DiffForm::zero(degree);
    let n = rng.gen_range(1..=max_components.min(all.len()));
    for _ in 0..n {
        let idx = all[rng.gen_range(0..all.len())];
        let coeff = random_polynomial(rng, 3, 3);
        out = out.add(&DiffForm::from_terms(degree, [(idx, coeff)]));
    }
    out
}

/// All strictly increasing multi-indices of the given size.
pub fn all_multi_indices(degree: usize) -> Vec<MultiIndex> {
    (0u8..64)
        .filter(|mask| mask.count_ones() as usize == degree)
        .map(|mask| {
            let indices: Vec<usize> = (0..NVARS).filter(|&i| mask & (1 << i) != 0).collect();
            MultiIndex::from_indices(&indices)
        })
        .collect()
}

/// Random rational point in [-3, 3]^6.
pub fn random_point(rng: &mut ChaCha8Rng) -> [Rational; NVARS] {
    std::array::from_fn(|_| {
        let num = rng.gen_range(-36i64..=36);
        let den = rng.gen_range(12i64..=12);
        rat(num, den)
    })
}
