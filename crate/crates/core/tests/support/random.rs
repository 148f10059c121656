//! Seeded random projective complexes and module maps.

use std::sync::Arc;

use dabelian::algebra::Algebra;
use dabelian::complex::Complex;
use dabelian::field::{Field, Rational};
use dabelian::module::{HomSpace, Morphism, Representation};
use dabelian::standard::{projective, projective_cover};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

pub fn projective_sum(alg: &Arc<Algebra<Q>>, rng: &mut ChaCha8Rng, max: usize) -> Arc<Representation<Q>> {
    let k = rng.gen_range(0..=max);
    let parts: Vec<Arc<Representation<Q>>> = (0..k).map(|_| Arc::new(projective(alg, rng.gen_range(0..alg.num_vertices())))).collect();
    if parts.is_empty() {
        return Arc::new(Representation::zero(alg.clone()));
    }
    Representation::direct_sum(alg, &parts).object
}

/// Combination of a Hom basis with coefficients in `-2..=2`.
pub fn map(src: &Arc<Representation<Q>>, dst: &Arc<Representation<Q>>, rng: &mut ChaCha8Rng) -> Morphism<Q> {
    let h = HomSpace::new(src.clone(), dst.clone());
    let coeffs: Vec<Q> = (0..h.dim()).map(|_| Q::from_i64(rng.gen_range(-2..=2))).collect();
    h.combine(&coeffs)
}

/// Projective complex in degrees 0, 1, 2; `d_2` factors through the
/// projective cover of `ker d_1`, so `d_1 d_2 = 0`.
pub fn projective_complex(alg: &Arc<Algebra<Q>>, seed: u64) -> Arc<Complex<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p0 = projective_sum(alg, &mut rng, 2);
    let p1 = projective_sum(alg, &mut rng, 2);
    let d1 = map(&p1, &p0, &mut rng);
    let kernel = d1.kernel();
    let p2 = projective_sum(alg, &mut rng, 2);
    let d2 = if kernel.domain().is_zero() {
        Morphism::zero(p2.clone(), p1.clone())
    } else {
        let cover = projective_cover(kernel.domain());
        let h = map(&p2, cover.map.domain(), &mut rng);
        kernel.compose(&cover.map).compose(&h)
    };
    Arc::new(Complex::new(alg.clone(), 0, vec![p0, p1, p2], vec![d1, d2]).unwrap())
}
