//! Splitting idempotents of window objects, layer by layer: a single layer
//! splits in the module category, and an upper triangular idempotent on
//! `a_1 (+) a_0` splits by explicit block formulas from splittings of its
//! diagonal entries.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{ChainMap, Complex, ComplexSum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::{homotopy_inverse, HomK};
use crate::module::Morphism;
use crate::window::{map_inducing, stalk_of, Window};

/// `b --iota--> a --rho--> c` with `pi: a -> b` and `kappa: c -> a`.
#[derive(Clone, Debug)]
pub struct Splitting<F: Field> {
    pub image: Arc<Complex<F>>,
    pub complement: Arc<Complex<F>>,
    pub iota: ChainMap<F>,
    pub pi: ChainMap<F>,
    pub kappa: ChainMap<F>,
    pub rho: ChainMap<F>,
    /// Named identities with their verdicts, innermost layers first.
    pub checks: Vec<IdentityCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

impl<F: Field> Splitting<F> {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn equal<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> bool {
    HomK::new(f.domain().clone(), f.codomain().clone()).equal(f, g)
}

fn is_zero_class<F: Field>(f: &ChainMap<F>) -> bool {
    HomK::new(f.domain().clone(), f.codomain().clone()).is_null_homotopic(f)
}

fn basic_checks<F: Field>(a: &Arc<Complex<F>>, alpha: &ChainMap<F>, s: &Splitting<F>, tag: &str) -> Vec<IdentityCheck> {
    let id_a = ChainMap::identity(a.clone());
    let ip = s.iota.compose(&s.pi);
    let kr = s.kappa.compose(&s.rho);
    let mut out = vec![
        ("iota.pi + kappa.rho = 1", equal(&ip.add(&kr), &id_a)),
        ("pi.iota = 1", equal(&s.pi.compose(&s.iota), &ChainMap::identity(s.image.clone()))),
        ("rho.kappa = 1", equal(&s.rho.compose(&s.kappa), &ChainMap::identity(s.complement.clone()))),
        ("iota.pi = alpha", equal(&ip, alpha)),
        ("kappa.rho = 1 - alpha", equal(&kr, &id_a.sub(alpha))),
    ];
    let mut checks: Vec<IdentityCheck> =
        out.drain(..).map(|(n, h)| IdentityCheck { name: format!("{tag}: {n}"), holds: h }).collect();
    checks.sort_by(|x, y| x.name.cmp(&y.name));
    checks
}

/// Splits an idempotent `alpha` of a single-layer object concentrated in
/// homological degree `deg` through its action on homology.
fn split_layer<F: Field>(w: &Window<F>, a: &Arc<Complex<F>>, deg: i64, alpha: &ChainMap<F>) -> Result<Splitting<F>> {
    let ha = a.homology(deg);
    let e = alpha.on_homology(deg, &ha, &ha);
    let one = Morphism::identity(ha.module().clone());
    let mut sides = Vec::new();
    for f in [e.clone(), one.sub(&e)] {
        let (epi, mono) = f.image();
        let (b, hb, from_module) = stalk_of(w, epi.codomain(), deg)?;
        let to_module = from_module.inverse().expect("isomorphism");
        let into = map_inducing(&b, a, deg, &hb, &ha, &mono.compose(&to_module))
            .ok_or_else(|| Error::Invalid("homology map does not lift".into()))?;
        let out = map_inducing(a, &b, deg, &ha, &hb, &from_module.compose(&epi))
            .ok_or_else(|| Error::Invalid("homology map does not lift".into()))?;
        sides.push((b, into, out));
    }
    let (c, kappa, rho) = sides.pop().expect("two sides");
    let (b, iota, pi) = sides.pop().expect("two sides");
    let mut s = Splitting { image: b, complement: c, iota, pi, kappa, rho, checks: Vec::new() };
    s.checks = basic_checks(a, alpha, &s, &format!("layer {deg}"));
    Ok(s)
}

fn sum_maps<F: Field>(whole: &ComplexSum<F>, sub: &ComplexSum<F>, idx: &[usize]) -> (ChainMap<F>, ChainMap<F>) {
    let mut inc = ChainMap::zero(sub.object.clone(), whole.object.clone());
    let mut proj = ChainMap::zero(whole.object.clone(), sub.object.clone());
    for (k, &i) in idx.iter().enumerate() {
        inc = inc.add(&whole.inclusions[i].compose(&sub.projections[k]));
        proj = proj.add(&sub.inclusions[k].compose(&whole.projections[i]));
    }
    (inc, proj)
}

/// Splits an idempotent `alpha` of `a = (+) parts`, given as the sum of the
/// listed window objects with their biproduct maps.
pub fn split_idempotent<F: Field>(w: &Window<F>, parts: &[usize], a: &ComplexSum<F>, alpha: &ChainMap<F>) -> Result<Splitting<F>> {
    let objs = w.indecomposables()?;
    let degree = |p: usize| -> Result<i64> {
        objs[p]
            .stalk
            .map(|(j, _)| (j * w.n) as i64)
            .ok_or_else(|| Error::Unsupported(format!("{} is not a shifted module", objs[p].label)))
    };
    let degs: Vec<i64> = parts.iter().map(|&p| degree(p)).collect::<Result<_>>()?;
    if !equal(&alpha.compose(alpha), alpha) {
        return Err(Error::Invalid("the endomorphism is not idempotent".into()));
    }
    let top = degs.iter().copied().max().unwrap_or(0);
    if degs.iter().all(|&d| d == top) {
        return split_layer(w, &a.object, top, alpha);
    }
    let idx1: Vec<usize> = (0..parts.len()).filter(|&k| degs[k] == top).collect();
    let idx0: Vec<usize> = (0..parts.len()).filter(|&k| degs[k] != top).collect();
    let build = |idx: &[usize]| -> ComplexSum<F> {
        let cs: Vec<Arc<Complex<F>>> = idx.iter().map(|&k| objs[parts[k]].complex.clone()).collect();
        Complex::direct_sum(&w.algebra, &cs)
    };
    let (s1, s0) = (build(&idx1), build(&idx0));
    let (i1, p1) = sum_maps(a, &s1, &idx1);
    let (i0, p0) = sum_maps(a, &s0, &idx0);
    let a11 = p1.compose(alpha).compose(&i1);
    let a10 = p1.compose(alpha).compose(&i0);
    let a00 = p0.compose(alpha).compose(&i0);
    let lower = p0.compose(alpha).compose(&i1);
    let parts1: Vec<usize> = idx1.iter().map(|&k| parts[k]).collect();
    let parts0: Vec<usize> = idx0.iter().map(|&k| parts[k]).collect();
    let t = split_idempotent(w, &parts1, &s1, &a11)?;
    let z = split_idempotent(w, &parts0, &s0, &a00)?;
    let b = Complex::direct_sum(&w.algebra, &[t.image.clone(), z.image.clone()]);
    let c = Complex::direct_sum(&w.algebra, &[t.complement.clone(), z.complement.clone()]);
    let (ib1, ib0, pb1, pb0) = (&b.inclusions[0], &b.inclusions[1], &b.projections[0], &b.projections[1]);
    let (ic1, ic0, pc1, pc0) = (&c.inclusions[0], &c.inclusions[1], &c.projections[0], &c.projections[1]);
    let iota = i1
        .compose(&t.iota.compose(pb1).add(&a10.compose(&z.iota).compose(pb0)))
        .add(&i0.compose(&z.iota).compose(pb0));
    let pi = ib1
        .compose(&t.pi.compose(&p1).add(&t.pi.compose(&a10).compose(&p0)))
        .add(&ib0.compose(&z.pi).compose(&p0));
    let rho = ic1
        .compose(&t.rho.compose(&p1).neg().add(&t.rho.compose(&a10).compose(&p0)))
        .add(&ic0.compose(&z.rho).compose(&p0).neg());
    let kappa = i1
        .compose(&t.kappa.compose(pc1).neg().add(&a10.compose(&z.kappa).compose(pc0)))
        .add(&i0.compose(&z.kappa).compose(pc0).neg());
    let mut s = Splitting { image: b.object.clone(), complement: c.object.clone(), iota, pi, kappa, rho, checks: Vec::new() };
    let tag = format!("layers {}..={top}", degs.iter().min().copied().unwrap_or(top));
    let mut checks = t.checks.clone();
    checks.extend(z.checks.iter().cloned());
    checks.push(IdentityCheck { name: format!("{tag}: lower block vanishes"), holds: is_zero_class(&lower) });
    checks.push(IdentityCheck {
        name: format!("{tag}: rho1.alpha10.kappa0 = 0"),
        holds: is_zero_class(&t.rho.compose(&a10).compose(&z.kappa)),
    });
    checks.push(IdentityCheck {
        name: format!("{tag}: pi1.alpha10.iota0 = 0"),
        holds: is_zero_class(&t.pi.compose(&a10).compose(&z.iota)),
    });
    checks.extend(basic_checks(&a.object, alpha, &s, &tag));
    s.checks = checks;
    Ok(s)
}

/// Idempotent `U D U^{-1}` on `(+) parts`, with `D` the projection onto the
/// parts selected by `keep` and `U` a seeded random automorphism.
pub fn random_idempotent<F: Field>(w: &Window<F>, parts: &[usize], keep: &[bool], seed: u64) -> Result<(ComplexSum<F>, ChainMap<F>)> {
    let objs = w.indecomposables()?;
    let cs: Vec<Arc<Complex<F>>> = parts.iter().map(|&p| objs[p].complex.clone()).collect();
    let a = Complex::direct_sum(&w.algebra, &cs);
    let mut diag = ChainMap::zero(a.object.clone(), a.object.clone());
    for (k, &on) in keep.iter().enumerate() {
        if on {
            diag = diag.add(&a.inclusions[k].compose(&a.projections[k]));
        }
    }
    let end = HomK::new(a.object.clone(), a.object.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let coeffs: Vec<F> = (0..end.dim()).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
        let u = end.combine(&coeffs);
        if let Some(uinv) = homotopy_inverse(&u) {
            return Ok((a, u.compose(&diag).compose(&uinv)));
        }
    }
    Err(Error::BoundExceeded("no invertible automorphism in 64 draws".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::Rational;

    #[test]
    fn a2_two_layer_idempotent_splits() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let w = Window::hereditary(&a, 1, Some(&cat)).unwrap();
        let parts = vec![0, 1, 2, 3, 4, 5];
        for seed in 0..3 {
            let keep: Vec<bool> = (0..6).map(|k| (k + seed) % 2 == 0).collect();
            let (sum, e) = random_idempotent(&w, &parts, &keep, seed as u64).unwrap();
            let s = split_idempotent(&w, &parts, &sum, &e).unwrap();
            assert!(s.holds(), "{:?}", s.checks);
            assert!(!s.image.is_zero());
        }
    }
}
