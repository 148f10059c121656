//! d-kernels and d-cokernels in a window: complete to an angle, spin, apply a
//! truncation to every term, and certify against the window's indecomposables.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::{homotopy_inverse, solve_post, solve_pre, HomK};
use crate::window::{Window, WindowObject};

/// Which Hom functor a certificate applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    /// `Hom(-, t)`: exact `0 -> Hom(X_{d+1}, t) -> ... -> Hom(X_0, t)`.
    Contravariant,
    /// `Hom(t, -)`: exact `0 -> Hom(t, X_0) -> ... -> Hom(t, X_{d+1})`.
    Covariant,
}

/// Hom dimensions and ranks of the induced maps for one test object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestRanks {
    pub test: String,
    /// `dims[k]` is the dimension of the Hom space at `X_k`.
    pub dims: Vec<usize>,
    /// `ranks[k]` is the rank of the map induced by `f_k`.
    pub ranks: Vec<usize>,
    /// Positions `k` where exactness fails.
    pub failures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub variance: Variance,
    /// Positions `k` with `f_{k+1} f_k` not null-homotopic.
    pub nonzero_composites: Vec<usize>,
    pub tests: Vec<TestRanks>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.nonzero_composites.is_empty() && self.tests.iter().all(|t| t.failures.is_empty())
    }
}

/// `X_0 -> X_1 -> ... -> X_{d+1}` with `maps[k]: X_k -> X_{k+1}`.
#[derive(Clone, Debug)]
pub struct NExactChain<F: Field> {
    pub objects: Vec<Arc<Complex<F>>>,
    pub maps: Vec<ChainMap<F>>,
    /// Window object indices of each term, when known.
    pub parts: Option<Vec<Vec<usize>>>,
    pub certificate: Option<Certificate>,
}

impl<F: Field> NExactChain<F> {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Indices of terms with nonzero homology.
    pub fn nonzero_terms(&self) -> Vec<usize> {
        (0..self.objects.len()).filter(|&k| !self.objects[k].is_acyclic()).collect()
    }
}

fn require_members<F: Field>(w: &Window<F>, phi: &ChainMap<F>) -> Result<()> {
    for x in [phi.domain(), phi.codomain()] {
        if let crate::window::Membership::Refused { reason } = w.contains(x) {
            return Err(Error::Invalid(format!("object outside the window: {reason}")));
        }
    }
    Ok(())
}

/// `Hom(t, f)` injective for every indecomposable `t`.
pub fn is_monic_in<F: Field>(w: &Window<F>, f: &ChainMap<F>) -> Result<bool> {
    for t in w.indecomposables()? {
        let from = HomK::new(t.complex.clone(), f.domain().clone());
        if from.dim() == 0 {
            continue;
        }
        let into = HomK::new(t.complex.clone(), f.codomain().clone());
        if from.postcompose_matrix(f, &into).rank() < from.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Hom(f, t)` injective for every indecomposable `t`.
pub fn is_epic_in<F: Field>(w: &Window<F>, f: &ChainMap<F>) -> Result<bool> {
    for t in w.indecomposables()? {
        let from = HomK::new(f.codomain().clone(), t.complex.clone());
        if from.dim() == 0 {
            continue;
        }
        let into = HomK::new(f.domain().clone(), t.complex.clone());
        if from.precompose_matrix(f, &into).rank() < from.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn test_ranks<F: Field>(
    t: &WindowObject<F>,
    objects: &[Arc<Complex<F>>],
    maps: &[ChainMap<F>],
    variance: Variance,
) -> TestRanks {
    let spaces: Vec<HomK<F>> = objects
        .iter()
        .map(|x| match variance {
            Variance::Contravariant => HomK::new(x.clone(), t.complex.clone()),
            Variance::Covariant => HomK::new(t.complex.clone(), x.clone()),
        })
        .collect();
    let dims: Vec<usize> = spaces.iter().map(HomK::dim).collect();
    let ranks: Vec<usize> = maps
        .iter()
        .enumerate()
        .map(|(k, f)| match variance {
            Variance::Contravariant => spaces[k + 1].precompose_matrix(f, &spaces[k]).rank(),
            Variance::Covariant => spaces[k].postcompose_matrix(f, &spaces[k + 1]).rank(),
        })
        .collect();
    let last = dims.len() - 1;
    let mut failures = Vec::new();
    match variance {
        Variance::Contravariant => {
            if ranks[last - 1] != dims[last] {
                failures.push(last);
            }
            for k in 1..last {
                if ranks[k] + ranks[k - 1] != dims[k] {
                    failures.push(k);
                }
            }
        }
        Variance::Covariant => {
            if ranks[0] != dims[0] {
                failures.push(0);
            }
            for k in 1..last {
                if ranks[k - 1] + ranks[k] != dims[k] {
                    failures.push(k);
                }
            }
        }
    }
    failures.sort_unstable();
    TestRanks { test: t.label.clone(), dims, ranks, failures }
}

/// Rank certificate for a chain against every window indecomposable.
pub fn certify<F: Field>(
    w: &Window<F>,
    objects: &[Arc<Complex<F>>],
    maps: &[ChainMap<F>],
    variance: Variance,
) -> Result<Certificate> {
    let tests = w.indecomposables()?;
    let nonzero_composites = (0..maps.len().saturating_sub(1))
        .filter(|&k| {
            let hk = HomK::new(objects[k].clone(), objects[k + 2].clone());
            !hk.is_null_homotopic(&maps[k + 1].compose(&maps[k]))
        })
        .collect();
    let tests = tests.iter().map(|t| test_ranks(t, objects, maps, variance)).collect();
    Ok(Certificate { variance, nonzero_composites, tests })
}

/// Both certificates of a d-exact sequence.
pub fn verify_d_exact<F: Field>(w: &Window<F>, chain: &NExactChain<F>) -> Result<(Certificate, Certificate)> {
    if chain.objects.len() != w.d + 2 || chain.maps.len() != w.d + 1 {
        return Err(Error::Invalid(format!("a d-exact sequence for d = {} has {} terms", w.d, w.d + 2)));
    }
    Ok((
        certify(w, &chain.objects, &chain.maps, Variance::Contravariant)?,
        certify(w, &chain.objects, &chain.maps, Variance::Covariant)?,
    ))
}

/// An (n+2)-angle `t_0 -> t_1 -> ... -> t_{n+1}` with the connecting map
/// `t_{n+1} -> Sigma^{±n} t_0`, listed in chain order.
struct Angle<F: Field> {
    objects: Vec<Arc<Complex<F>>>,
    maps: Vec<ChainMap<F>>,
    connecting: ChainMap<F>,
}

/// `t_0 -> t_1 -> x_1 -> t_2 -> x_2 -> ...` from cones and left
/// approximations; `t_{n+1} = x_n`.
fn cokernel_angle<F: Field>(w: &Window<F>, phi: &ChainMap<F>) -> Angle<F> {
    let tri = Complex::cone(phi);
    let mut objects = vec![phi.domain().clone(), phi.codomain().clone()];
    let mut maps = vec![phi.clone()];
    let mut x = tri.z.clone();
    let mut iota = tri.iota.clone();
    let mut pis = vec![tri.pi.clone()];
    for _ in 1..w.n {
        let a = w.left_approximation(&x);
        maps.push(a.compose(&iota));
        objects.push(a.codomain().clone());
        let t = Complex::cone(&a);
        iota = t.iota;
        pis.push(t.pi);
        x = t.z;
    }
    objects.push(x);
    maps.push(iota);
    let n = w.n;
    let mut connecting = pis[n - 1].clone();
    for i in (0..n - 1).rev() {
        connecting = pis[i].shift((n - 1 - i) as i64).compose(&connecting);
    }
    Angle { objects, maps, connecting }
}

/// `... -> x_1 -> t_1 -> t_0` from fibers and right approximations, listed
/// from `t_{n+1}` down to `t_0`; the connecting map is
/// `Sigma^{-n} t_0 -> t_{n+1}`.
fn kernel_angle<F: Field>(w: &Window<F>, phi: &ChainMap<F>) -> Angle<F> {
    let fib = Complex::fiber(phi);
    let mut objects = vec![phi.codomain().clone(), phi.domain().clone()];
    let mut maps = vec![phi.clone()];
    let mut x = fib.object.clone();
    let mut to = fib.to_domain.clone();
    let mut from = vec![fib.from_desuspension.clone()];
    for _ in 1..w.n {
        let b = w.right_approximation(&x);
        maps.push(to.compose(&b));
        objects.push(b.domain().clone());
        let f = Complex::fiber(&b);
        to = f.to_domain;
        from.push(f.from_desuspension);
        x = f.object;
    }
    objects.push(x);
    maps.push(to);
    let n = w.n;
    let mut connecting = from[n - 1].clone();
    for i in (0..n - 1).rev() {
        connecting = connecting.compose(&from[i].shift(-((n - 1 - i) as i64)));
    }
    objects.reverse();
    maps.reverse();
    Angle { objects, maps, connecting }
}

fn shifted<F: Field>(x: &Arc<Complex<F>>, k: i64) -> Arc<Complex<F>> {
    if k == 0 {
        x.clone()
    } else {
        Arc::new(x.shift(k))
    }
}

/// First map `Y -> a^1` of the angle `Y -> a^1 -> ... -> a^n -> X -> Sigma^n Y`
/// on the class `c: X -> Sigma^n Y`; `y` is the desuspended codomain of `c`.
pub fn extension_start<F: Field>(w: &Window<F>, c: &ChainMap<F>, y: &Arc<Complex<F>>) -> ChainMap<F> {
    let angle = cokernel_angle(w, c);
    let g = &angle.maps[1];
    let n = w.n as i64;
    g.shift_between(-n, y.clone(), shifted(g.codomain(), -n))
}

/// The d-cokernel `X -> Y -> tau Z -> tau Sigma X -> ...` of `phi`.
pub fn d_cokernel<F: Field>(w: &Window<F>, phi: &ChainMap<F>) -> Result<NExactChain<F>> {
    require_members(w, phi)?;
    let angle = cokernel_angle(w, phi);
    let n = w.n as i64;
    let len = angle.objects.len();
    let mut spun: Vec<Arc<Complex<F>>> = Vec::new();
    for b in 0..=w.m as i64 {
        for t in &angle.objects {
            spun.push(shifted(t, b * n));
        }
    }
    let mut spun_maps = Vec::new();
    for k in 0..spun.len() - 1 {
        let (b, i) = ((k / len) as i64, k % len);
        let f = if i + 1 < len { &angle.maps[i] } else { &angle.connecting };
        spun_maps.push(f.shift_between(b * n, spun[k].clone(), spun[k + 1].clone()));
    }
    let top = w.top();
    let mut objects = Vec::new();
    let mut canon = Vec::new();
    for s in &spun {
        let (o, c) = w.truncate_le(s, top)?;
        objects.push(o);
        canon.push(c);
    }
    let mut maps = Vec::new();
    for (k, g) in spun_maps.iter().enumerate() {
        let target = canon[k + 1].compose(g);
        let f = if Arc::ptr_eq(&objects[k], &spun[k]) {
            target
        } else {
            solve_pre(&canon[k], &target).expect("truncation is left adjoint")
        };
        maps.push(f);
    }
    let certificate = match w.indecomposables() {
        Ok(_) => Some(certify(w, &objects, &maps, Variance::Contravariant)?),
        Err(_) => None,
    };
    Ok(NExactChain { objects, maps, parts: None, certificate })
}

/// The d-kernel `... -> tau Sigma^{-1} Y -> tau W -> X -> Y` of `phi: X -> Y`.
pub fn d_kernel<F: Field>(w: &Window<F>, phi: &ChainMap<F>) -> Result<NExactChain<F>> {
    require_members(w, phi)?;
    let angle = kernel_angle(w, phi);
    let n = w.n as i64;
    let len = angle.objects.len();
    let mut spun: Vec<Arc<Complex<F>>> = Vec::new();
    for b in (0..=w.m as i64).rev() {
        for t in &angle.objects {
            spun.push(shifted(t, -b * n));
        }
    }
    let blocks = w.m + 1;
    let mut spun_maps = Vec::new();
    for k in 0..spun.len() - 1 {
        let (blk, i) = (k / len, k % len);
        let b = (blocks - 1 - blk) as i64;
        let f = if i + 1 < len { &angle.maps[i] } else { &angle.connecting };
        let shift = if i + 1 < len { -b * n } else { -(b - 1) * n };
        spun_maps.push(f.shift_between(shift, spun[k].clone(), spun[k + 1].clone()));
    }
    let mut objects = Vec::new();
    let mut canon = Vec::new();
    for s in &spun {
        let (o, c) = w.truncate_ge(s, 0)?;
        objects.push(o);
        canon.push(c);
    }
    let mut maps = Vec::new();
    for (k, g) in spun_maps.iter().enumerate() {
        let target = g.compose(&canon[k]);
        let f = if Arc::ptr_eq(&objects[k + 1], &spun[k + 1]) {
            target
        } else {
            solve_post(&canon[k + 1], &target).expect("truncation is right adjoint")
        };
        maps.push(f);
    }
    let certificate = match w.indecomposables() {
        Ok(_) => Some(certify(w, &objects, &maps, Variance::Covariant)?),
        Err(_) => None,
    };
    Ok(NExactChain { objects, maps, parts: None, certificate })
}

/// Which end of a chain is pinned during minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pinned {
    /// `X_0 -> X_1` is kept: d-cokernels.
    Head,
    /// `X_d -> X_{d+1}` is kept: d-kernels.
    Tail,
    /// `X_0` and `X_{d+1}` are kept: d-extensions.
    Ends,
}

fn is_iso_block<F: Field>(w: &Window<F>, obj: &WindowObject<F>, c: &ChainMap<F>) -> bool {
    match obj.stalk {
        Some((j, _)) => {
            let deg = (j * w.n) as i64;
            let h = obj.complex.homology(deg);
            c.on_homology(deg, &h, &h).is_iso()
        }
        None => homotopy_inverse(c).is_some(),
    }
}

/// Strips isomorphism components between consecutive terms by Gaussian
/// elimination, left to right, away from the pinned end. Returns `None` when
/// a term has no stalk-sum normal form.
pub fn minimize<F: Field>(w: &Window<F>, chain: &NExactChain<F>, pinned: Pinned) -> Result<Option<NExactChain<F>>> {
    let objs = w.indecomposables()?;
    let mut forms = Vec::new();
    for x in &chain.objects {
        match w.normal_form(x)? {
            Some(f) => forms.push(f),
            None => return Ok(None),
        }
    }
    let mut parts: Vec<Vec<usize>> = forms.iter().map(|f| f.parts.clone()).collect();
    // blocks[k][b][a]: part a of X_k to part b of X_{k+1}.
    let mut blocks: Vec<Vec<Vec<ChainMap<F>>>> = chain
        .maps
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let core = forms[k + 1].r.compose(f).compose(&forms[k].s);
            forms[k + 1]
                .projections
                .iter()
                .map(|p| forms[k].inclusions.iter().map(|i| p.compose(&core).compose(i)).collect())
                .collect()
        })
        .collect();
    let d = chain.maps.len() - 1;
    let allowed: Vec<usize> = match pinned {
        Pinned::Head => (2..=d).collect(),
        Pinned::Tail => (0..d.saturating_sub(1)).collect(),
        Pinned::Ends => (1..d).collect(),
    };
    'outer: loop {
        for &k in &allowed {
            for a in 0..parts[k].len() {
                for b in 0..parts[k + 1].len() {
                    if parts[k][a] != parts[k + 1][b] {
                        continue;
                    }
                    let c = &blocks[k][b][a];
                    if !is_iso_block(w, &objs[parts[k][a]], c) {
                        continue;
                    }
                    let cinv = homotopy_inverse(c).expect("isomorphism in the homotopy category");
                    let mut next = Vec::new();
                    for bb in 0..parts[k + 1].len() {
                        if bb == b {
                            continue;
                        }
                        let gamma = blocks[k][bb][a].compose(&cinv);
                        let row = (0..parts[k].len())
                            .filter(|&aa| aa != a)
                            .map(|aa| blocks[k][bb][aa].sub(&gamma.compose(&blocks[k][b][aa])))
                            .collect();
                        next.push(row);
                    }
                    blocks[k] = next;
                    if k >= 1 {
                        blocks[k - 1].remove(a);
                    }
                    if k < d {
                        for row in blocks[k + 1].iter_mut() {
                            row.remove(b);
                        }
                    }
                    parts[k].remove(a);
                    parts[k + 1].remove(b);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let pinned_pos: Vec<usize> = match pinned {
        Pinned::Head => vec![0, 1],
        Pinned::Tail => vec![d, d + 1],
        Pinned::Ends => vec![0, d + 1],
    };
    let mut objects = Vec::new();
    let mut sums = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let complexes: Vec<Arc<Complex<F>>> = p.iter().map(|&i| objs[i].complex.clone()).collect();
        let sum = Complex::direct_sum(&w.algebra, &complexes);
        objects.push(if pinned_pos.contains(&k) { chain.objects[k].clone() } else { sum.object.clone() });
        sums.push(sum);
    }
    let mut maps = Vec::new();
    for k in 0..=d {
        if pinned_pos.contains(&k) && pinned_pos.contains(&(k + 1)) {
            maps.push(chain.maps[k].clone());
            continue;
        }
        let (src, dst) = (&sums[k], &sums[k + 1]);
        let mut f = ChainMap::zero(src.object.clone(), dst.object.clone());
        for (b, row) in blocks[k].iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                f = f.add(&dst.inclusions[b].compose(c).compose(&src.projections[a]));
            }
        }
        if pinned_pos.contains(&k) {
            f = f.compose(&forms[k].r);
        }
        if pinned_pos.contains(&(k + 1)) {
            f = forms[k + 1].s.compose(&f);
        }
        maps.push(f);
    }
    let variance = match pinned {
        Pinned::Head | Pinned::Ends => Variance::Contravariant,
        Pinned::Tail => Variance::Covariant,
    };
    let certificate = Some(certify(w, &objects, &maps, variance)?);
    Ok(Some(NExactChain { objects, maps, parts: Some(parts), certificate }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::Rational;
    use crate::module::hom_space;

    fn a2_window(m: usize) -> Window<Rational> {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        Window::hereditary(&a, m, Some(&cat)).unwrap()
    }

    fn inclusion(w: &Window<Rational>) -> ChainMap<Rational> {
        let layer = &w.layer;
        let p2 = layer.iter().position(|m| m.dims() == [0, 1]).unwrap();
        let p1 = layer.iter().position(|m| m.dims() == [1, 1]).unwrap();
        let x = w.shifted_resolution(p2, 0);
        let y = w.shifted_resolution(p1, 0);
        let f = hom_space(x.term(0), y.term(0)).pop().unwrap();
        ChainMap::from_components(x, y, 0, vec![f])
    }

    #[test]
    fn a2_cokernel_of_inclusion() {
        let w = a2_window(1);
        let phi = inclusion(&w);
        assert!(is_monic_in(&w, &phi).unwrap());
        assert!(!is_epic_in(&w, &phi).unwrap());
        let c = d_cokernel(&w, &phi).unwrap();
        assert_eq!(c.objects.len(), 6);
        assert!(c.certificate.as_ref().unwrap().holds());
        let h: Vec<(Vec<i64>, Vec<usize>)> =
            c.objects[2..].iter().map(|x| (x.homology_support(), x.homology_dims(*x.homology_support().first().unwrap()))).collect();
        assert_eq!(
            h,
            vec![(vec![0], vec![1, 0]), (vec![1], vec![0, 1]), (vec![1], vec![1, 1]), (vec![1], vec![1, 0])]
        );
        let k = d_kernel(&w, c.maps.last().unwrap()).unwrap();
        assert!(k.certificate.as_ref().unwrap().holds());
        let min = minimize(&w, &k, Pinned::Tail).unwrap().unwrap();
        let mc = minimize(&w, &c, Pinned::Head).unwrap().unwrap();
        assert_eq!(min.parts, mc.parts);
    }
}
