//! Ext groups, Krull-Schmidt decomposition and the Auslander-Reiten translate.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Solver};
use crate::module::{HomSpace, Morphism, Representation};
use crate::standard::{
    default_length_bound, injective, projective_cover, projective_resolution, ProjectiveResolution,
};

/// `Ext^k(M, N)` as cohomology of `Hom(P_*, N)`.
#[derive(Clone, Debug)]
pub struct ExtSpace<F: Field> {
    pub degree: usize,
    pub resolution: ProjectiveResolution<F>,
    /// Cocycles `P_k -> N` whose classes form a basis.
    pub cocycles: Vec<Morphism<F>>,
}

impl<F: Field> ExtSpace<F> {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }
}

pub fn ext_space<F: Field>(k: usize, m: &Arc<Representation<F>>, n: &Arc<Representation<F>>) -> Result<ExtSpace<F>> {
    let res = projective_resolution(m, default_length_bound(m.algebra()))?;
    Ok(ext_from_resolution(k, res, n))
}

pub fn ext_from_resolution<F: Field>(k: usize, res: ProjectiveResolution<F>, n: &Arc<Representation<F>>) -> ExtSpace<F> {
    if k >= res.terms.len() {
        return ExtSpace { degree: k, resolution: res, cocycles: Vec::new() };
    }
    let hk = HomSpace::new(res.terms[k].clone(), n.clone());
    // Cocycles: f with f . d_{k+1} = 0.
    let cocycle_coords = match res.differentials.get(k) {
        Some(d) => {
            let images: Vec<Vec<F>> = hk.basis.iter().map(|f| f.compose(d).flatten()).collect();
            let len = d.domain().dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
            Matrix::from_columns(len, &images).kernel()
        }
        None => Matrix::identity(hk.dim()),
    };
    // Coboundaries: g . d_k for g in Hom(P_{k-1}, N).
    let boundary_coords = if k == 0 {
        Matrix::zeros(hk.dim(), 0)
    } else {
        let hprev = HomSpace::new(res.terms[k - 1].clone(), n.clone());
        let d = &res.differentials[k - 1];
        let cols: Vec<Vec<F>> = hprev.basis.iter().map(|g| hk.coordinates(&g.compose(d))).collect();
        Matrix::from_columns(hk.dim(), &cols)
    };
    let joint = boundary_coords.hstack(&cocycle_coords);
    let nb = boundary_coords.cols();
    let cocycles = joint
        .independent_columns()
        .into_iter()
        .filter(|&c| c >= nb)
        .map(|c| hk.combine(&joint.column(c)))
        .collect();
    ExtSpace { degree: k, resolution: res, cocycles }
}

/// Indecomposable summand with its biproduct maps into the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Arc<Representation<F>>,
    pub inclusion: Morphism<F>,
    pub projection: Morphism<F>,
}

pub const DECOMPOSE_BUDGET: usize = 32;

/// Krull-Schmidt decomposition by Fitting's lemma on seeded pseudo-random
/// endomorphisms. Summands are certified to have local endomorphism rings.
pub fn decompose<F: Field>(m: &Arc<Representation<F>>) -> Result<Vec<Summand<F>>> {
    let mut done = Vec::new();
    let mut stack = vec![Summand {
        module: m.clone(),
        inclusion: Morphism::identity(m.clone()),
        projection: Morphism::identity(m.clone()),
    }];
    while let Some(s) = stack.pop() {
        if s.module.is_zero() {
            continue;
        }
        match split(&s.module)? {
            None => done.push(s),
            Some(parts) => {
                for p in parts {
                    stack.push(Summand {
                        module: p.module,
                        inclusion: s.inclusion.compose(&p.inclusion),
                        projection: p.projection.compose(&s.projection),
                    });
                }
            }
        }
    }
    done.sort_by(|a, b| a.module.dims().cmp(b.module.dims()));
    Ok(done)
}

/// Whether the endomorphism ring is certified local.
pub fn is_indecomposable<F: Field>(m: &Arc<Representation<F>>) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(split(m)?.is_none())
}

fn split<F: Field>(x: &Arc<Representation<F>>) -> Result<Option<[Summand<F>; 2]>> {
    let end = HomSpace::new(x.clone(), x.clone());
    if end.dim() == 1 || local_certificate(x, &end) {
        return Ok(None);
    }
    let seed = x.dims().iter().fold(0x5eed_u64, |h, &d| h.wrapping_mul(1_000_003).wrapping_add(d as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support: Vec<usize> = (0..x.dims().len()).filter(|&v| x.dim(v) > 0).collect();
    for attempt in 0..DECOMPOSE_BUDGET {
        let coeffs: Vec<F> = if attempt < end.dim().min(DECOMPOSE_BUDGET / 4) {
            (0..end.dim()).map(|i| if i == attempt { F::one() } else { F::zero() }).collect()
        } else if attempt % 2 == 0 {
            // Random endomorphism killing a random vector, never invertible.
            let v = support[rng.gen_range(0..support.len())];
            let w: Vec<F> = (0..x.dim(v)).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
            if w.iter().all(F::is_zero) {
                continue;
            }
            let images: Vec<Vec<F>> = end.basis.iter().map(|b| b.vertex_map(v).mul_vec(&w)).collect();
            let ker = Matrix::from_columns(x.dim(v), &images).kernel();
            if ker.cols() == 0 {
                continue;
            }
            let c: Vec<F> = (0..ker.cols()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
            ker.mul_vec(&c)
        } else {
            (0..end.dim()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect()
        };
        let phi = end.combine(&coeffs);
        if let Some(parts) = fitting_split(x, &phi) {
            return Ok(Some(parts));
        }
    }
    Err(Error::DecompositionBudget(DECOMPOSE_BUDGET))
}

/// `X = im phi^N (+) ker phi^N` when `phi` is neither nilpotent nor invertible.
fn fitting_split<F: Field>(x: &Arc<Representation<F>>, phi: &Morphism<F>) -> Option<[Summand<F>; 2]> {
    let mut power = phi.clone();
    let mut reach = 1;
    while reach < x.total_dim() {
        power = power.compose(&power);
        reach *= 2;
    }
    let r = power.rank();
    if r == 0 || r == x.total_dim() {
        return None;
    }
    let (_, im) = power.image();
    let ker = power.kernel();
    let n = x.dims().len();
    let mut proj_im = Vec::with_capacity(n);
    let mut proj_ker = Vec::with_capacity(n);
    for v in 0..n {
        let t = im.vertex_map(v).hstack(ker.vertex_map(v));
        let inv = t.inverse().expect("Fitting decomposition");
        let a = im.domain().dim(v);
        proj_im.push(inv.submatrix(0, 0, a, x.dim(v)));
        proj_ker.push(inv.submatrix(a, 0, x.dim(v) - a, x.dim(v)));
    }
    let pi = Morphism::new_unchecked(x.clone(), im.domain().clone(), proj_im);
    let pk = Morphism::new_unchecked(x.clone(), ker.domain().clone(), proj_ker);
    Some([
        Summand { module: im.domain().clone(), inclusion: im, projection: pi },
        Summand { module: ker.domain().clone(), inclusion: ker, projection: pk },
    ])
}

/// Certifies `End(X) = K id (+) J` with `J` a nilpotent ideal.
fn local_certificate<F: Field>(x: &Arc<Representation<F>>, end: &HomSpace<F>) -> bool {
    let Some(v) = (0..x.dims().len()).find(|&v| {
        x.dim(v) > 0 && !F::from_i64(x.dim(v) as i64).is_zero()
    }) else {
        return false;
    };
    let dv = F::from_i64(x.dim(v) as i64).inv().expect("nonzero");
    let id = Morphism::identity(x.clone());
    let mut j: Vec<Morphism<F>> = Vec::new();
    for b in &end.basis {
        let bv = b.vertex_map(v);
        let mut tr = F::zero();
        for k in 0..bv.rows() {
            tr = tr.add(bv.get(k, k));
        }
        j.push(b.sub(&id.scale(&tr.mul(&dv))));
    }
    let len = id.flatten().len();
    let span = |ms: &[Morphism<F>]| {
        Matrix::from_columns(len, &ms.iter().map(Morphism::flatten).collect::<Vec<_>>()).column_space()
    };
    let jspan = span(&j);
    if jspan.cols() + 1 != end.dim() {
        return false;
    }
    let jsolver = Solver::new(&jspan);
    let to_morphism = |col: Vec<F>| {
        let mut off = 0;
        let maps = (0..x.dims().len())
            .map(|u| {
                let d = x.dim(u);
                let m = Matrix::from_vec(d, d, col[off..off + d * d].to_vec());
                off += d * d;
                m
            })
            .collect();
        Morphism::new_unchecked(x.clone(), x.clone(), maps)
    };
    let jbasis: Vec<Morphism<F>> = jspan.columns().into_iter().map(to_morphism).collect();
    for a in &jbasis {
        for b in &jbasis {
            if !jsolver.contains(&a.compose(b).flatten()) {
                return false;
            }
        }
    }
    // J^k strictly decreases to zero.
    let mut power = jbasis.clone();
    for _ in 0..=x.total_dim() {
        if power.is_empty() {
            return true;
        }
        let prods: Vec<Morphism<F>> =
            power.iter().flat_map(|p| jbasis.iter().map(move |b| p.compose(b))).collect();
        let s = span(&prods);
        if s.cols() >= power.len() {
            return false;
        }
        power = s.columns().into_iter().map(to_morphism).collect();
    }
    power.is_empty()
}

/// An isomorphism between indecomposables, if one exists.
pub fn find_isomorphism_indecomposable<F: Field>(
    x: &Arc<Representation<F>>,
    y: &Arc<Representation<F>>,
) -> Option<Morphism<F>> {
    if x.dims() != y.dims() {
        return None;
    }
    let fs = HomSpace::new(x.clone(), y.clone());
    if fs.dim() == 0 {
        return None;
    }
    let gs = HomSpace::new(y.clone(), x.clone());
    for f in &fs.basis {
        if f.is_iso() {
            return Some(f.clone());
        }
        for g in &gs.basis {
            if !is_nilpotent(&g.compose(f)) {
                return Some(f.clone());
            }
        }
    }
    None
}

pub fn is_nilpotent<F: Field>(phi: &Morphism<F>) -> bool {
    let mut power = phi.clone();
    let mut reach = 1;
    while reach < phi.domain().total_dim() {
        power = power.compose(&power);
        reach *= 2;
    }
    power.is_zero()
}

/// Isomorphism test through decompositions and summand matching.
pub fn is_isomorphic<F: Field>(x: &Arc<Representation<F>>, y: &Arc<Representation<F>>) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    if dx.len() != dy.len() {
        return Ok(false);
    }
    let mut used = vec![false; dy.len()];
    for s in &dx {
        let hit = (0..dy.len()).find(|&k| !used[k] && find_isomorphism_indecomposable(&s.module, &dy[k].module).is_some());
        match hit {
            Some(k) => used[k] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

pub fn is_projective<F: Field>(m: &Arc<Representation<F>>) -> bool {
    projective_cover(m).map.is_iso()
}

pub fn is_injective<F: Field>(m: &Arc<Representation<F>>) -> bool {
    is_projective(&Arc::new(m.dual()))
}

/// `tau M = ker(nu P_1 -> nu P_0)` for a minimal projective presentation.
/// Projective summands go to zero.
pub fn ar_translate<F: Field>(m: &Arc<Representation<F>>) -> Representation<F> {
    let alg = m.algebra().clone();
    let c0 = projective_cover(m);
    let k = c0.map.kernel();
    let c1 = projective_cover(k.domain());
    let d = k.compose(&c1.map);
    let (p1, p0) = (d.domain().clone(), d.codomain().clone());
    let n = alg.num_vertices();
    let offsets = |summands: &[usize], p: &Representation<F>| -> Vec<Vec<usize>> {
        let mut acc = vec![0; n];
        let mut out = Vec::new();
        for &i in summands {
            out.push(acc.clone());
            for v in 0..n {
                acc[v] += alg.paths_between(i, v).len();
            }
        }
        debug_assert_eq!(acc, p.dims());
        out
    };
    let off1 = offsets(&c1.vertices, &p1);
    let off0 = offsets(&c0.vertices, &p0);
    let inj1: Vec<Arc<Representation<F>>> = c1.vertices.iter().map(|&i| Arc::new(injective(&alg, i))).collect();
    let inj0: Vec<Arc<Representation<F>>> = c0.vertices.iter().map(|&j| Arc::new(injective(&alg, j))).collect();
    let s1 = Representation::direct_sum(&alg, &inj1);
    let s0 = Representation::direct_sum(&alg, &inj0);
    let mut nu_d = Morphism::zero(s1.object.clone(), s0.object.clone());
    for (kk, &i) in c1.vertices.iter().enumerate() {
        // Column of e_i in summand kk of P_1, at vertex i.
        let col = d.vertex_map(i).column(off1[kk][i] + alg.paths_between(i, i).iter().position(|&p| alg.path(p).is_trivial()).expect("trivial path"));
        for (l, &j) in c0.vertices.iter().enumerate() {
            let paths = alg.paths_between(j, i);
            let q: Vec<(usize, F)> = paths
                .iter()
                .enumerate()
                .map(|(r, &p)| (p, col[off0[l][i] + r].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if q.is_empty() {
                continue;
            }
            let block = nakayama_block(&alg, i, j, &q, &inj1[kk], &inj0[l]);
            nu_d = nu_d.add(&s0.inclusions[l].compose(&block).compose(&s1.projections[kk]));
        }
    }
    nu_d.kernel().domain().as_ref().clone()
}

/// `nu` of the map `P_i -> P_j` given by `e_i |-> q`, with `q` a combination of
/// paths from `j` to `i`: `phi |-> (s |-> phi(s q))`.
fn nakayama_block<F: Field>(
    alg: &Arc<crate::algebra::Algebra<F>>,
    i: usize,
    j: usize,
    q: &[(usize, F)],
    ii: &Arc<Representation<F>>,
    ij: &Arc<Representation<F>>,
) -> Morphism<F> {
    let n = alg.num_vertices();
    let maps = (0..n)
        .map(|v| {
            let rows = alg.paths_between(v, j);
            let cols = alg.paths_between(v, i);
            let mut m = Matrix::<F>::zeros(rows.len(), cols.len());
            for (r, &s) in rows.iter().enumerate() {
                for (p, c) in q {
                    for (idx, coef) in alg.concat(s, *p) {
                        if let Some(col) = cols.iter().position(|&x| x == idx) {
                            let cur = m.get(r, col).clone();
                            m.set(r, col, cur.add(&coef.mul(c)));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Morphism::new_unchecked(ii.clone(), ij.clone(), maps)
}

/// `tau^- M = D tau_{op} D M`. Injective summands go to zero.
pub fn tau_inverse<F: Field>(m: &Arc<Representation<F>>) -> Representation<F> {
    let dm = Arc::new(m.dual());
    ar_translate(&dm).dual()
}

/// `Omega^k M`.
pub fn syzygy_power<F: Field>(m: &Arc<Representation<F>>, k: usize) -> Arc<Representation<F>> {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = projective_cover(&cur).map.kernel().domain().clone();
    }
    cur
}

/// `Omega^{-k} M`, through the opposite algebra.
pub fn cosyzygy_power<F: Field>(m: &Arc<Representation<F>>, k: usize) -> Arc<Representation<F>> {
    let dm = Arc::new(m.dual());
    Arc::new(syzygy_power(&dm, k).dual())
}

/// `tau_n = tau Omega^{n-1}`.
pub fn tau_n<F: Field>(m: &Arc<Representation<F>>, n: usize) -> Representation<F> {
    assert!(n >= 1, "tau_n needs n >= 1");
    ar_translate(&syzygy_power(m, n - 1))
}

/// `tau_n^- = tau^- Omega^{-(n-1)}`.
pub fn tau_n_inverse<F: Field>(m: &Arc<Representation<F>>, n: usize) -> Representation<F> {
    assert!(n >= 1, "tau_n needs n >= 1");
    tau_inverse(&cosyzygy_power(m, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::field::Rational;
    use crate::standard::{projective, simple};

    fn a2() -> Arc<Algebra<Rational>> {
        Arc::new(Algebra::path_algebra(Quiver::linear_a(2)).unwrap())
    }

    fn a3rad2() -> Arc<Algebra<Rational>> {
        Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap())
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let s1 = Arc::new(simple(&a, 0));
        let s2 = Arc::new(simple(&a, 1));
        assert_eq!(ext_space(1, &s1, &s2).unwrap().dim(), 1);
        assert_eq!(ext_space(0, &s1, &s2).unwrap().dim(), 0);
        let b = a3rad2();
        let t1 = Arc::new(simple(&b, 0));
        let t3 = Arc::new(simple(&b, 2));
        assert_eq!(ext_space(2, &t1, &t3).unwrap().dim(), 1);
    }

    #[test]
    fn translate_examples() {
        let a = a2();
        let s1 = Arc::new(simple(&a, 0));
        let t = ar_translate(&s1);
        assert_eq!(t.dims(), &[0, 1]);
        let p1 = Arc::new(projective(&a, 0));
        assert!(ar_translate(&p1).is_zero());
        let s2 = Arc::new(simple(&a, 1));
        assert_eq!(tau_inverse(&s2).dims(), &[1, 0]);
    }

    #[test]
    fn decompose_sum() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0));
        let s1 = Arc::new(simple(&a, 0));
        let sum = Representation::direct_sum(&a, &[p1.clone(), s1.clone(), p1.clone()]);
        let parts = decompose(&sum.object).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(p.projection.compose(&p.inclusion).is_iso());
        }
        assert!(is_isomorphic(&sum.object, &sum.object).unwrap());
    }
}
