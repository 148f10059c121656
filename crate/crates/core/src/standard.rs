//! Projective, injective and simple modules; covers, envelopes, resolutions.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{element_coefficient, Morphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Projective,
    Injective,
    Simple,
}

pub fn standard_module<F: Field>(alg: &Arc<Algebra<F>>, kind: StandardKind, i: usize) -> Result<Representation<F>> {
    if i >= alg.num_vertices() {
        return Err(Error::Invalid(format!("unknown vertex index {i}")));
    }
    Ok(match kind {
        StandardKind::Projective => projective(alg, i),
        StandardKind::Injective => injective(alg, i),
        StandardKind::Simple => simple(alg, i),
    })
}

/// `P_i`: at vertex `v` the paths from `i` to `v`; arrows append.
pub fn projective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| alg.paths_between(i, v).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let from = alg.paths_between(i, a.source);
            let to = alg.paths_between(i, a.target);
            let mut m = Matrix::zeros(to.len(), from.len());
            for (c, &p) in from.iter().enumerate() {
                let mut word = alg.path(p).arrows.clone();
                word.push(ai);
                let e = alg.word_element(i, &word);
                for (r, &t) in to.iter().enumerate() {
                    m.set(r, c, element_coefficient(&e, t));
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// `I_i`: at vertex `v` the dual of the paths from `v` to `i`.
pub fn injective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| alg.paths_between(v, i).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let from = alg.paths_between(a.source, i);
            let to = alg.paths_between(a.target, i);
            let mut m = Matrix::zeros(to.len(), from.len());
            for (r, &t) in to.iter().enumerate() {
                let mut word = vec![ai];
                word.extend_from_slice(&alg.path(t).arrows);
                let e = alg.word_element(a.source, &word);
                for (c, &p) in from.iter().enumerate() {
                    m.set(r, c, element_coefficient(&e, p));
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

pub fn simple<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| usize::from(v == i)).collect();
    let maps = q.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// The map `P_i -> M` sending `e_i` to `x in M_i`.
pub fn morphism_from_projective<F: Field>(
    p: &Arc<Representation<F>>,
    i: usize,
    m: &Arc<Representation<F>>,
    x: &[F],
) -> Morphism<F> {
    let maps = (0..m.dims().len()).map(|v| m.orbit_matrix(i, x, v)).collect();
    Morphism::new_unchecked(p.clone(), m.clone(), maps)
}

/// The map `M -> I_i` induced by a functional `psi` on `M_i`.
pub fn morphism_to_injective<F: Field>(
    m: &Arc<Representation<F>>,
    inj: &Arc<Representation<F>>,
    i: usize,
    psi: &[F],
) -> Morphism<F> {
    let alg = m.algebra();
    let row = Matrix::from_vec(1, psi.len(), psi.to_vec());
    let maps = (0..m.dims().len())
        .map(|v| {
            let paths = alg.paths_between(v, i);
            let mut out = Matrix::zeros(paths.len(), m.dim(v));
            for (r, &q) in paths.iter().enumerate() {
                let line = row.mul(&m.path_matrix(q));
                for c in 0..m.dim(v) {
                    out.set(r, c, line.get(0, c).clone());
                }
            }
            out
        })
        .collect();
    Morphism::new_unchecked(m.clone(), inj.clone(), maps)
}

/// Minimal projective cover: the summand list (vertex of each `P_i`) and the
/// epimorphism from their direct sum.
#[derive(Clone, Debug)]
pub struct Cover<F: Field> {
    pub vertices: Vec<usize>,
    /// For projective covers, the image of `e_i` of each summand.
    pub generators: Vec<Vec<F>>,
    pub map: Morphism<F>,
}

pub fn projective_cover<F: Field>(m: &Arc<Representation<F>>) -> Cover<F> {
    let alg = m.algebra().clone();
    let (_, sections) = m.quotient(&m.radical_spans());
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    let mut gens = Vec::new();
    for (v, s) in sections.iter().enumerate() {
        if s.cols() == 0 {
            continue;
        }
        let p = Arc::new(projective(&alg, v));
        for c in 0..s.cols() {
            vertices.push(v);
            parts.push(p.clone());
            gens.push((v, s.column(c)));
        }
    }
    let sum = Representation::direct_sum(&alg, &parts);
    let maps: Vec<Morphism<F>> =
        gens.iter().zip(&parts).map(|((v, x), p)| morphism_from_projective(p, *v, m, x)).collect();
    let map = sum.copair(&maps, m);
    let generators = gens.into_iter().map(|(_, x)| x).collect();
    Cover { vertices, generators, map }
}

/// Minimal injective envelope: the summand list and the monomorphism into it.
pub fn injective_envelope<F: Field>(m: &Arc<Representation<F>>) -> Cover<F> {
    let alg = m.algebra().clone();
    let socle = m.socle_spans();
    let mut vertices = Vec::new();
    let mut parts = Vec::new();
    let mut funcs = Vec::new();
    for (v, s) in socle.iter().enumerate() {
        if s.cols() == 0 {
            continue;
        }
        let inj = Arc::new(injective(&alg, v));
        // Functionals psi_k with psi_k(s_j) = delta_kj.
        let psis = s.transpose().solve(&Matrix::identity(s.cols())).expect("socle basis is independent");
        for k in 0..s.cols() {
            vertices.push(v);
            parts.push(inj.clone());
            funcs.push((v, psis.column(k)));
        }
    }
    let sum = Representation::direct_sum(&alg, &parts);
    let maps: Vec<Morphism<F>> =
        funcs.iter().zip(&parts).map(|((v, psi), inj)| morphism_to_injective(m, inj, *v, psi)).collect();
    let map = sum.pair(&maps, m);
    let generators = funcs.into_iter().map(|(_, x)| x).collect();
    Cover { vertices, generators, map }
}

/// Lift of a projective cover `P -> Q` through an epimorphism `Z -> Q`.
pub fn lift_cover<F: Field>(cover: &Cover<F>, epi: &Morphism<F>) -> Morphism<F> {
    let p = cover.map.domain();
    let alg = p.algebra().clone();
    let parts: Vec<Arc<Representation<F>>> =
        cover.vertices.iter().map(|&i| Arc::new(projective(&alg, i))).collect();
    let sum = Representation::direct_sum(&alg, &parts);
    let z = epi.domain();
    let maps: Vec<Morphism<F>> = cover
        .vertices
        .iter()
        .zip(&cover.generators)
        .zip(&parts)
        .map(|((&i, x), part)| {
            let e = epi.vertex_map(i);
            let rhs = Matrix::from_columns(e.rows(), &[x.clone()]);
            let pre = e.solve(&rhs).expect("epimorphism").column(0);
            morphism_from_projective(part, i, z, &pre)
        })
        .collect();
    sum.copair(&maps, z).retype(p.clone(), z.clone())
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution<F: Field> {
    pub module: Arc<Representation<F>>,
    /// `terms[k] = P_k`.
    pub terms: Vec<Arc<Representation<F>>>,
    /// Summand vertices of each `P_k`.
    pub summands: Vec<Vec<usize>>,
    /// `differentials[k-1]: P_k -> P_{k-1}` for `k >= 1`.
    pub differentials: Vec<Morphism<F>>,
    pub augmentation: Morphism<F>,
}

impl<F: Field> ProjectiveResolution<F> {
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
    }
}

pub fn default_length_bound<F: Field>(alg: &Algebra<F>) -> usize {
    alg.num_vertices() + 2
}

pub fn projective_resolution<F: Field>(m: &Arc<Representation<F>>, bound: usize) -> Result<ProjectiveResolution<F>> {
    let cover = projective_cover(m);
    let mut terms = vec![cover.map.domain().clone()];
    let mut summands = vec![cover.vertices.clone()];
    let mut differentials = Vec::new();
    let mut kernel = cover.map.kernel();
    while !kernel.domain().is_zero() {
        if terms.len() > bound {
            return Err(Error::BoundExceeded(format!(
                "projective resolution longer than {bound}; global dimension may be infinite"
            )));
        }
        let k = kernel.domain().clone();
        let c = projective_cover(&k);
        let d = kernel.compose(&c.map);
        terms.push(c.map.domain().clone());
        summands.push(c.vertices);
        kernel = c.map.kernel();
        differentials.push(d);
    }
    Ok(ProjectiveResolution { module: m.clone(), terms, summands, differentials, augmentation: cover.map })
}

/// Syzygy `Omega M` with its inclusion into the projective cover.
pub fn syzygy<F: Field>(m: &Arc<Representation<F>>) -> Morphism<F> {
    projective_cover(m).map.kernel()
}

/// Global dimension as the largest projective dimension of a simple module,
/// or `None` past the length bound.
pub fn global_dimension<F: Field>(alg: &Arc<Algebra<F>>) -> Option<usize> {
    *alg.gldim_cache.get_or_init(|| {
        let bound = default_length_bound(alg);
        let mut best = 0;
        for v in 0..alg.num_vertices() {
            let s = Arc::new(simple(alg, v));
            match projective_resolution(&s, bound) {
                Ok(r) => best = best.max(r.length()),
                Err(_) => return None,
            }
        }
        Some(best)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::field::Rational;

    fn a3rad2() -> Arc<Algebra<Rational>> {
        Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap())
    }

    #[test]
    fn standard_dims() {
        let a = a3rad2();
        assert_eq!(projective(&a, 0).dims(), &[1, 1, 0]);
        assert_eq!(projective(&a, 2).dims(), &[0, 0, 1]);
        assert_eq!(injective(&a, 1).dims(), &[1, 1, 0]);
        assert_eq!(injective(&a, 0).dims(), &[1, 0, 0]);
        assert_eq!(global_dimension(&a), Some(2));
    }

    #[test]
    fn resolution_of_simple() {
        let a = a3rad2();
        let s1 = Arc::new(simple(&a, 0));
        let r = projective_resolution(&s1, 5).unwrap();
        assert_eq!(r.length(), 2);
        assert_eq!(r.summands, vec![vec![0], vec![1], vec![2]]);
        for w in r.differentials.windows(2) {
            assert!(w[0].compose(&w[1]).is_zero());
        }
        let env = injective_envelope(&s1);
        assert!(env.map.is_mono());
        assert_eq!(env.vertices, vec![0]);
    }
}
