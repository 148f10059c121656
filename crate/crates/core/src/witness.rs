//! A concrete failure of axiom A2 in `C[0,m]` for a non-hereditary algebra.
//!
//! A nonzero Yoneda product of `gamma0: C0 -> Sigma C'` and
//! `gamma': C' -> Sigma C1` together with an injective envelope
//! `phi': C' -> I` gives the monic `psi = (phi'; gamma'): C' -> I (+) Sigma C1`.
//! In its d-cokernel, `Hom(Sigma^{m-1} C0, -)` is not exact at `Sigma^m C'`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::catalog::IndecomposableCatalog;
use crate::chain::{certify, d_cokernel, is_monic_in, NExactChain, TestRanks, Variance};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::ext_space;
use crate::homotopy::HomK;
use crate::matrix::Solver;
use crate::module::Representation;
use crate::octahedron::{octahedron, Octahedron};
use crate::standard::{global_dimension, injective_envelope};
use crate::window::{map_inducing, stalk_of, Window};

#[derive(Clone, Debug, Serialize)]
pub struct HereditaryWitness {
    pub m: usize,
    pub d: usize,
    pub c0: String,
    pub c_prime: String,
    pub c1: String,
    pub injective: String,
    pub c_double_prime: String,
    pub ext2_dim: usize,
    pub yoneda_nonzero: bool,
    pub phi_prime_monic: bool,
    pub psi_monic: bool,
    /// Homology dimension vectors of `X = cone(psi)` by degree.
    pub x_homology: Vec<(i64, Vec<usize>)>,
    pub octahedron_checks: Vec<(String, bool)>,
    /// `Sigma^{m-1} C0`.
    pub test_object: String,
    /// Index of `Sigma^m C'` in the d-cokernel.
    pub position: usize,
    pub ranks: TestRanks,
    /// `dim Hom(U, Sigma^m C') - rank (phi'' xi)_* - rank (Sigma^m phi')_*`.
    pub deficit: usize,
    /// `Sigma^{m-1} gamma0` lies outside the image of `(phi'' xi)_*`.
    pub gamma0_outside_image: bool,
}

impl HereditaryWitness {
    /// The data shows a violation of A2.
    pub fn violates(&self) -> bool {
        self.yoneda_nonzero && self.psi_monic && self.deficit > 0 && self.gamma0_outside_image
    }
}

/// All pieces of the witness, for callers that need the maps.
pub struct WitnessData<F: Field> {
    pub report: HereditaryWitness,
    pub window: Window<F>,
    pub psi: ChainMap<F>,
    pub octahedron: Octahedron<F>,
    pub cokernel: NExactChain<F>,
}

fn shifted<F: Field>(x: &Arc<Complex<F>>, k: i64) -> Arc<Complex<F>> {
    if k == 0 {
        x.clone()
    } else {
        Arc::new(x.shift(k))
    }
}

struct Triple<F: Field> {
    c0: usize,
    cp: usize,
    c1: usize,
    gamma0: ChainMap<F>,
    gamma_p: ChainMap<F>,
}

/// First catalog triple, simples first, with a nonzero Yoneda composite.
fn find_triple<F: Field>(w: &Window<F>, cat: &IndecomposableCatalog<F>) -> Result<Option<Triple<F>>> {
    let mut order: Vec<usize> = (0..cat.len()).collect();
    order.sort_by_key(|&i| (cat.modules[i].total_dim(), i));
    for &c0 in &order {
        for &c1 in &order {
            if ext_space(2, &cat.modules[c0], &cat.modules[c1])?.dim() == 0 {
                continue;
            }
            for &cp in &order {
                let hk0 = HomK::new(w.shifted_resolution(c0, 0), w.shifted_resolution(cp, 1));
                let hkp = HomK::new(w.shifted_resolution(cp, 0), w.shifted_resolution(c1, 1));
                if hk0.dim() == 0 || hkp.dim() == 0 {
                    continue;
                }
                let target = w.shifted_resolution(c1, 2);
                let into = HomK::new(w.shifted_resolution(c0, 0), target.clone());
                for g0 in hk0.basis() {
                    for gp in hkp.basis() {
                        let sgp = gp.shift_between(1, g0.codomain().clone(), target.clone());
                        if !into.is_null_homotopic(&sgp.compose(g0)) {
                            return Ok(Some(Triple { c0, cp, c1, gamma0: g0.clone(), gamma_p: gp.clone() }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn dims_label<F: Field>(m: &Representation<F>) -> String {
    let d: Vec<String> = m.dims().iter().map(|x| x.to_string()).collect();
    format!("M[{}]", d.join(","))
}

/// Searches the catalog for a witness and verifies every step. Refuses `m = 0`
/// and reports algebras of global dimension at most one as unsupported.
pub fn hereditary_failure_witness<F: Field>(
    alg: &Arc<Algebra<F>>,
    m: usize,
    cat: &IndecomposableCatalog<F>,
) -> Result<WitnessData<F>> {
    if m == 0 {
        return Err(Error::Invalid("the witness requires m >= 1".into()));
    }
    let gldim = global_dimension(alg).ok_or_else(|| Error::Unsupported("global dimension is infinite".into()))?;
    if gldim <= 1 {
        return Err(Error::Unsupported(format!("global dimension {gldim}: no nonzero 2-extension exists")));
    }
    let w = Window::hereditary(alg, m, Some(cat))?;
    let t = find_triple(&w, cat)?
        .ok_or_else(|| Error::Unsupported("no nonzero Yoneda composite among catalog modules".into()))?;
    let ext2_dim = ext_space(2, &cat.modules[t.c0], &cat.modules[t.c1])?.dim();

    // phi': C' -> I lifted to resolutions.
    let cp_mod = cat.modules[t.cp].clone();
    let env = injective_envelope(&cp_mod);
    let inj = env.map.codomain().clone();
    let (pc, hc, from_c) = stalk_of(&w, &cp_mod, 0)?;
    let (pi, hi, from_i) = stalk_of(&w, &inj, 0)?;
    let to_c = from_c.inverse().expect("isomorphism");
    let phi_p = map_inducing(&pc, &pi, 0, &hc, &hi, &from_i.compose(&env.map).compose(&to_c))
        .ok_or_else(|| Error::Invalid("the envelope does not lift to resolutions".into()))?;
    let pc = t.gamma_p.domain().clone();
    let phi_p = phi_p.retype(pc.clone(), pi.clone());
    let sc1 = t.gamma_p.codomain().clone();

    let sum = Complex::direct_sum(alg, &[pi.clone(), sc1.clone()]);
    let psi = sum.inclusions[0].compose(&phi_p).add(&sum.inclusions[1].compose(&t.gamma_p));
    let oct = octahedron(&psi, &sum.projections[0]);
    let x = oct.on_f.z.clone();
    let x_homology: Vec<(i64, Vec<usize>)> = x.homology_support().into_iter().map(|j| (j, x.homology_dims(j))).collect();
    let c2 = oct.on_gf.z.homology(0).module().clone();

    let phi_prime_monic = is_monic_in(&w, &phi_p)?;
    let psi_monic = is_monic_in(&w, &psi)?;
    let cokernel = d_cokernel(&w, &psi)?;
    let u_index = w.stalk_index(m - 1, t.c0);
    let u = &w.indecomposables()?[u_index];
    let position = 3 * m;
    let cov = certify(&w, &cokernel.objects, &cokernel.maps, Variance::Covariant)?;
    let ranks = cov.tests[u_index].clone();
    let dim = ranks.dims[position];
    let deficit = dim.saturating_sub(ranks.ranks[position - 1] + ranks.ranks[position]);

    // Sigma^{m-1} gamma0 against the image of Hom(U, Sigma^{m-1} X).
    let g0 = t
        .gamma0
        .shift_between(m as i64 - 1, u.complex.clone(), shifted(t.gamma0.codomain(), m as i64 - 1))
        .retype(u.complex.clone(), cokernel.objects[position].clone());
    let from = HomK::new(u.complex.clone(), cokernel.objects[position - 1].clone());
    let into = HomK::new(u.complex.clone(), cokernel.objects[position].clone());
    let image = from.postcompose_matrix(&cokernel.maps[position - 1], &into);
    let coords = into.coordinates(&g0);
    let gamma0_outside_image = if image.cols() == 0 {
        coords.iter().any(|c| !c.is_zero())
    } else {
        !Solver::new(&image).contains(&coords)
    };

    let report = HereditaryWitness {
        m,
        d: w.d,
        c0: cat.label(t.c0),
        c_prime: cat.label(t.cp),
        c1: cat.label(t.c1),
        injective: dims_label(&inj),
        c_double_prime: dims_label(&c2),
        ext2_dim,
        yoneda_nonzero: true,
        phi_prime_monic,
        psi_monic,
        x_homology,
        octahedron_checks: oct.checks.clone(),
        test_object: u.label.clone(),
        position,
        ranks,
        deficit,
        gamma0_outside_image,
    };
    Ok(WitnessData { report, window: w, psi, octahedron: oct, cokernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::{Field, Rational};

    fn rad2() -> Arc<Algebra<Rational>> {
        Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap())
    }

    #[test]
    fn a3_rad2_m1() {
        let a = rad2();
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let data = hereditary_failure_witness(&a, 1, &cat).unwrap();
        let r = &data.report;
        assert_eq!((r.c0.as_str(), r.c_prime.as_str(), r.c1.as_str()), ("M[1,0,0]", "M[0,1,0]", "M[0,0,1]"));
        assert_eq!(r.injective, "M[1,1,0]");
        assert_eq!(r.ext2_dim, 1);
        assert_eq!(r.x_homology, vec![(0, vec![1, 0, 0]), (1, vec![0, 0, 1])]);
        assert!(r.octahedron_checks.iter().all(|c| c.1), "{:?}", r.octahedron_checks);
        assert!(r.violates(), "{r:?}");
        assert!(r.deficit >= 1);
    }

    #[test]
    fn refusals() {
        let a = rad2();
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        assert!(matches!(hereditary_failure_witness(&a, 0, &cat), Err(Error::Invalid(_))));
        let a2 = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat2 = enumerate_indecomposables(&a2, DEFAULT_DIM_BOUND, 1).unwrap();
        assert!(matches!(hereditary_failure_witness(&a2, 1, &cat2), Err(Error::Unsupported(_))));
    }
}
