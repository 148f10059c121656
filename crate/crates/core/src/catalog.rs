//! Enumeration of indecomposable modules for representation-finite algebras.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{ar_translate, decompose, ext_space, find_isomorphism_indecomposable, tau_inverse};
use crate::module::{hom_space, HomSpace, Morphism, Representation};
use crate::standard::{injective, projective, simple};

pub const DEFAULT_DIM_BOUND: usize = 24;
const RANDOM_COKERNELS: usize = 24;

/// Pairwise non-isomorphic indecomposables with their Hom and Ext^1 tables.
#[derive(Clone, Debug)]
pub struct IndecomposableCatalog<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub modules: Vec<Arc<Representation<F>>>,
    /// `hom[i][j] = dim Hom(M_i, M_j)`.
    pub hom: Vec<Vec<usize>>,
    /// `ext1[i][j] = dim Ext^1(M_i, M_j)`.
    pub ext1: Vec<Vec<usize>>,
}

impl<F: Field> IndecomposableCatalog<F> {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Index of the catalog entry isomorphic to an indecomposable `m`.
    pub fn classify(&self, m: &Arc<Representation<F>>) -> Option<usize> {
        self.modules.iter().position(|c| find_isomorphism_indecomposable(c, m).is_some())
    }

    /// Multiset of catalog indices of the summands of `m`, sorted.
    pub fn classify_summands(&self, m: &Arc<Representation<F>>) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for s in decompose(m)? {
            let k = self
                .classify(&s.module)
                .ok_or_else(|| Error::Invalid(format!("summand with dimension vector {:?} is not catalogued", s.module.dims())))?;
            out.push(k);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Short label from the dimension vector, e.g. `M[1,1,0]`.
    pub fn label(&self, i: usize) -> String {
        let d: Vec<String> = self.modules[i].dims().iter().map(|x| x.to_string()).collect();
        format!("M[{}]", d.join(","))
    }
}

struct Collector<F: Field> {
    bound: usize,
    found: Vec<Arc<Representation<F>>>,
    queue: Vec<Arc<Representation<F>>>,
}

impl<F: Field> Collector<F> {
    fn offer(&mut self, m: &Arc<Representation<F>>) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        for s in decompose(m)? {
            let part = s.module;
            if part.total_dim() > self.bound {
                return Err(Error::Unsupported(format!(
                    "indecomposable of dimension {} exceeds the dimension bound {}; the algebra may not be representation-finite",
                    part.total_dim(),
                    self.bound
                )));
            }
            if self.found.iter().any(|c| find_isomorphism_indecomposable(c, &part).is_some()) {
                continue;
            }
            self.found.push(part.clone());
            self.queue.push(part);
        }
        Ok(())
    }
}

/// Closure of the standard modules under `tau`, `tau^-`, kernels and
/// cokernels of Hom-basis maps, and cokernels of seeded random maps between
/// sums of projectives.
pub fn enumerate_indecomposables<F: Field>(alg: &Arc<Algebra<F>>, dim_bound: usize, seed: u64) -> Result<IndecomposableCatalog<F>> {
    let n = alg.num_vertices();
    let mut col = Collector { bound: dim_bound, found: Vec::new(), queue: Vec::new() };
    for v in 0..n {
        col.offer(&Arc::new(projective(alg, v)))?;
        col.offer(&Arc::new(injective(alg, v)))?;
        col.offer(&Arc::new(simple(alg, v)))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_COKERNELS {
        let m = random_cokernel(alg, &mut rng);
        col.offer(&m)?;
    }
    let mut processed = 0;
    while let Some(m) = col.queue.pop() {
        col.offer(&Arc::new(ar_translate(&m)))?;
        col.offer(&Arc::new(tau_inverse(&m)))?;
        let others: Vec<Arc<Representation<F>>> = col.found.clone();
        for o in &others {
            for f in hom_space(&m, o).into_iter().chain(hom_space(o, &m)) {
                col.offer(f.kernel().domain())?;
                col.offer(f.cokernel().codomain())?;
            }
        }
        processed += 1;
        if processed > 10 * dim_bound * dim_bound.max(n) {
            return Err(Error::Unsupported("indecomposable enumeration did not close".into()));
        }
    }
    let mut modules = col.found;
    modules.sort_by(|a, b| a.total_dim().cmp(&b.total_dim()).then_with(|| b.dims().cmp(a.dims())));
    let hom = modules.iter().map(|a| modules.iter().map(|b| HomSpace::new(a.clone(), b.clone()).dim()).collect()).collect();
    let ext1 = modules
        .iter()
        .map(|a| modules.iter().map(|b| ext_space(1, a, b).map(|e| e.dim())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(IndecomposableCatalog { algebra: alg.clone(), modules, hom, ext1 })
}

/// Cokernel of a map with small random coefficients between two sums of at
/// most two projectives.
fn random_cokernel<F: Field>(alg: &Arc<Algebra<F>>, rng: &mut ChaCha8Rng) -> Arc<Representation<F>> {
    let n = alg.num_vertices();
    let pick = |rng: &mut ChaCha8Rng| -> Vec<Arc<Representation<F>>> {
        let k = rng.gen_range(1..=2);
        (0..k).map(|_| Arc::new(projective(alg, rng.gen_range(0..n)))).collect()
    };
    let src = Representation::direct_sum(alg, &pick(rng));
    let dst = Representation::direct_sum(alg, &pick(rng));
    let basis = hom_space(&src.object, &dst.object);
    let mut f = Morphism::zero(src.object.clone(), dst.object.clone());
    for b in &basis {
        let c = F::from_i64(rng.gen_range(-2..=2));
        f = f.add(&b.scale(&c));
    }
    f.cokernel().codomain().clone()
}

/// Random module built as a cokernel, for completeness tests.
pub fn random_module<F: Field>(alg: &Arc<Algebra<F>>, seed: u64) -> Arc<Representation<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cokernel(alg, &mut rng)
}

/// Positive roots of a Dynkin quiver: vectors `x` with `q(x) = 1`, searched
/// up to entry size 6.
pub fn count_positive_roots(quiver: &crate::algebra::Quiver) -> usize {
    let n = quiver.num_vertices();
    let mut count = 0;
    let mut x = vec![0usize; n];
    loop {
        let mut i = 0;
        while i < n {
            if x[i] < 6 {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        if quiver.euler_form(&x, &x) == 1 {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::field::Rational;

    #[test]
    fn a2_has_three() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let c = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(count_positive_roots(a.quiver()), 3);
    }

    #[test]
    fn kronecker_is_refused() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let a = Arc::new(Algebra::<Rational>::path_algebra(q).unwrap());
        assert!(matches!(enumerate_indecomposables(&a, 12, 1), Err(Error::Unsupported(_))));
    }
}
