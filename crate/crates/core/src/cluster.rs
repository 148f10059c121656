//! `n`-cluster tilting modules `M = (+)_{j>=0} tau_n^j(DA)`.

use std::sync::Arc;

use serde::Serialize;

use crate::catalog::IndecomposableCatalog;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{decompose, ext_space, tau_n};
use crate::module::Representation;
use crate::standard::{global_dimension, injective};

#[derive(Clone, Debug)]
pub struct ClusterTilting<F: Field> {
    pub n: usize,
    /// Indecomposable summands of `M`, in catalog order.
    pub summands: Vec<Arc<Representation<F>>>,
    pub catalog_indices: Vec<usize>,
    pub certificate: RigidityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    /// `Ext^i(M, M) = 0` for `0 < i < n`.
    pub rigid: bool,
    /// Every catalog `X` with `Ext^i(X, M) = 0` for `0 < i < n` is in `add M`.
    pub maximal: bool,
    pub violations: Vec<String>,
}

impl RigidityCertificate {
    pub fn holds(&self) -> bool {
        self.rigid && self.maximal
    }
}

/// Iterates `tau_n` on the indecomposable injectives until zero and certifies
/// rigidity and maximality against the catalog.
pub fn cluster_tilting_module<F: Field>(cat: &IndecomposableCatalog<F>, n: usize) -> Result<ClusterTilting<F>> {
    let alg = &cat.algebra;
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let gldim = global_dimension(alg).ok_or_else(|| Error::Unsupported("global dimension is infinite".into()))?;
    if gldim != n {
        return Err(Error::Invalid(format!("global dimension is {gldim}, not n = {n}")));
    }
    let mut found: Vec<usize> = Vec::new();
    let mut frontier: Vec<Arc<Representation<F>>> = (0..alg.num_vertices()).map(|v| Arc::new(injective(alg, v))).collect();
    while let Some(x) = frontier.pop() {
        for s in decompose(&x)? {
            let k = cat
                .classify(&s.module)
                .ok_or_else(|| Error::Invalid("tau_n produced a module outside the catalog".into()))?;
            if found.contains(&k) {
                continue;
            }
            found.push(k);
            let next = Arc::new(tau_n(&s.module, n));
            if !next.is_zero() {
                frontier.push(next);
            }
        }
        if found.len() > cat.len() {
            return Err(Error::Unsupported("tau_n orbit does not terminate".into()));
        }
    }
    found.sort_unstable();
    let summands: Vec<Arc<Representation<F>>> = found.iter().map(|&k| cat.modules[k].clone()).collect();
    let mut violations = Vec::new();
    let mut rigid = true;
    for (ia, a) in found.iter().zip(&summands) {
        for (ib, b) in found.iter().zip(&summands) {
            for i in 1..n {
                if ext_space(i, a, b)?.dim() != 0 {
                    rigid = false;
                    violations.push(format!("Ext^{i}({}, {}) != 0", cat.label(*ia), cat.label(*ib)));
                }
            }
        }
    }
    let mut maximal = true;
    for k in 0..cat.len() {
        if found.contains(&k) {
            continue;
        }
        let mut orthogonal = true;
        'ext: for b in &summands {
            for i in 1..n {
                if ext_space(i, &cat.modules[k], b)?.dim() != 0 {
                    orthogonal = false;
                    break 'ext;
                }
            }
        }
        if orthogonal {
            maximal = false;
            violations.push(format!("{} is Ext-orthogonal to M but not in add M", cat.label(k)));
        }
    }
    Ok(ClusterTilting {
        n,
        summands,
        catalog_indices: found,
        certificate: RigidityCertificate { rigid, maximal, violations },
    })
}
