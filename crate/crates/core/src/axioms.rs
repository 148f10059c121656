//! Machine verification of the d-abelian axioms on a window by seeded sampling.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{certify, d_cokernel, d_kernel, is_epic_in, is_monic_in, Certificate, TestRanks, Variance};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::HomK;
use crate::idempotent::{random_idempotent, split_idempotent};
use crate::window::{Window, WindowMode};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Cap on Hom-basis morphisms; all are used when there are fewer.
    pub budget: usize,
    /// Seeded morphisms into and out of two-term direct sums.
    pub sums: usize,
    pub idempotents: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: 0, budget: 256, sums: 16, idempotents: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub description: String,
    /// Test objects at which an exactness condition fails.
    pub ranks: Vec<TestRanks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub status: Status,
    pub samples: usize,
    pub failures: Vec<Failure>,
}

impl AxiomResult {
    fn from_failures(samples: usize, failures: Vec<Failure>) -> Self {
        let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
        AxiomResult { status, samples, failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inventory {
    pub objects: usize,
    pub basis_morphisms: usize,
    pub sum_morphisms: usize,
    pub idempotents: usize,
    pub monic: usize,
    pub epic: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub version: u32,
    pub mode: String,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub budget: usize,
    pub inventory: Inventory,
    /// Keyed by `A0`, `A1`, `A2`, `A2op`.
    pub axioms: BTreeMap<String, AxiomResult>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.axioms.values().all(|a| a.status == Status::Pass)
    }

    pub fn axiom(&self, name: &str) -> &AxiomResult {
        &self.axioms[name]
    }
}

struct Sample<F: Field> {
    seed: u64,
    description: String,
    map: ChainMap<F>,
}

#[derive(Default)]
struct Outcome {
    a1: Vec<Failure>,
    a2: Option<Vec<Failure>>,
    a2op: Option<Vec<Failure>>,
}

fn failing(cert: &Certificate) -> Vec<TestRanks> {
    cert.tests.iter().filter(|t| !t.failures.is_empty()).cloned().collect()
}

fn failure(seed: u64, what: &str, sample: &str, cert: &Certificate) -> Failure {
    let mut description = format!("{what} of {sample}");
    if !cert.nonzero_composites.is_empty() {
        description.push_str(&format!("; nonzero composites at {:?}", cert.nonzero_composites));
    }
    Failure { seed, description, ranks: failing(cert) }
}

fn error_failure(seed: u64, what: &str, sample: &str, e: &Error) -> Failure {
    Failure { seed, description: format!("{what} of {sample}: {e}"), ranks: Vec::new() }
}

fn mix(seed: u64, k: u64) -> u64 {
    seed ^ (k.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn basis_samples<F: Field>(w: &Window<F>, cfg: &SamplerConfig) -> Result<Vec<Sample<F>>> {
    let objs = w.indecomposables()?;
    let pairs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|i| (0..objs.len()).map(move |j| (i, j))).collect();
    let per_pair: Vec<Vec<Sample<F>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let hk = HomK::new(objs[i].complex.clone(), objs[j].complex.clone());
            hk.basis()
                .iter()
                .enumerate()
                .map(|(k, b)| Sample {
                    seed: cfg.seed,
                    description: format!("basis {k} of Hom({}, {})", objs[i].label, objs[j].label),
                    map: b.clone(),
                })
                .collect()
        })
        .collect();
    let mut all: Vec<Sample<F>> = per_pair.into_iter().flatten().collect();
    if all.len() > cfg.budget {
        let mut idx: Vec<usize> = (0..all.len()).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
        idx.truncate(cfg.budget);
        idx.sort_unstable();
        let mut keep = vec![false; all.len()];
        for i in idx {
            keep[i] = true;
        }
        let mut it = keep.into_iter();
        all.retain(|_| it.next().unwrap_or(false));
    }
    Ok(all)
}

/// `X -> Y1 (+) Y2` for even `k`, `Y1 (+) Y2 -> X` for odd `k`, with
/// coefficients in `-2..=2` over the Hom basis.
fn sum_sample<F: Field>(w: &Window<F>, seed: u64, k: usize) -> Result<Sample<F>> {
    let objs = w.indecomposables()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = rng.gen_range(0..objs.len());
    let y1 = rng.gen_range(0..objs.len());
    let y2 = rng.gen_range(0..objs.len());
    let sum = Complex::direct_sum(&w.algebra, &[objs[y1].complex.clone(), objs[y2].complex.clone()]);
    let into = k % 2 == 0;
    let hk = if into {
        HomK::new(objs[x].complex.clone(), sum.object.clone())
    } else {
        HomK::new(sum.object.clone(), objs[x].complex.clone())
    };
    let coeffs: Vec<F> = (0..hk.dim()).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
    let sum_label = format!("{} (+) {}", objs[y1].label, objs[y2].label);
    let description = if into {
        format!("random map {} -> {sum_label}", objs[x].label)
    } else {
        format!("random map {sum_label} -> {}", objs[x].label)
    };
    Ok(Sample { seed, description, map: hk.combine(&coeffs) })
}

fn run_sample<F: Field>(w: &Window<F>, s: &Sample<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let coker = d_cokernel(w, &s.map);
    let ker = d_kernel(w, &s.map);
    match &coker {
        Ok(c) => {
            let cert = c.certificate.as_ref().expect("window has test objects");
            if !cert.holds() {
                out.a1.push(failure(s.seed, "d-cokernel", &s.description, cert));
            }
        }
        Err(e) => out.a1.push(error_failure(s.seed, "d-cokernel", &s.description, e)),
    }
    match &ker {
        Ok(c) => {
            let cert = c.certificate.as_ref().expect("window has test objects");
            if !cert.holds() {
                out.a1.push(failure(s.seed, "d-kernel", &s.description, cert));
            }
        }
        Err(e) => out.a1.push(error_failure(s.seed, "d-kernel", &s.description, e)),
    }
    if is_monic_in(w, &s.map)? {
        let mut f = Vec::new();
        if let Ok(c) = &coker {
            for v in [Variance::Contravariant, Variance::Covariant] {
                let cert = certify(w, &c.objects, &c.maps, v)?;
                if !cert.holds() {
                    f.push(failure(s.seed, &format!("{v:?} exactness of the d-cokernel"), &s.description, &cert));
                }
            }
        }
        out.a2 = Some(f);
    }
    if is_epic_in(w, &s.map)? {
        let mut f = Vec::new();
        if let Ok(c) = &ker {
            for v in [Variance::Contravariant, Variance::Covariant] {
                let cert = certify(w, &c.objects, &c.maps, v)?;
                if !cert.holds() {
                    f.push(failure(s.seed, &format!("{v:?} exactness of the d-kernel"), &s.description, &cert));
                }
            }
        }
        out.a2op = Some(f);
    }
    Ok(out)
}

fn idempotent_sample<F: Field>(w: &Window<F>, seed: u64) -> Result<Option<Failure>> {
    let objs = w.indecomposables()?;
    let stalks: Vec<usize> = (0..objs.len()).filter(|&i| objs[i].stalk.is_some()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(2..=3);
    let parts: Vec<usize> = (0..count).map(|_| stalks[rng.gen_range(0..stalks.len())]).collect();
    let keep: Vec<bool> = (0..count).map(|_| rng.gen_bool(0.5)).collect();
    let labels: Vec<&str> = parts.iter().map(|&p| objs[p].label.as_str()).collect();
    let description = format!("idempotent on {} keeping {keep:?}", labels.join(" (+) "));
    let (a, alpha) = random_idempotent(w, &parts, &keep, seed)?;
    Ok(match split_idempotent(w, &parts, &a, &alpha) {
        Ok(s) if s.holds() => None,
        Ok(s) => {
            let bad: Vec<&str> = s.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
            Some(Failure { seed, description: format!("{description}: {}", bad.join(", ")), ranks: Vec::new() })
        }
        Err(e) => Some(Failure { seed, description: format!("{description}: {e}"), ranks: Vec::new() }),
    })
}

/// Samples morphisms and idempotents of the window and checks A0, A1, A2 and
/// A2op. Windows without a finite list of indecomposables are refused.
pub fn check_axioms<F: Field>(w: &Window<F>, cfg: &SamplerConfig) -> Result<AxiomReport> {
    let objs = w.indecomposables()?;
    let mut samples = basis_samples(w, cfg)?;
    let basis_morphisms = samples.len();
    for k in 0..cfg.sums {
        samples.push(sum_sample(w, mix(cfg.seed, k as u64), k)?);
    }
    let outcomes: Vec<Outcome> = samples.par_iter().map(|s| run_sample(w, s)).collect::<Result<_>>()?;
    let idem_seeds: Vec<u64> = (0..cfg.idempotents).map(|k| mix(cfg.seed, (cfg.sums + k) as u64)).collect();
    let a0: Vec<Failure> = idem_seeds
        .par_iter()
        .map(|&s| idempotent_sample(w, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    let mut a2op = Vec::new();
    let (mut monic, mut epic) = (0, 0);
    for o in outcomes {
        a1.extend(o.a1);
        if let Some(f) = o.a2 {
            monic += 1;
            a2.extend(f);
        }
        if let Some(f) = o.a2op {
            epic += 1;
            a2op.extend(f);
        }
    }
    let mut axioms = BTreeMap::new();
    axioms.insert("A0".to_string(), AxiomResult::from_failures(cfg.idempotents, a0));
    axioms.insert("A1".to_string(), AxiomResult::from_failures(samples.len(), a1));
    axioms.insert("A2".to_string(), AxiomResult::from_failures(monic, a2));
    axioms.insert("A2op".to_string(), AxiomResult::from_failures(epic, a2op));
    let mode = match w.mode {
        WindowMode::Hereditary => "hereditary".to_string(),
        WindowMode::ClusterTilting { .. } => "cluster_tilting".to_string(),
    };
    Ok(AxiomReport {
        version: REPORT_VERSION,
        mode,
        m: w.m,
        n: w.n,
        d: w.d,
        seed: cfg.seed,
        budget: cfg.budget,
        inventory: Inventory {
            objects: objs.len(),
            basis_morphisms,
            sum_morphisms: cfg.sums,
            idempotents: cfg.idempotents,
            monic,
            epic,
        },
        axioms,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::{Field, Rational};

    #[test]
    fn a2_m0_is_abelian() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let w = Window::hereditary(&a, 0, Some(&cat)).unwrap();
        let r = check_axioms(&w, &SamplerConfig::default()).unwrap();
        assert_eq!(r.d, 1);
        assert!(r.passes(), "{r:#?}");
    }

    #[test]
    fn a3_rad2_hereditary_window_fails_a2() {
        let a = Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let w = Window::hereditary(&a, 1, Some(&cat)).unwrap();
        let r = check_axioms(&w, &SamplerConfig::default()).unwrap();
        assert_eq!(r.axiom("A2").status, Status::Fail);
    }

    #[test]
    fn a2_m1_is_four_abelian() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let w = Window::hereditary(&a, 1, Some(&cat)).unwrap();
        let r = check_axioms(&w, &SamplerConfig::default()).unwrap();
        assert_eq!(r.d, 4);
        assert!(r.passes(), "{r:#?}");
    }

    #[test]
    fn a3_rad2_ct_window_is_six_abelian() {
        let a = Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let ct = crate::cluster::cluster_tilting_module(&cat, 2).unwrap();
        let w = Window::cluster_tilting(&a, 2, 1, ct.summands).unwrap();
        let r = check_axioms(&w, &SamplerConfig::default()).unwrap();
        assert_eq!(r.d, 6);
        assert!(r.passes(), "{r:#?}");
    }
}
