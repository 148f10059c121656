//! Wide subcategories of the degree-0 layer and repetitive wide subcategories
//! of a window, by brute force over subsets of indecomposables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::IndecomposableCatalog;
use crate::chain::{d_cokernel, d_kernel, extension_start, minimize, NExactChain, Pinned};
use crate::cluster::cluster_tilting_module;
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::HomK;
use crate::window::Window;

pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Kernel,
    Cokernel,
    Extension,
}

/// One closure condition: if `ends` lie in the family, so must `result`.
#[derive(Clone, Debug)]
pub struct ClosureTest {
    pub kind: ClosureKind,
    pub ends: u64,
    pub result: u64,
    pub description: String,
}

/// Closure conditions of a window, computed once on minimized chains.
#[derive(Clone, Debug)]
pub struct ClosureData {
    pub labels: Vec<String>,
    pub tests: Vec<ClosureTest>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WideFamily {
    pub indices: Vec<usize>,
    pub members: Vec<String>,
    pub kernels: bool,
    pub cokernels: bool,
    pub extensions: bool,
}

impl WideFamily {
    pub fn is_wide(&self) -> bool {
        self.kernels && self.cokernels && self.extensions
    }

    pub fn mask(&self) -> u64 {
        to_mask(&self.indices)
    }
}

/// `W` together with closure under all shifts `Sigma^{jn}`, `j` in `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftClosed {
    pub generators: Vec<usize>,
    pub shift_invariant: bool,
}

fn to_mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

fn from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1 << i) != 0).collect()
}

fn minimal_parts<F: Field>(w: &Window<F>, chain: &NExactChain<F>, pinned: Pinned) -> Result<Vec<Vec<usize>>> {
    minimize(w, chain, pinned)?
        .and_then(|c| c.parts)
        .ok_or_else(|| Error::Unsupported("a chain term has no stalk-sum normal form".into()))
}

fn union(parts: &[Vec<usize>]) -> u64 {
    parts.iter().fold(0, |m, p| m | to_mask(p))
}

fn nonzero_coeffs<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> Vec<F> {
    const CHOICES: [i64; 4] = [-2, -1, 1, 2];
    (0..n).map(|_| F::from_i64(CHOICES[rng.gen_range(0..4)])).collect()
}

struct Probe<F: Field> {
    ends: u64,
    map: ChainMap<F>,
    description: String,
}

/// Zero maps, Hom-basis maps and seeded generic combinations between
/// indecomposables, and generic maps into and out of two-term sums whose
/// components are all nonzero.
fn probes<F: Field>(w: &Window<F>, seed: u64) -> Result<Vec<Probe<F>>> {
    let objs = w.indecomposables()?;
    let n = objs.len();
    let hom: Vec<Vec<HomK<F>>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| HomK::new(objs[i].complex.clone(), objs[j].complex.clone())).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ends = to_mask(&[i, j]);
            let name = format!("{} -> {}", objs[i].label, objs[j].label);
            let hk = &hom[i][j];
            out.push(Probe { ends, map: ChainMap::zero(objs[i].complex.clone(), objs[j].complex.clone()), description: format!("zero {name}") });
            for (k, b) in hk.basis().iter().enumerate() {
                out.push(Probe { ends, map: b.clone(), description: format!("basis {k} of {name}") });
            }
            if hk.dim() > 1 {
                let c = nonzero_coeffs(&mut rng, hk.dim());
                out.push(Probe { ends, map: hk.combine(&c), description: format!("generic {name}") });
            }
        }
    }
    for x in 0..n {
        for y1 in 0..n {
            for y2 in y1..n {
                for into in [true, false] {
                    let (a, b) = if into { (&hom[x][y1], &hom[x][y2]) } else { (&hom[y1][x], &hom[y2][x]) };
                    if a.dim() == 0 || b.dim() == 0 {
                        continue;
                    }
                    let sum = Complex::direct_sum(&w.algebra, &[objs[y1].complex.clone(), objs[y2].complex.clone()]);
                    let (ca, cb) = (nonzero_coeffs(&mut rng, a.dim()), nonzero_coeffs(&mut rng, b.dim()));
                    let (fa, fb) = (a.combine(&ca), b.combine(&cb));
                    let label = format!("{} (+) {}", objs[y1].label, objs[y2].label);
                    let (map, description) = if into {
                        let m = sum.inclusions[0].compose(&fa).add(&sum.inclusions[1].compose(&fb));
                        (m, format!("generic {} -> {label}", objs[x].label))
                    } else {
                        let m = fa.compose(&sum.projections[0]).add(&fb.compose(&sum.projections[1]));
                        (m, format!("generic {label} -> {}", objs[x].label))
                    };
                    out.push(Probe { ends: to_mask(&[x, y1, y2]), map, description });
                }
            }
        }
    }
    Ok(out)
}

/// Basis classes `c: X -> Sigma^n Y` for `X`, `Y` in the degree-0 layer, each
/// turned into the monic first map of its d-extension.
fn extension_probes<F: Field>(w: &Window<F>) -> Result<Vec<Probe<F>>> {
    let objs = w.indecomposables()?;
    let n = w.n as i64;
    let mut out = Vec::new();
    for kx in 0..w.layer.len() {
        for ky in 0..w.layer.len() {
            let x = &objs[w.stalk_index(0, kx)];
            let y = &objs[w.stalk_index(0, ky)];
            let hk = HomK::new(x.complex.clone(), w.shifted_resolution(ky, n));
            for (k, c) in hk.basis().iter().enumerate() {
                out.push(Probe {
                    ends: 0,
                    map: extension_start(w, c, &y.complex),
                    description: format!("extension class {k} of {} by {}", x.label, y.label),
                });
            }
        }
    }
    Ok(out)
}

/// Computes all closure conditions of the window.
pub fn closure_data<F: Field>(w: &Window<F>, seed: u64) -> Result<ClosureData> {
    let objs = w.indecomposables()?;
    if objs.len() > 63 {
        return Err(Error::Unsupported(format!("{} indecomposables exceed the subset encoding", objs.len())));
    }
    let d = w.d;
    let maps = probes(w, seed)?;
    let morphism_tests: Vec<Vec<ClosureTest>> = maps
        .par_iter()
        .map(|p| -> Result<Vec<ClosureTest>> {
            let coker = minimal_parts(w, &d_cokernel(w, &p.map)?, Pinned::Head)?;
            let ker = minimal_parts(w, &d_kernel(w, &p.map)?, Pinned::Tail)?;
            Ok(vec![
                ClosureTest {
                    kind: ClosureKind::Cokernel,
                    ends: p.ends,
                    result: union(&coker[2..]),
                    description: p.description.clone(),
                },
                ClosureTest { kind: ClosureKind::Kernel, ends: p.ends, result: union(&ker[..d]), description: p.description.clone() },
            ])
        })
        .collect::<Result<_>>()?;
    let ext = extension_probes(w)?;
    let ext_tests: Vec<ClosureTest> = ext
        .par_iter()
        .map(|p| -> Result<ClosureTest> {
            let parts = minimal_parts(w, &d_cokernel(w, &p.map)?, Pinned::Ends)?;
            Ok(ClosureTest {
                kind: ClosureKind::Extension,
                ends: to_mask(&parts[0]) | to_mask(&parts[d + 1]),
                result: union(&parts[1..=d]),
                description: p.description.clone(),
            })
        })
        .collect::<Result<_>>()?;
    let mut tests: Vec<ClosureTest> = morphism_tests.into_iter().flatten().collect();
    tests.extend(ext_tests);
    Ok(ClosureData { labels: objs.iter().map(|o| o.label.clone()).collect(), tests })
}

/// Recomputes the closure flags of the family `mask`.
pub fn family(data: &ClosureData, mask: u64) -> WideFamily {
    let closed = |kind: ClosureKind| {
        data.tests
            .iter()
            .filter(|t| t.kind == kind && t.ends & !mask == 0)
            .all(|t| t.result & !mask == 0)
    };
    let indices = from_mask(mask);
    WideFamily {
        members: indices.iter().map(|&i| data.labels[i].clone()).collect(),
        indices,
        kernels: closed(ClosureKind::Kernel),
        cokernels: closed(ClosureKind::Cokernel),
        extensions: closed(ClosureKind::Extension),
    }
}

/// Wide families among all subsets of the window's indecomposables.
pub fn enumerate_wide(data: &ClosureData, budget: usize) -> Result<Vec<WideFamily>> {
    let n = data.labels.len();
    if n >= 63 || (1usize << n) > budget {
        return Err(Error::BoundExceeded(format!("2^{n} subsets exceed the budget of {budget}")));
    }
    let mut out: Vec<WideFamily> =
        (0..1u64 << n).into_par_iter().map(|m| family(data, m)).filter(WideFamily::is_wide).collect();
    out.sort_by_key(|f| (f.indices.len(), f.mask()));
    Ok(out)
}

/// `add(W, Sigma^n W, ..., Sigma^{mn} W)` as window indices, for `W` given by
/// layer indices.
pub fn repetitive<F: Field>(w: &Window<F>, layer_members: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> =
        (0..=w.m).flat_map(|j| layer_members.iter().map(move |&k| w.stalk_index(j, k))).collect();
    out.sort_unstable();
    out
}

pub fn bar(layer_members: &[usize]) -> ShiftClosed {
    let mut generators = layer_members.to_vec();
    generators.sort_unstable();
    ShiftClosed { generators, shift_invariant: true }
}

/// Layer indices `k` with `Sigma^0` of `k` in the window family.
pub fn degree_zero_part<F: Field>(w: &Window<F>, window_members: &[usize]) -> Vec<usize> {
    (0..w.layer.len()).filter(|&k| window_members.contains(&w.stalk_index(0, k))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// Every additive subcategory is functorially finite at catalog scale.
    pub functorially_finite_assumed: bool,
    pub layer: Vec<WideFamily>,
    pub repetitive: Vec<WideFamily>,
    pub nonrepetitive_wide: Vec<WideFamily>,
    /// `underline W` is wide in the window for every wide `W`.
    pub underline_wide: bool,
    /// Both composites of the two maps are identities.
    pub round_trip: bool,
    /// Flags recomputed after the round trip agree.
    pub flags_stable: bool,
    pub closure_tests: usize,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.underline_wide && self.round_trip && self.flags_stable && self.layer.len() == self.repetitive.len()
    }
}

/// Layer windows and the full windows used by the bijection check: the
/// hereditary module category for `n = 1`, `add M` for `n >= 2`.
pub fn bijection_windows<F: Field>(cat: &IndecomposableCatalog<F>, n: usize, m: usize) -> Result<(Window<F>, Window<F>)> {
    let alg = &cat.algebra;
    if n == 1 {
        let base = Window::hereditary(alg, 0, Some(cat))?;
        if base.gldim > 1 {
            return Err(Error::Unsupported(format!("n = 1 needs a hereditary algebra; global dimension is {}", base.gldim)));
        }
        return Ok((base, Window::hereditary(alg, m, Some(cat))?));
    }
    let ct = cluster_tilting_module(cat, n)?;
    if !ct.certificate.holds() {
        return Err(Error::Unsupported(format!("no {n}-cluster tilting module: {:?}", ct.certificate.violations)));
    }
    Ok((Window::cluster_tilting(alg, n, 0, ct.summands.clone())?, Window::cluster_tilting(alg, n, m, ct.summands)?))
}

/// Checks that `W -> underline W` and `X -> a_0 cap X` are inverse bijections
/// between wide subcategories of the layer and repetitive wide subcategories
/// of the window.
pub fn check_wide_bijection<F: Field>(cat: &IndecomposableCatalog<F>, n: usize, m: usize, seed: u64, budget: usize) -> Result<BijectionReport> {
    let (base, win) = bijection_windows(cat, n, m)?;
    let base_data = closure_data(&base, seed)?;
    let win_data = closure_data(&win, seed)?;
    let layer = enumerate_wide(&base_data, budget)?;
    let all_window = enumerate_wide(&win_data, budget)?;
    let is_repetitive = |f: &WideFamily| repetitive(&win, &degree_zero_part(&win, &f.indices)) == f.indices;
    let (reps, nonreps): (Vec<WideFamily>, Vec<WideFamily>) = all_window.into_iter().partition(|f| is_repetitive(f));
    let mut underline_wide = true;
    let mut round_trip = true;
    let mut flags_stable = true;
    for wfam in &layer {
        // Layer index k is the base window's object index.
        let layer_idx = wfam.indices.clone();
        let up = repetitive(&win, &layer_idx);
        let f = family(&win_data, to_mask(&up));
        underline_wide &= f.is_wide();
        round_trip &= degree_zero_part(&win, &up) == layer_idx && reps.iter().any(|r| r.indices == up);
        let back = family(&base_data, to_mask(&degree_zero_part(&win, &up)));
        flags_stable &= back == *wfam;
    }
    for r in &reps {
        let down = degree_zero_part(&win, &r.indices);
        let f = family(&base_data, to_mask(&down));
        round_trip &= f.is_wide() && repetitive(&win, &down) == r.indices;
        flags_stable &= family(&win_data, r.mask()) == *r;
    }
    Ok(BijectionReport {
        n,
        m,
        d: win.d,
        functorially_finite_assumed: true,
        layer,
        repetitive: reps,
        nonrepetitive_wide: nonreps,
        underline_wide,
        round_trip,
        flags_stable,
        closure_tests: base_data.tests.len() + win_data.tests.len(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::Rational;

    #[test]
    fn a2_bijection() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        let r = check_wide_bijection(&cat, 1, 1, 7, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(r.layer.len(), 5);
        assert_eq!(r.repetitive.len(), 5);
        assert!(r.holds(), "{r:#?}");
    }
}
