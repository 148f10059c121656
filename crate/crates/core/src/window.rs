//! Windows `C[0,m]` (homology in degrees `0..=m`) and `T[0,m]`
//! (`add` of `Sigma^{jn} M` for `0 <= j <= m`) inside the bounded derived
//! category, with normal forms, truncations and approximations.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::catalog::IndecomposableCatalog;
use crate::complex::{projective_replacement, ChainMap, Complex, Homology};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{decompose, ext_space, find_isomorphism_indecomposable};
use crate::homotopy::{homotopy_inverse, solve_post, HomK};
use crate::matrix::{Matrix, Solver};
use crate::module::{Morphism, Representation};
use crate::standard::{global_dimension, projective_resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMode {
    /// `C[0,m]`; `d = 3m + 1`.
    Hereditary,
    /// `T[0,m]` for an `n`-cluster tilting module; `d = (n+2)(m+1) - 2`.
    ClusterTilting { n: usize },
}

/// An indecomposable of the window as a complex of projectives.
#[derive(Clone, Debug)]
pub struct WindowObject<F: Field> {
    pub complex: Arc<Complex<F>>,
    /// `(j, k)` for `Sigma^{jn}` of layer module `k`; `None` for objects with
    /// homology in several degrees.
    pub stalk: Option<(usize, usize)>,
    pub label: String,
    /// Homology in the stalk degree and the iso from the layer module onto it.
    cached: Option<(Homology<F>, Morphism<F>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member { degrees: Vec<i64> },
    Refused { reason: String },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Isomorphism `N -> X` from a sum of window stalks, with its inverse.
#[derive(Clone, Debug)]
pub struct StalkSumForm<F: Field> {
    /// Indices into the window's objects.
    pub parts: Vec<usize>,
    pub sum: Arc<Complex<F>>,
    pub inclusions: Vec<ChainMap<F>>,
    pub projections: Vec<ChainMap<F>>,
    /// `s: sum -> X`.
    pub s: ChainMap<F>,
    /// `r: X -> sum`, homotopy inverse to `s`.
    pub r: ChainMap<F>,
}

#[derive(Clone, Debug)]
pub struct Window<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub mode: WindowMode,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub gldim: usize,
    /// Indecomposables of the degree-0 layer.
    pub layer: Vec<Arc<Representation<F>>>,
    resolutions: Vec<Arc<Complex<F>>>,
    augmentations: Vec<Morphism<F>>,
    objects: Option<Vec<WindowObject<F>>>,
}

fn module_label<F: Field>(m: &Representation<F>) -> String {
    let d: Vec<String> = m.dims().iter().map(|x| x.to_string()).collect();
    format!("M[{}]", d.join(","))
}

fn shift_label(k: i64, inner: &str) -> String {
    match k {
        0 => inner.to_string(),
        1 => format!("S{inner}"),
        _ => format!("S^{k}{inner}"),
    }
}

/// Minimal projective resolution as a complex in degrees `0, 1, ...`, with
/// the augmentation `P_0 -> M`.
pub fn resolution_complex<F: Field>(m: &Arc<Representation<F>>, bound: usize) -> Result<(Arc<Complex<F>>, Morphism<F>)> {
    let alg = m.algebra().clone();
    if m.is_zero() {
        let z = Arc::new(Complex::zero(alg.clone()));
        return Ok((z, Morphism::zero(m.clone(), m.clone())));
    }
    let r = projective_resolution(m, bound)?;
    let c = Arc::new(Complex::new(alg, 0, r.terms.clone(), r.differentials.clone())?);
    let aug = r.augmentation.retype(c.term(0).clone(), m.clone());
    Ok((c, aug))
}

impl<F: Field> Window<F> {
    /// `C[0,m]`. Without a catalog the window has no test objects and only
    /// supports constructions.
    pub fn hereditary(alg: &Arc<Algebra<F>>, m: usize, catalog: Option<&IndecomposableCatalog<F>>) -> Result<Self> {
        let gldim = global_dimension(alg).ok_or_else(|| Error::Unsupported("global dimension is infinite".into()))?;
        let layer = catalog.map(|c| c.modules.clone()).unwrap_or_default();
        let mut w = Self::assemble(alg, WindowMode::Hereditary, m, 1, 3 * m + 1, gldim, layer)?;
        if catalog.is_some() {
            let mut objs = w.stalk_objects();
            objs.extend(w.extension_objects()?);
            w.objects = Some(objs);
        }
        Ok(w)
    }

    /// `T[0,m]` for the `n`-rigid module whose indecomposable summands are
    /// `summands`; requires `gldim = n`.
    pub fn cluster_tilting(alg: &Arc<Algebra<F>>, n: usize, m: usize, summands: Vec<Arc<Representation<F>>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        let gldim = global_dimension(alg).ok_or_else(|| Error::Unsupported("global dimension is infinite".into()))?;
        if gldim != n {
            return Err(Error::Invalid(format!("global dimension is {gldim}, not n = {n}")));
        }
        for a in &summands {
            for b in &summands {
                for i in 1..n {
                    if ext_space(i, a, b)?.dim() != 0 {
                        return Err(Error::Invalid(format!("Ext^{i} between summands of M is nonzero; M is not {n}-rigid")));
                    }
                }
            }
        }
        let d = (n + 2) * (m + 1) - 2;
        let mut w = Self::assemble(alg, WindowMode::ClusterTilting { n }, m, n, d, gldim, summands)?;
        w.objects = Some(w.stalk_objects());
        Ok(w)
    }

    fn assemble(
        alg: &Arc<Algebra<F>>,
        mode: WindowMode,
        m: usize,
        n: usize,
        d: usize,
        gldim: usize,
        layer: Vec<Arc<Representation<F>>>,
    ) -> Result<Self> {
        let mut resolutions = Vec::new();
        let mut augmentations = Vec::new();
        for a in &layer {
            let (c, aug) = resolution_complex(a, gldim + 1)?;
            resolutions.push(c);
            augmentations.push(aug);
        }
        Ok(Window { algebra: alg.clone(), mode, m, n, d, gldim, layer, resolutions, augmentations, objects: None })
    }

    /// Highest homological degree of the window.
    pub fn top(&self) -> i64 {
        (self.m * self.n) as i64
    }

    /// Slack for projective replacements.
    pub fn extra_length(&self) -> usize {
        self.gldim + 1
    }

    /// `Sigma^{k} P(A)` for layer module `idx`.
    pub fn shifted_resolution(&self, idx: usize, k: i64) -> Arc<Complex<F>> {
        if k == 0 {
            self.resolutions[idx].clone()
        } else {
            Arc::new(self.resolutions[idx].shift(k))
        }
    }

    fn stalk_object(&self, j: usize, k: usize) -> WindowObject<F> {
        let deg = (j * self.n) as i64;
        let complex = self.shifted_resolution(k, deg);
        let h = complex.homology(deg);
        let eps = self.augmentations[k].retype(complex.term(deg).clone(), self.layer[k].clone());
        let to_module = h.projection.extend_through(&eps.compose(&h.cycles)).expect("augmentation kills boundaries");
        let from_module = to_module.inverse().expect("resolution homology is the module");
        WindowObject {
            complex,
            stalk: Some((j, k)),
            label: shift_label(deg, &module_label(&self.layer[k])),
            cached: Some((h, from_module)),
        }
    }

    fn stalk_objects(&self) -> Vec<WindowObject<F>> {
        let mut out = Vec::new();
        for j in 0..=self.m {
            for k in 0..self.layer.len() {
                out.push(self.stalk_object(j, k));
            }
        }
        out
    }

    /// Objects `Sigma^{-1} cone(c)` for basis classes `c` of
    /// `Ext^2(A, B) = Hom(Sigma^j A, Sigma^{j+2} B)`: homology `A` in degree
    /// `j` and `B` in degree `j + 1`.
    fn extension_objects(&self) -> Result<Vec<WindowObject<F>>> {
        let mut out = Vec::new();
        if self.gldim < 2 || self.m == 0 {
            return Ok(out);
        }
        for a in 0..self.layer.len() {
            for b in 0..self.layer.len() {
                if ext_space(2, &self.layer[a], &self.layer[b])?.dim() == 0 {
                    continue;
                }
                for j in 0..self.m {
                    let src = self.shifted_resolution(a, j as i64);
                    let dst = self.shifted_resolution(b, j as i64 + 2);
                    let hk = HomK::new(src, dst);
                    for c in hk.basis() {
                        let cone = Complex::cone(c).z;
                        let complex = Arc::new(cone.shift(-1));
                        let label = format!(
                            "X({},{})@{}",
                            module_label(&self.layer[a]),
                            module_label(&self.layer[b]),
                            j
                        );
                        out.push(WindowObject { complex, stalk: None, label, cached: None });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Indecomposables of the window, or an error when no catalog was given.
    pub fn indecomposables(&self) -> Result<&[WindowObject<F>]> {
        self.objects
            .as_deref()
            .ok_or_else(|| Error::Unsupported("window without a finite list of indecomposables".into()))
    }

    /// Index of the stalk object `Sigma^{jn}` of layer module `k`.
    pub fn stalk_index(&self, j: usize, k: usize) -> usize {
        j * self.layer.len() + k
    }

    pub fn contains(&self, x: &Arc<Complex<F>>) -> Membership {
        let degrees = x.homology_support();
        for &j in &degrees {
            if j < 0 || j > self.top() {
                return Membership::Refused { reason: format!("homology in degree {j} outside 0..={}", self.top()) };
            }
            if let WindowMode::ClusterTilting { n } = self.mode {
                if j % n as i64 != 0 {
                    return Membership::Refused { reason: format!("homology in degree {j}, not a multiple of {n}") };
                }
                let h = x.homology(j).module().clone();
                let parts = match decompose(&h) {
                    Ok(p) => p,
                    Err(e) => return Membership::Refused { reason: e.to_string() },
                };
                for p in parts {
                    if !self.layer.iter().any(|l| find_isomorphism_indecomposable(l, &p.module).is_some()) {
                        return Membership::Refused {
                            reason: format!("summand {} of H_{j} is not in add M", module_label(&p.module)),
                        };
                    }
                }
            }
        }
        Membership::Member { degrees }
    }

    /// Decomposition of a projective complex of the window into window
    /// stalks; `None` for objects that are not sums of shifted modules.
    pub fn normal_form(&self, x: &Arc<Complex<F>>) -> Result<Option<StalkSumForm<F>>> {
        let objects = self.indecomposables()?;
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for j in x.homology_support() {
            if j < 0 || j > self.top() || j % self.n as i64 != 0 {
                return Ok(None);
            }
            let layer_j = (j / self.n as i64) as usize;
            let hx = x.homology(j);
            for s in decompose(hx.module())? {
                let Some((k, theta)) = self
                    .layer
                    .iter()
                    .enumerate()
                    .find_map(|(k, l)| find_isomorphism_indecomposable(l, &s.module).map(|t| (k, t)))
                else {
                    return Ok(None);
                };
                let idx = self.stalk_index(layer_j, k);
                let obj = &objects[idx];
                let (hu, from_module) = obj.cached.as_ref().expect("stalk objects cache their homology");
                let target = s.inclusion.compose(&theta).compose(&from_module.inverse().expect("iso"));
                let Some(f) = map_inducing(&obj.complex, x, j, hu, &hx, &target) else {
                    return Ok(None);
                };
                parts.push(idx);
                maps.push(f);
            }
        }
        let complexes: Vec<Arc<Complex<F>>> = parts.iter().map(|&i| objects[i].complex.clone()).collect();
        let sum = Complex::direct_sum(&self.algebra, &complexes);
        let mut s = ChainMap::zero(sum.object.clone(), x.clone());
        for (f, p) in maps.iter().zip(&sum.projections) {
            s = s.add(&f.compose(p));
        }
        let Some(r) = homotopy_inverse(&s) else {
            return Ok(None);
        };
        Ok(Some(StalkSumForm { parts, sum: sum.object, inclusions: sum.inclusions, projections: sum.projections, s, r }))
    }

    /// `tau_{<= s}` of a projective complex, replaced by projectives, with the
    /// canonical map from `x`.
    pub fn truncate_le(&self, x: &Arc<Complex<F>>, s: i64) -> Result<(Arc<Complex<F>>, ChainMap<F>)> {
        if x.is_zero() || x.homology_support().iter().all(|&j| j <= s) {
            return Ok((x.clone(), ChainMap::identity(x.clone())));
        }
        let soft = x.soft_truncate_le(s);
        let rep = projective_replacement(soft.codomain(), self.extra_length())?;
        let lifted = solve_post(&rep.quasi_iso, &soft).expect("projective sources lift through quasi-isomorphisms");
        Ok((rep.complex, lifted))
    }

    /// `tau_{>= i}` of a projective complex, replaced by projectives, with the
    /// canonical map into `x`.
    pub fn truncate_ge(&self, x: &Arc<Complex<F>>, i: i64) -> Result<(Arc<Complex<F>>, ChainMap<F>)> {
        if x.is_zero() || x.homology_support().iter().all(|&j| j >= i) {
            return Ok((x.clone(), ChainMap::identity(x.clone())));
        }
        let soft = x.soft_truncate_ge(i);
        let rep = projective_replacement(soft.domain(), self.extra_length())?;
        Ok((rep.complex, soft.compose(&rep.quasi_iso)))
    }

    /// `Sigma^{kn} P(M_i)` for all `k` with `kn` in `lo..=hi`.
    fn t_objects(&self, lo: i64, hi: i64) -> Vec<Arc<Complex<F>>> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for k in lo.div_euclid(n) - 1..=hi.div_euclid(n) + 1 {
            if k * n < lo || k * n > hi {
                continue;
            }
            for i in 0..self.layer.len() {
                out.push(self.shifted_resolution(i, k * n));
            }
        }
        out
    }

    /// Left `add Sigma^{nZ} M`-approximation `x -> t` spanned by Hom bases.
    pub fn left_approximation(&self, x: &Arc<Complex<F>>) -> ChainMap<F> {
        let supp = x.homology_support();
        let (Some(&a), Some(&b)) = (supp.first(), supp.last()) else {
            let z = Arc::new(Complex::zero(self.algebra.clone()));
            return ChainMap::zero(x.clone(), z);
        };
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for u in self.t_objects(a, b + self.gldim as i64) {
            let hk = HomK::new(x.clone(), u.clone());
            for c in hk.basis() {
                parts.push(u.clone());
                maps.push(c.clone());
            }
        }
        let sum = Complex::direct_sum(&self.algebra, &parts);
        let mut out = ChainMap::zero(x.clone(), sum.object.clone());
        for (c, inc) in maps.iter().zip(&sum.inclusions) {
            out = out.add(&inc.compose(c));
        }
        out
    }

    /// Right `add Sigma^{nZ} M`-approximation `t -> x` spanned by Hom bases.
    pub fn right_approximation(&self, x: &Arc<Complex<F>>) -> ChainMap<F> {
        let supp = x.homology_support();
        let (Some(&a), Some(&b)) = (supp.first(), supp.last()) else {
            let z = Arc::new(Complex::zero(self.algebra.clone()));
            return ChainMap::zero(z, x.clone());
        };
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for u in self.t_objects(a - self.gldim as i64, b) {
            let hk = HomK::new(u.clone(), x.clone());
            for c in hk.basis() {
                parts.push(u.clone());
                maps.push(c.clone());
            }
        }
        let sum = Complex::direct_sum(&self.algebra, &parts);
        let mut out = ChainMap::zero(sum.object.clone(), x.clone());
        for (c, proj) in maps.iter().zip(&sum.projections) {
            out = out.add(&c.compose(proj));
        }
        out
    }
}

/// `Sigma^deg P(M)` with its homology in degree `deg` and the iso from `M`.
pub(crate) fn stalk_of<F: Field>(w: &Window<F>, m: &Arc<Representation<F>>, deg: i64) -> Result<(Arc<Complex<F>>, Homology<F>, Morphism<F>)> {
    let (c, aug) = resolution_complex(m, w.gldim + 1)?;
    let c = if deg == 0 { c } else { Arc::new(c.shift(deg)) };
    let h = c.homology(deg);
    if m.is_zero() {
        let z = Morphism::zero(m.clone(), h.module().clone());
        return Ok((c, h, z));
    }
    let aug = aug.retype(c.term(deg).clone(), m.clone());
    let to_module = h.projection.extend_through(&aug.compose(&h.cycles)).expect("augmentation kills boundaries");
    Ok((c, h, to_module.inverse().expect("resolution homology is the module")))
}

/// A chain map `u -> x` whose map on `H_j` is `target`, if one exists.
pub(crate) fn map_inducing<F: Field>(
    u: &Arc<Complex<F>>,
    x: &Arc<Complex<F>>,
    j: i64,
    hu: &Homology<F>,
    hx: &Homology<F>,
    target: &Morphism<F>,
) -> Option<ChainMap<F>> {
    let hk = HomK::new(u.clone(), x.clone());
    let cols: Vec<Vec<F>> = hk.basis().iter().map(|c| c.on_homology(j, hu, hx).flatten()).collect();
    let want = target.flatten();
    if cols.is_empty() {
        return want.iter().all(F::is_zero).then(|| ChainMap::zero(u.clone(), x.clone()));
    }
    let mat = Matrix::from_columns(want.len(), &cols);
    let coeffs = Solver::new(&mat).solve(&want)?;
    Some(hk.combine(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
    use crate::field::Rational;
    use crate::module::hom_space;
    use crate::standard::projective;

    fn a2_window(m: usize) -> Window<Rational> {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let cat = enumerate_indecomposables(&a, DEFAULT_DIM_BOUND, 1).unwrap();
        Window::hereditary(&a, m, Some(&cat)).unwrap()
    }

    #[test]
    fn a2_window_objects() {
        let w = a2_window(1);
        assert_eq!(w.d, 4);
        assert_eq!(w.indecomposables().unwrap().len(), 6);
        let far = Arc::new(w.shifted_resolution(0, 2).as_ref().clone());
        assert!(!w.contains(&far).is_member());
    }

    #[test]
    fn two_term_complex_normal_form() {
        let w = a2_window(1);
        let a = w.algebra.clone();
        let p1 = Arc::new(projective(&a, 0));
        let p2 = Arc::new(projective(&a, 1));
        let inc = hom_space(&p2, &p1).pop().unwrap();
        let x = Arc::new(Complex::two_term(inc, 0));
        let nf = w.normal_form(&x).unwrap().unwrap();
        assert_eq!(nf.parts.len(), 1);
        let obj = &w.indecomposables().unwrap()[nf.parts[0]];
        assert_eq!(obj.stalk.map(|s| s.0), Some(0));
        assert_eq!(w.layer[obj.stalk.unwrap().1].dims(), &[1, 0]);
    }

    #[test]
    fn truncation_drops_top() {
        let w = a2_window(1);
        let x = w.shifted_resolution(0, 2);
        let (t, _) = w.truncate_le(&x, 1).unwrap();
        assert!(t.is_acyclic());
    }
}
