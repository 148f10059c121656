//! Bounded complexes with homological grading, `d_j: X_j -> X_{j-1}`.
//!
//! `Sigma X` has `(Sigma X)_j = X_{j-1}` and differential `-d`. The cone of
//! `f: X -> Y` is `Y_j (+) X_{j-1}` with differential `[[d_Y, f], [0, -d_X]]`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{DirectSum, Morphism, Representation};
use crate::standard::{lift_cover, projective_cover};

#[derive(Clone)]
pub struct Complex<F: Field> {
    algebra: Arc<Algebra<F>>,
    low: i64,
    terms: Vec<Arc<Representation<F>>>,
    /// `diffs[k]` is `d_{low+k+1}: terms[k+1] -> terms[k]`.
    diffs: Vec<Morphism<F>>,
    zero: Arc<Representation<F>>,
}

impl<F: Field> PartialEq for Complex<F> {
    fn eq(&self, other: &Self) -> bool {
        self.low == other.low && self.terms == other.terms && self.diffs == other.diffs
    }
}

impl<F: Field> fmt::Debug for Complex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Complex");
        s.field("low", &self.low);
        s.field("dims", &self.terms.iter().map(|t| t.dims().to_vec()).collect::<Vec<_>>());
        s.finish()
    }
}

impl<F: Field> Complex<F> {
    /// Assembles a complex from terms in degrees `low, low+1, ...` and the
    /// differentials `d_{low+1}, d_{low+2}, ...`; checks `d d = 0`.
    pub fn new(
        algebra: Arc<Algebra<F>>,
        low: i64,
        terms: Vec<Arc<Representation<F>>>,
        diffs: Vec<Morphism<F>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) || (terms.is_empty() && !diffs.is_empty()) {
            return Err(Error::Invalid("a complex with k terms needs k-1 differentials".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.domain().dims() != terms[k + 1].dims() || d.codomain().dims() != terms[k].dims() {
                return Err(Error::Invalid(format!("differential {} has the wrong shape", low + k as i64 + 1)));
            }
            if !d.intertwines() {
                return Err(Error::Invalid("differential is not a module map".into()));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].compose(&w[1]).is_zero() {
                return Err(Error::Invalid("d d is not zero".into()));
            }
        }
        Ok(Self::assemble(algebra, low, terms, diffs))
    }

    /// Trims zero terms at both ends; differentials are retyped to the terms.
    fn assemble(
        algebra: Arc<Algebra<F>>,
        mut low: i64,
        mut terms: Vec<Arc<Representation<F>>>,
        mut diffs: Vec<Morphism<F>>,
    ) -> Self {
        while terms.last().is_some_and(|t| t.is_zero()) {
            terms.pop();
            diffs.pop();
        }
        let lead = terms.iter().take_while(|t| t.is_zero()).count();
        if lead == terms.len() {
            terms.clear();
            diffs.clear();
            low = 0;
        } else if lead > 0 {
            terms.drain(..lead);
            diffs.drain(..lead);
            low += lead as i64;
        }
        let diffs = diffs
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.retype(terms[k + 1].clone(), terms[k].clone()))
            .collect();
        let zero = Arc::new(Representation::zero(algebra.clone()));
        Complex { algebra, low, terms, diffs, zero }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        Self::assemble(algebra, 0, Vec::new(), Vec::new())
    }

    /// `M` concentrated in degree `j`.
    pub fn stalk(m: Arc<Representation<F>>, j: i64) -> Self {
        let alg = m.algebra().clone();
        Self::assemble(alg, j, vec![m], Vec::new())
    }

    /// Two-term complex `X_{j+1} --d--> X_j`.
    pub fn two_term(d: Morphism<F>, j: i64) -> Self {
        let alg = d.domain().algebra().clone();
        Self::assemble(alg, j, vec![d.codomain().clone(), d.domain().clone()], vec![d])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inclusive support `(lo, hi)`, or `None` for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.low, self.low + self.terms.len() as i64 - 1))
        }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match self.support() {
            Some((a, b)) => a..=b,
            None => 1..=0,
        }
    }

    pub fn term(&self, j: i64) -> &Arc<Representation<F>> {
        if j < self.low || j > self.high() || self.terms.is_empty() {
            &self.zero
        } else {
            &self.terms[(j - self.low) as usize]
        }
    }

    pub fn zero_module(&self) -> &Arc<Representation<F>> {
        &self.zero
    }

    /// `d_j: X_j -> X_{j-1}`.
    pub fn diff(&self, j: i64) -> Morphism<F> {
        if !self.terms.is_empty() && j > self.low && j <= self.high() {
            self.diffs[(j - self.low - 1) as usize].clone()
        } else {
            Morphism::zero(self.term(j).clone(), self.term(j - 1).clone())
        }
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.total_dim()).sum()
    }

    /// Dimension vectors per degree, lowest first.
    pub fn dim_table(&self) -> Vec<(i64, Vec<usize>)> {
        self.degrees().map(|j| (j, self.term(j).dims().to_vec())).collect()
    }

    /// `Sigma^k X`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 1 { F::one().neg() } else { F::one() };
        let diffs = self.diffs.iter().map(|d| d.scale(&sign)).collect();
        Self::assemble(self.algebra.clone(), self.low + k, self.terms.clone(), diffs)
    }

    pub fn direct_sum(alg: &Arc<Algebra<F>>, parts: &[Arc<Complex<F>>]) -> ComplexSum<F> {
        let alg = alg.clone();
        let lo = parts.iter().filter_map(|p| p.support()).map(|s| s.0).min();
        let hi = parts.iter().filter_map(|p| p.support()).map(|s| s.1).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            let zero = Arc::new(Complex::zero(alg));
            let inclusions = parts.iter().map(|p| ChainMap::zero(p.clone(), zero.clone())).collect();
            let projections = parts.iter().map(|p| ChainMap::zero(zero.clone(), p.clone())).collect();
            return ComplexSum { object: zero, inclusions, projections };
        };
        let sums: Vec<DirectSum<F>> = (lo..=hi)
            .map(|j| Representation::direct_sum(&alg, &parts.iter().map(|p| p.term(j).clone()).collect::<Vec<_>>()))
            .collect();
        let terms: Vec<Arc<Representation<F>>> = sums.iter().map(|s| s.object.clone()).collect();
        let diffs: Vec<Morphism<F>> = (lo + 1..=hi)
            .map(|j| {
                let (src, dst) = (&sums[(j - lo) as usize], &sums[(j - lo - 1) as usize]);
                let mut acc = Morphism::zero(src.object.clone(), dst.object.clone());
                for (k, p) in parts.iter().enumerate() {
                    acc = acc.add(&dst.inclusions[k].compose(&p.diff(j)).compose(&src.projections[k]));
                }
                acc
            })
            .collect();
        let object = Arc::new(Self::assemble(alg, lo, terms, diffs));
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let pa = p.clone();
            let inc = (lo..=hi).map(|j| sums[(j - lo) as usize].inclusions[k].clone()).collect();
            let proj = (lo..=hi).map(|j| sums[(j - lo) as usize].projections[k].clone()).collect();
            inclusions.push(ChainMap::from_components(pa.clone(), object.clone(), lo, inc));
            projections.push(ChainMap::from_components(object.clone(), pa, lo, proj));
        }
        ComplexSum { object, inclusions, projections }
    }

    /// Whether every term is projective (checked via covers).
    pub fn is_projective_complex(&self) -> bool {
        self.terms.iter().all(|t| projective_cover(t).map.is_iso())
    }

    pub fn homology(&self, j: i64) -> Homology<F> {
        let cycles = self.diff(j).kernel();
        let d = self.diff(j + 1);
        let z = cycles.domain().clone();
        let maps = (0..z.dims().len())
            .map(|v| cycles.vertex_map(v).solve(d.vertex_map(v)).expect("boundaries are cycles"))
            .collect();
        let boundary = Morphism::new_unchecked(self.term(j + 1).clone(), z, maps);
        let projection = boundary.cokernel();
        Homology { degree: j, cycles, projection }
    }

    pub fn homology_dims(&self, j: i64) -> Vec<usize> {
        self.homology(j).module().dims().to_vec()
    }

    /// Degrees with nonzero homology.
    pub fn homology_support(&self) -> Vec<i64> {
        self.degrees().filter(|&j| !self.homology(j).module().is_zero()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_support().is_empty()
    }

    /// Mapping cone with its canonical maps: `X -> Y -> C(f) -> Sigma X`.
    pub fn cone(f: &ChainMap<F>) -> Triangle<F> {
        let (x, y) = (f.domain().clone(), f.codomain().clone());
        let alg = x.algebra.clone();
        let ranges: Vec<(i64, i64)> = [y.support(), x.support().map(|(a, b)| (a + 1, b + 1))].into_iter().flatten().collect();
        let Some(lo) = ranges.iter().map(|r| r.0).min() else {
            let z = Arc::new(Complex::zero(alg));
            return Triangle {
                iota: ChainMap::zero(y.clone(), z.clone()),
                pi: ChainMap::zero(z.clone(), Arc::new(x.shift(1))),
                x,
                y,
                z,
                f: f.clone(),
            };
        };
        let hi = ranges.iter().map(|r| r.1).max().expect("nonempty");
        let sums: Vec<DirectSum<F>> = (lo..=hi)
            .map(|j| Representation::direct_sum(&alg, &[y.term(j).clone(), x.term(j - 1).clone()]))
            .collect();
        let at = |j: i64| &sums[(j - lo) as usize];
        let diffs: Vec<Morphism<F>> = (lo + 1..=hi)
            .map(|j| {
                let (s, t) = (at(j), at(j - 1));
                let dy = t.inclusions[0].compose(&y.diff(j)).compose(&s.projections[0]);
                let fx = t.inclusions[0].compose(&f.component(j - 1)).compose(&s.projections[1]);
                let dx = t.inclusions[1].compose(&x.diff(j - 1).neg()).compose(&s.projections[1]);
                dy.add(&fx).add(&dx)
            })
            .collect();
        let z = Arc::new(Self::assemble(alg, lo, sums.iter().map(|s| s.object.clone()).collect(), diffs));
        let sx = Arc::new(x.shift(1));
        let iota = ChainMap::from_components(y.clone(), z.clone(), lo, (lo..=hi).map(|j| at(j).inclusions[0].clone()).collect());
        let pi = ChainMap::from_components(z.clone(), sx, lo, (lo..=hi).map(|j| at(j).projections[1].clone()).collect());
        Triangle { x, y, z, f: f.clone(), iota, pi }
    }

    /// Fiber `F_j = X_j (+) Y_{j+1}` with `d(x, y) = (dx, f x - dy)`, and
    /// the maps `Sigma^{-1} Y -> F -> X`.
    pub fn fiber(f: &ChainMap<F>) -> Fiber<F> {
        let (x, y) = (f.domain().clone(), f.codomain().clone());
        let alg = x.algebra.clone();
        let ranges: Vec<(i64, i64)> = [x.support(), y.support().map(|(a, b)| (a - 1, b - 1))].into_iter().flatten().collect();
        let dy = Arc::new(y.shift(-1));
        let Some(lo) = ranges.iter().map(|r| r.0).min() else {
            let z = Arc::new(Complex::zero(alg));
            return Fiber { object: z.clone(), to_domain: ChainMap::zero(z.clone(), x), from_desuspension: ChainMap::zero(dy, z) };
        };
        let hi = ranges.iter().map(|r| r.1).max().expect("nonempty");
        let sums: Vec<DirectSum<F>> = (lo..=hi)
            .map(|j| Representation::direct_sum(&alg, &[x.term(j).clone(), y.term(j + 1).clone()]))
            .collect();
        let at = |j: i64| &sums[(j - lo) as usize];
        let diffs: Vec<Morphism<F>> = (lo + 1..=hi)
            .map(|j| {
                let (s, t) = (at(j), at(j - 1));
                let dx = t.inclusions[0].compose(&x.diff(j)).compose(&s.projections[0]);
                let fx = t.inclusions[1].compose(&f.component(j)).compose(&s.projections[0]);
                let dyy = t.inclusions[1].compose(&y.diff(j + 1).neg()).compose(&s.projections[1]);
                dx.add(&fx).add(&dyy)
            })
            .collect();
        let object = Arc::new(Self::assemble(alg, lo, sums.iter().map(|s| s.object.clone()).collect(), diffs));
        let to_domain =
            ChainMap::from_components(object.clone(), x, lo, (lo..=hi).map(|j| at(j).projections[0].clone()).collect());
        let from_desuspension =
            ChainMap::from_components(dy, object.clone(), lo, (lo..=hi).map(|j| at(j).inclusions[1].clone()).collect());
        Fiber { object, to_domain, from_desuspension }
    }

    /// Soft truncation `tau_{<= s}`: `coker d_{s+1}` in degree `s`, with the
    /// canonical map from `X`.
    pub fn soft_truncate_le(self: &Arc<Self>, s: i64) -> ChainMap<F> {
        if self.is_zero() || s >= self.high() {
            return ChainMap::identity(self.clone());
        }
        let alg = self.algebra.clone();
        if s < self.low {
            let z = Arc::new(Complex::zero(alg));
            return ChainMap::zero(self.clone(), z);
        }
        let q = self.diff(s + 1).cokernel();
        let mut terms: Vec<Arc<Representation<F>>> = (self.low..s).map(|j| self.term(j).clone()).collect();
        terms.push(q.codomain().clone());
        let mut diffs: Vec<Morphism<F>> = (self.low + 1..s).map(|j| self.diff(j)).collect();
        if s > self.low {
            // d_s factors through the cokernel.
            let ds = self.diff(s);
            diffs.push(q.extend_through(&ds).expect("d_s kills boundaries"));
        }
        let target = Arc::new(Self::assemble(alg, self.low, terms, diffs));
        let mut comps: Vec<Morphism<F>> = (self.low..s).map(|j| Morphism::identity(self.term(j).clone())).collect();
        comps.push(q);
        ChainMap::from_components(self.clone(), target, self.low, comps)
    }

    /// Soft truncation `tau_{>= i}`: cycles in degree `i`, with the canonical
    /// map into `X`.
    pub fn soft_truncate_ge(self: &Arc<Self>, i: i64) -> ChainMap<F> {
        if self.is_zero() || i <= self.low {
            return ChainMap::identity(self.clone());
        }
        let alg = self.algebra.clone();
        if i > self.high() {
            let z = Arc::new(Complex::zero(alg));
            return ChainMap::zero(z, self.clone());
        }
        let k = self.diff(i).kernel();
        let mut terms = vec![k.domain().clone()];
        terms.extend((i + 1..=self.high()).map(|j| self.term(j).clone()));
        let mut diffs = Vec::new();
        if i < self.high() {
            diffs.push(k.lift_through(&self.diff(i + 1)).expect("boundaries are cycles"));
        }
        diffs.extend((i + 2..=self.high()).map(|j| self.diff(j)));
        let source = Arc::new(Self::assemble(alg, i, terms, diffs));
        let mut comps = vec![k];
        comps.extend((i + 1..=self.high()).map(|j| Morphism::identity(self.term(j).clone())));
        ChainMap::from_components(source, self.clone(), i, comps)
    }
}

/// Degreewise biproduct of complexes.
#[derive(Clone, Debug)]
pub struct ComplexSum<F: Field> {
    pub object: Arc<Complex<F>>,
    pub inclusions: Vec<ChainMap<F>>,
    pub projections: Vec<ChainMap<F>>,
}

#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub degree: i64,
    /// `Z_j -> X_j`.
    pub cycles: Morphism<F>,
    /// `Z_j -> H_j`.
    pub projection: Morphism<F>,
}

impl<F: Field> Homology<F> {
    pub fn module(&self) -> &Arc<Representation<F>> {
        self.projection.codomain()
    }
}

#[derive(Clone, Debug)]
pub struct Triangle<F: Field> {
    pub x: Arc<Complex<F>>,
    pub y: Arc<Complex<F>>,
    pub z: Arc<Complex<F>>,
    pub f: ChainMap<F>,
    pub iota: ChainMap<F>,
    pub pi: ChainMap<F>,
}

#[derive(Clone, Debug)]
pub struct Fiber<F: Field> {
    pub object: Arc<Complex<F>>,
    pub to_domain: ChainMap<F>,
    pub from_desuspension: ChainMap<F>,
}

#[derive(Clone)]
pub struct ChainMap<F: Field> {
    domain: Arc<Complex<F>>,
    codomain: Arc<Complex<F>>,
    low: i64,
    comps: Vec<Morphism<F>>,
}

impl<F: Field> fmt::Debug for ChainMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .field("low", &self.low)
            .field("comps", &self.comps)
            .finish()
    }
}

impl<F: Field> ChainMap<F> {
    /// Components on the degrees `low, low+1, ...`; components outside the
    /// joint support are dropped, missing ones are zero.
    pub fn from_components(domain: Arc<Complex<F>>, codomain: Arc<Complex<F>>, low: i64, comps: Vec<Morphism<F>>) -> Self {
        let (lo, hi) = joint_range(&domain, &codomain);
        let comps = (lo..=hi)
            .map(|j| {
                let k = j - low;
                let (s, t) = (domain.term(j).clone(), codomain.term(j).clone());
                if k >= 0 && (k as usize) < comps.len() {
                    comps[k as usize].retype(s, t)
                } else {
                    Morphism::zero(s, t)
                }
            })
            .collect();
        let map = ChainMap { domain, codomain, low: lo, comps };
        debug_assert!(map.commutes(), "components do not commute with differentials");
        map
    }

    /// Checked constructor.
    pub fn new(domain: Arc<Complex<F>>, codomain: Arc<Complex<F>>, low: i64, comps: Vec<Morphism<F>>) -> Result<Self> {
        for (k, c) in comps.iter().enumerate() {
            let j = low + k as i64;
            if c.domain().dims() != domain.term(j).dims() || c.codomain().dims() != codomain.term(j).dims() {
                return Err(Error::Invalid(format!("chain map component {j} has the wrong shape")));
            }
            if !c.intertwines() {
                return Err(Error::Invalid(format!("chain map component {j} is not a module map")));
            }
        }
        let (lo, hi) = joint_range(&domain, &codomain);
        let comps = (lo..=hi)
            .map(|j| {
                let k = j - low;
                let (s, t) = (domain.term(j).clone(), codomain.term(j).clone());
                if k >= 0 && (k as usize) < comps.len() {
                    comps[k as usize].retype(s, t)
                } else {
                    Morphism::zero(s, t)
                }
            })
            .collect();
        let map = ChainMap { domain, codomain, low: lo, comps };
        if !map.commutes() {
            return Err(Error::Invalid("components do not commute with differentials".into()));
        }
        Ok(map)
    }

    pub fn identity(x: Arc<Complex<F>>) -> Self {
        let comps = x.degrees().map(|j| Morphism::identity(x.term(j).clone())).collect();
        ChainMap { low: x.low, domain: x.clone(), codomain: x, comps }
    }

    pub fn zero(domain: Arc<Complex<F>>, codomain: Arc<Complex<F>>) -> Self {
        Self::from_components(domain, codomain, 0, Vec::new())
    }

    pub fn domain(&self) -> &Arc<Complex<F>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Complex<F>> {
        &self.codomain
    }

    /// Inclusive range of possibly nonzero components.
    pub fn range(&self) -> (i64, i64) {
        (self.low, self.low + self.comps.len() as i64 - 1)
    }

    pub fn component(&self, j: i64) -> Morphism<F> {
        let k = j - self.low;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            Morphism::zero(self.domain.term(j).clone(), self.codomain.term(j).clone())
        }
    }

    pub fn components(&self) -> &[Morphism<F>] {
        &self.comps
    }

    pub fn commutes(&self) -> bool {
        let (lo, hi) = (self.domain.low.min(self.codomain.low), self.domain.high().max(self.codomain.high()));
        (lo..=hi + 1).all(|j| {
            let a = self.codomain.diff(j).compose(&self.component(j));
            let b = self.component(j - 1).compose(&self.domain.diff(j));
            a == b || a.sub(&b).is_zero()
        })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ChainMap<F>) -> ChainMap<F> {
        let (lo, hi) = joint_range(&other.domain, &self.codomain);
        let comps = (lo..=hi).map(|j| self.component(j).compose(&other.component(j))).collect();
        ChainMap { domain: other.domain.clone(), codomain: self.codomain.clone(), low: lo, comps }
    }

    fn zip_with(&self, other: &ChainMap<F>, op: impl Fn(&Morphism<F>, &Morphism<F>) -> Morphism<F>) -> ChainMap<F> {
        let (lo, hi) = joint_range(&self.domain, &self.codomain);
        let comps = (lo..=hi).map(|j| op(&self.component(j), &other.component(j))).collect();
        ChainMap { domain: self.domain.clone(), codomain: self.codomain.clone(), low: lo, comps }
    }

    pub fn add(&self, other: &ChainMap<F>) -> ChainMap<F> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ChainMap<F>) -> ChainMap<F> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &F) -> ChainMap<F> {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        ChainMap { domain: self.domain.clone(), codomain: self.codomain.clone(), low: self.low, comps }
    }

    pub fn neg(&self) -> ChainMap<F> {
        self.scale(&F::one().neg())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Morphism::is_zero)
    }

    /// `Sigma^k f` between the given shifted objects.
    pub fn shift_between(&self, k: i64, domain: Arc<Complex<F>>, codomain: Arc<Complex<F>>) -> ChainMap<F> {
        let comps = self.comps.clone();
        ChainMap::from_components(domain, codomain, self.low + k, comps)
    }

    pub fn shift(&self, k: i64) -> ChainMap<F> {
        self.shift_between(k, Arc::new(self.domain.shift(k)), Arc::new(self.codomain.shift(k)))
    }

    /// Same components reinterpreted between equal complexes.
    pub fn retype(&self, domain: Arc<Complex<F>>, codomain: Arc<Complex<F>>) -> ChainMap<F> {
        ChainMap::from_components(domain, codomain, self.low, self.comps.clone())
    }

    /// Induced map on homology in degree `j`, between the computed homologies.
    pub fn on_homology(&self, j: i64, source: &Homology<F>, target: &Homology<F>) -> Morphism<F> {
        let img = self.component(j).compose(&source.cycles);
        let into_cycles = target.cycles.lift_through(&img).expect("chain maps preserve cycles");
        let to_h = target.projection.compose(&into_cycles);
        source.projection.extend_through(&to_h).expect("chain maps preserve boundaries")
    }

    pub fn is_quasi_iso(&self) -> bool {
        Complex::cone(self).z.is_acyclic()
    }

    /// Coordinates of all components, concatenated.
    pub fn flatten(&self) -> Vec<F> {
        self.comps.iter().flat_map(|m| m.flatten()).collect()
    }
}

fn joint_range<F: Field>(x: &Complex<F>, y: &Complex<F>) -> (i64, i64) {
    match (x.support(), y.support()) {
        (Some(a), Some(b)) => {
            let lo = a.0.max(b.0);
            let hi = a.1.min(b.1);
            if lo <= hi {
                (lo, hi)
            } else {
                (0, -1)
            }
        }
        _ => (0, -1),
    }
}

/// Quasi-isomorphism `P -> X` from a bounded complex of projectives.
#[derive(Clone, Debug)]
pub struct Replacement<F: Field> {
    pub complex: Arc<Complex<F>>,
    pub quasi_iso: ChainMap<F>,
}

/// Projective replacement built upward from the lowest degree: each `P_j`
/// covers the cycles of the partial cone modulo the image of `X_{j+1}`.
pub fn projective_replacement<F: Field>(x: &Arc<Complex<F>>, extra_length: usize) -> Result<Replacement<F>> {
    let alg = x.algebra.clone();
    let Some((lo, hi)) = x.support() else {
        return Ok(Replacement { complex: x.clone(), quasi_iso: ChainMap::identity(x.clone()) });
    };
    let zero = x.zero.clone();
    let mut p_terms: Vec<Arc<Representation<F>>> = Vec::new();
    let mut p_diffs: Vec<Morphism<F>> = Vec::new();
    let mut q_comps: Vec<Morphism<F>> = Vec::new();
    let p_term = |terms: &Vec<Arc<Representation<F>>>, j: i64| -> Arc<Representation<F>> {
        if j < lo || j - lo >= terms.len() as i64 {
            zero.clone()
        } else {
            terms[(j - lo) as usize].clone()
        }
    };
    let limit = hi + extra_length as i64 + 1;
    let mut j = lo;
    loop {
        // Cone term C_j = X_j (+) P_{j-1} and its differential to C_{j-1}.
        let cj = Representation::direct_sum(&alg, &[x.term(j).clone(), p_term(&p_terms, j - 1)]);
        let cprev = Representation::direct_sum(&alg, &[x.term(j - 1).clone(), p_term(&p_terms, j - 2)]);
        let mut dc = cprev.inclusions[0].compose(&x.diff(j)).compose(&cj.projections[0]);
        if j - 1 >= lo {
            let k = (j - 1 - lo) as usize;
            dc = dc.add(&cprev.inclusions[0].compose(&q_comps[k]).compose(&cj.projections[1]));
            if k >= 1 {
                dc = dc.add(&cprev.inclusions[1].compose(&p_diffs[k - 1].neg()).compose(&cj.projections[1]));
            }
        }
        let z = dc.kernel();
        // Image of X_{j+1} inside Z_j.
        let from_x = cj.inclusions[0].compose(&x.diff(j + 1));
        let into_z = z.lift_through(&from_x).expect("image of X_{j+1} consists of cycles");
        let quotient = into_z.cokernel();
        if quotient.codomain().is_zero() && j >= hi {
            break;
        }
        if j > limit {
            return Err(Error::BoundExceeded(format!(
                "projective replacement longer than {} terms",
                limit - lo + 1
            )));
        }
        let cover = projective_cover(quotient.codomain());
        let lifted = lift_cover(&cover, &quotient);
        let into_c = z.compose(&lifted);
        q_comps.push(cj.projections[0].compose(&into_c));
        if j > lo {
            p_diffs.push(cj.projections[1].compose(&into_c).neg());
        }
        p_terms.push(cover.map.domain().clone());
        j += 1;
    }
    let complex = Arc::new(Complex::assemble(alg, lo, p_terms.clone(), p_diffs));
    let comps = q_comps
        .into_iter()
        .enumerate()
        .map(|(k, m)| m.retype(complex.term(lo + k as i64).clone(), x.term(lo + k as i64).clone()))
        .collect();
    let quasi_iso = ChainMap::from_components(complex.clone(), x.clone(), lo, comps);
    Ok(Replacement { complex, quasi_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::field::Rational;
    use crate::standard::{projective, simple};

    fn a2() -> Arc<Algebra<Rational>> {
        Arc::new(Algebra::path_algebra(Quiver::linear_a(2)).unwrap())
    }

    #[test]
    fn cone_of_inclusion_has_simple_homology() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0));
        let p2 = Arc::new(projective(&a, 1));
        let inc = crate::module::hom_space(&p2, &p1).pop().unwrap();
        let x = Arc::new(Complex::stalk(p2, 0));
        let y = Arc::new(Complex::stalk(p1, 0));
        let f = ChainMap::from_components(x, y, 0, vec![inc]);
        let t = Complex::cone(&f);
        assert_eq!(t.z.homology_support(), vec![0]);
        assert_eq!(t.z.homology_dims(0), vec![1, 0]);
        assert!(t.iota.commutes() && t.pi.commutes());
    }

    #[test]
    fn replacement_of_simple_stalk() {
        let a = a2();
        let s1 = Arc::new(simple(&a, 0));
        let x = Arc::new(Complex::stalk(s1, 0));
        let r = projective_replacement(&x, 3).unwrap();
        assert_eq!(r.complex.support(), Some((0, 1)));
        assert!(r.quasi_iso.is_quasi_iso());
        assert!(r.complex.is_projective_complex());
    }

    #[test]
    fn shift_round_trip() {
        let a = a2();
        let s1 = Arc::new(simple(&a, 0));
        let x = Arc::new(Complex::stalk(s1, 0));
        let r = projective_replacement(&x, 3).unwrap().complex;
        assert_eq!(r.shift(1).shift(-1), *r);
        assert_eq!(r.shift(3).homology_support(), vec![3]);
    }
}
