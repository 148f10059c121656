//! Wide subcategories of a 2-cluster tilting subcategory `add M` computed in
//! the module category: 2-cokernels by a cokernel followed by a minimal left
//! `add M`-approximation, 2-kernels dually, and 2-extensions by pushing out a
//! projective resolution along a cocycle.

use std::sync::Arc;

use dabelian::field::{Field, Rational};
use dabelian::homological::{decompose, ext_space, is_isomorphic, is_nilpotent};
use dabelian::matrix::Matrix;
use dabelian::module::{HomSpace, Morphism, Representation};

type Rep = Arc<Representation<Rational>>;
type Map = Morphism<Rational>;

pub struct AddM {
    pub members: Vec<Rep>,
}

#[derive(Clone, Debug)]
pub struct Probe {
    pub ends: u64,
    pub result: u64,
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn sum(parts: &[Rep]) -> dabelian::module::DirectSum<Rational> {
    let alg = parts[0].algebra().clone();
    Representation::direct_sum(&alg, parts)
}

impl AddM {
    pub fn label(&self, i: usize) -> String {
        let d: Vec<String> = self.members[i].dims().iter().map(|x| x.to_string()).collect();
        format!("M[{}]", d.join(","))
    }

    /// Member indices of the summands of `m`; panics outside `add M`.
    pub fn types(&self, m: &Rep) -> u64 {
        if m.is_zero() {
            return 0;
        }
        let mut mask = 0;
        for s in decompose(m).unwrap() {
            let i = self
                .members
                .iter()
                .position(|x| is_isomorphic(x, &s.module).unwrap())
                .unwrap_or_else(|| panic!("summand {:?} is not in add M", s.module.dims()));
            mask |= 1 << i;
        }
        mask
    }

    fn components_from(&self, c: &Rep) -> Vec<(Rep, Map)> {
        self.members.iter().flat_map(|m| HomSpace::new(c.clone(), m.clone()).basis.into_iter().map(move |g| (m.clone(), g))).collect()
    }

    fn components_into(&self, c: &Rep) -> Vec<(Rep, Map)> {
        self.members.iter().flat_map(|m| HomSpace::new(m.clone(), c.clone()).basis.into_iter().map(move |g| (m.clone(), g))).collect()
    }

    fn assemble_left(c: &Rep, comps: &[(Rep, Map)]) -> Map {
        if comps.is_empty() {
            let z = Arc::new(Representation::zero(c.algebra().clone()));
            return Map::zero(c.clone(), z);
        }
        let s = sum(&comps.iter().map(|x| x.0.clone()).collect::<Vec<_>>());
        s.pair(&comps.iter().map(|x| x.1.clone()).collect::<Vec<_>>(), c)
    }

    fn assemble_right(c: &Rep, comps: &[(Rep, Map)]) -> Map {
        if comps.is_empty() {
            let z = Arc::new(Representation::zero(c.algebra().clone()));
            return Map::zero(z, c.clone());
        }
        let s = sum(&comps.iter().map(|x| x.0.clone()).collect::<Vec<_>>());
        s.copair(&comps.iter().map(|x| x.1.clone()).collect::<Vec<_>>(), c)
    }

    fn is_left_approx(&self, c: &Rep, a: &Map) -> bool {
        self.components_from(c).iter().all(|(_, g)| a.extend_through(g).is_some())
    }

    fn is_right_approx(&self, c: &Rep, a: &Map) -> bool {
        self.components_into(c).iter().all(|(_, g)| a.lift_through(g).is_some())
    }

    /// Minimal left `add M`-approximation by dropping redundant components.
    pub fn left_approx(&self, c: &Rep) -> Map {
        let mut comps = self.components_from(c);
        for i in (0..comps.len()).rev() {
            let mut fewer = comps.clone();
            fewer.remove(i);
            if self.is_left_approx(c, &Self::assemble_left(c, &fewer)) {
                comps = fewer;
            }
        }
        let a = Self::assemble_left(c, &comps);
        assert!(left_minimal(&a), "approximation of {:?} is not left minimal", c.dims());
        a
    }

    pub fn right_approx(&self, c: &Rep) -> Map {
        let mut comps = self.components_into(c);
        for i in (0..comps.len()).rev() {
            let mut fewer = comps.clone();
            fewer.remove(i);
            if self.is_right_approx(c, &Self::assemble_right(c, &fewer)) {
                comps = fewer;
            }
        }
        let a = Self::assemble_right(c, &comps);
        assert!(left_minimal(&a.dual()), "approximation of {:?} is not right minimal", c.dims());
        a
    }

    /// Middle and last terms of the minimal 2-cokernel of `f`.
    pub fn cokernel_types(&self, f: &Map) -> u64 {
        let c1 = f.cokernel().codomain().clone();
        let a = self.left_approx(&c1);
        self.types(a.codomain()) | self.types(a.cokernel().codomain())
    }

    pub fn kernel_types(&self, f: &Map) -> u64 {
        let k1 = f.kernel().domain().clone();
        let a = self.right_approx(&k1);
        self.types(a.domain()) | self.types(a.kernel().domain())
    }

    /// Middle terms of the 2-exact sequences `0 -> x -> E1 -> E2 -> y -> 0`
    /// given by a basis of `Ext^2(y, x)` and, in dimension above one, the sum
    /// of the basis.
    pub fn extension_types(&self, y: &Rep, x: &Rep) -> Vec<u64> {
        let ext = ext_space(2, y, x).unwrap();
        if ext.cocycles.is_empty() {
            return Vec::new();
        }
        let mut cocycles = ext.cocycles.clone();
        if cocycles.len() > 1 {
            let total = cocycles.iter().skip(1).fold(cocycles[0].clone(), |acc, c| acc.add(c));
            cocycles.push(total);
        }
        let res = &ext.resolution;
        let (p0, p1) = (res.terms[0].clone(), res.terms[1].clone());
        let (d1, d2) = (&res.differentials[0], &res.differentials[1]);
        cocycles
            .iter()
            .map(|c| {
                let s = sum(&[x.clone(), p1.clone()]);
                let push = s.pair(&[c.clone(), d2.neg()], d2.domain());
                let q = push.cokernel();
                let e1 = q.codomain().clone();
                let into = q.compose(&s.inclusions[0]);
                let out = q.extend_through(&s.copair(&[Map::zero(x.clone(), p0.clone()), d1.clone()], &p0)).expect("d1 kills the pushout relation");
                assert!(into.is_mono(), "pushout along a cocycle is mono");
                assert!(!has_iso_component(&into) && !has_iso_component(&out), "nonminimal representative");
                self.types(&e1) | self.types(&p0)
            })
            .collect()
    }

    /// Kernel, cokernel and extension probes between members and two-term sums.
    pub fn probes(&self) -> Vec<Probe> {
        let n = self.members.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let hs = HomSpace::new(self.members[i].clone(), self.members[j].clone());
                let mut maps: Vec<Map> = hs.basis.clone();
                if hs.dim() > 1 {
                    maps.push(hs.combine(&(1..=hs.dim() as i64).map(q).collect::<Vec<_>>()));
                }
                maps.push(Map::zero(self.members[i].clone(), self.members[j].clone()));
                let ends = 1 << i | 1 << j;
                for f in &maps {
                    out.push(Probe { ends, result: self.cokernel_types(f) });
                    out.push(Probe { ends, result: self.kernel_types(f) });
                }
                for t in self.extension_types(&self.members[j], &self.members[i]) {
                    out.push(Probe { ends, result: t });
                }
            }
        }
        for x in 0..n {
            for a in 0..n {
                for b in a..n {
                    let (ma, mb, mx) = (&self.members[a], &self.members[b], &self.members[x]);
                    let (fa, fb) = (HomSpace::new(mx.clone(), ma.clone()), HomSpace::new(mx.clone(), mb.clone()));
                    let ends = 1 << x | 1 << a | 1 << b;
                    if fa.dim() > 0 && fb.dim() > 0 {
                        let s = sum(&[ma.clone(), mb.clone()]);
                        let f = s.pair(&[generic(&fa, 1), generic(&fb, 2)], mx);
                        out.push(Probe { ends, result: self.cokernel_types(&f) });
                        out.push(Probe { ends, result: self.kernel_types(&f) });
                    }
                    let (ga, gb) = (HomSpace::new(ma.clone(), mx.clone()), HomSpace::new(mb.clone(), mx.clone()));
                    if ga.dim() > 0 && gb.dim() > 0 {
                        let s = sum(&[ma.clone(), mb.clone()]);
                        let g = s.copair(&[generic(&ga, 1), generic(&gb, -1)], mx);
                        out.push(Probe { ends, result: self.cokernel_types(&g) });
                        out.push(Probe { ends, result: self.kernel_types(&g) });
                    }
                }
            }
        }
        out
    }

    /// Member subsets closed under every probe, as sorted label lists.
    pub fn wide_families(&self) -> Vec<Vec<String>> {
        let probes = self.probes();
        let n = self.members.len();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            if probes.iter().all(|p| p.ends & !mask != 0 || p.result & !mask == 0) {
                let mut labels: Vec<String> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| self.label(i)).collect();
                labels.sort();
                out.push(labels);
            }
        }
        out.sort();
        out
    }
}

fn generic(h: &HomSpace<Rational>, salt: i64) -> Map {
    let coeffs: Vec<Rational> = (0..h.dim() as i64).map(|k| q(k + salt + 2)).collect();
    h.combine(&coeffs)
}

/// Every endomorphism `psi` of the target with `psi a = 0` is nilpotent,
/// tested on the basis and on fixed combinations of it.
fn left_minimal(a: &Map) -> bool {
    let target = a.codomain().clone();
    if target.is_zero() {
        return true;
    }
    let end = HomSpace::new(target.clone(), target);
    let images: Vec<Vec<Rational>> = end.basis.iter().map(|p| p.compose(a).flatten()).collect();
    let rows = a.flatten().len();
    if images.is_empty() {
        return true;
    }
    let kernel = Matrix::from_columns(rows, &images).kernel();
    let mut candidates: Vec<Vec<Rational>> = kernel.columns();
    for salt in 1..4 {
        let mix = (0..kernel.rows())
            .map(|r| (0..kernel.cols()).fold(Rational::zero(), |acc, c| acc.add(&kernel.get(r, c).mul(&q((c as i64 + 1) * salt)))))
            .collect();
        candidates.push(mix);
    }
    candidates.iter().all(|c| is_nilpotent(&end.combine(c)))
}

/// Some component between indecomposable summands of domain and codomain is
/// an isomorphism.
fn has_iso_component(f: &Map) -> bool {
    let (src, dst) = (decompose(f.domain()).unwrap(), decompose(f.codomain()).unwrap());
    src.iter().any(|s| dst.iter().any(|t| t.projection.compose(f).compose(&s.inclusion).is_iso()))
}
