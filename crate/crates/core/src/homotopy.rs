//! Morphisms in the derived category as homotopy classes of chain maps out of
//! bounded complexes of projectives.

use std::sync::Arc;

use crate::complex::{projective_replacement, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Solver};
use crate::module::{HomSpace, Morphism};

/// `Hom_K(P, Q)` for `P` a bounded complex of projectives: chain maps modulo
/// null-homotopic ones, solved as one linear system.
#[derive(Clone, Debug)]
pub struct HomK<F: Field> {
    pub source: Arc<Complex<F>>,
    pub target: Arc<Complex<F>>,
    low: i64,
    spaces: Vec<HomSpace<F>>,
    offsets: Vec<usize>,
    total: usize,
    n_null: usize,
    classes: Vec<ChainMap<F>>,
    solver: Solver<F>,
}

impl<F: Field> HomK<F> {
    pub fn new(source: Arc<Complex<F>>, target: Arc<Complex<F>>) -> Self {
        let (lo, hi) = match (source.support(), target.support()) {
            (Some(a), Some(b)) if a.0.max(b.0) <= a.1.min(b.1) => (a.0.max(b.0), a.1.min(b.1)),
            _ => (0, -1),
        };
        let spaces: Vec<HomSpace<F>> =
            (lo..=hi).map(|j| HomSpace::new(source.term(j).clone(), target.term(j).clone())).collect();
        let mut offsets = Vec::with_capacity(spaces.len() + 1);
        let mut total = 0;
        for s in &spaces {
            offsets.push(total);
            total += s.dim();
        }
        offsets.push(total);
        let at = |j: i64| -> Option<usize> { (j >= lo && j <= hi).then(|| (j - lo) as usize) };

        // Chain condition d_Q f_j - f_{j-1} d_P = 0 for every j.
        let mut blocks: Vec<Matrix<F>> = Vec::new();
        for j in lo..=hi + 1 {
            let (dq, dp) = (target.diff(j), source.diff(j));
            let height = source.term(j).dims().iter().zip(target.term(j - 1).dims()).map(|(a, b)| a * b).sum();
            if height == 0 {
                continue;
            }
            let mut block = Matrix::zeros(height, total);
            if let Some(k) = at(j) {
                for (b, f) in spaces[k].basis.iter().enumerate() {
                    let col = dq.compose(f).flatten();
                    for (r, v) in col.into_iter().enumerate() {
                        block.set(r, offsets[k] + b, v);
                    }
                }
            }
            if let Some(k) = at(j - 1) {
                for (b, f) in spaces[k].basis.iter().enumerate() {
                    let col = f.compose(&dp).flatten();
                    for (r, v) in col.into_iter().enumerate() {
                        let cur = block.get(r, offsets[k] + b).clone();
                        block.set(r, offsets[k] + b, cur.sub(&v));
                    }
                }
            }
            blocks.push(block);
        }
        let cycles = if blocks.is_empty() {
            Matrix::identity(total)
        } else {
            let mut sys = blocks[0].clone();
            for b in &blocks[1..] {
                sys = sys.vstack(b);
            }
            sys.kernel()
        };

        // Null-homotopic maps d h + h d for h_j: P_j -> Q_{j+1}.
        let mut null_cols: Vec<Vec<F>> = Vec::new();
        let s_lo = source.low().min(target.low() - 1);
        let s_hi = source.high().max(target.high() - 1);
        if !source.is_zero() && !target.is_zero() {
            for j in s_lo..=s_hi {
                let hs = HomSpace::new(source.term(j).clone(), target.term(j + 1).clone());
                for h in &hs.basis {
                    let mut col = vec![F::zero(); total];
                    if let Some(k) = at(j) {
                        let c = spaces[k].coordinates(&target.diff(j + 1).compose(h));
                        for (i, v) in c.into_iter().enumerate() {
                            col[offsets[k] + i] = v;
                        }
                    }
                    if let Some(k) = at(j + 1) {
                        let c = spaces[k].coordinates(&h.compose(&source.diff(j + 1)));
                        for (i, v) in c.into_iter().enumerate() {
                            col[offsets[k] + i] = col[offsets[k] + i].add(&v);
                        }
                    }
                    null_cols.push(col);
                }
            }
        }
        let null = Matrix::from_columns(total, &null_cols).column_space();
        let n_null = null.cols();
        let joint = null.hstack(&cycles);
        let chosen: Vec<Vec<F>> =
            joint.independent_columns().into_iter().filter(|&c| c >= n_null).map(|c| joint.column(c)).collect();
        let class_mat = Matrix::from_columns(total, &chosen);
        let solver = Solver::new(&null.hstack(&class_mat));
        let mut hk = HomK { source, target, low: lo, spaces, offsets, total, n_null, classes: Vec::new(), solver };
        hk.classes = chosen.iter().map(|c| hk.chain_map_from_coefficients(c)).collect();
        hk
    }

    fn chain_map_from_coefficients(&self, c: &[F]) -> ChainMap<F> {
        let comps: Vec<Morphism<F>> = self
            .spaces
            .iter()
            .enumerate()
            .map(|(k, s)| s.combine(&c[self.offsets[k]..self.offsets[k + 1]]))
            .collect();
        ChainMap::from_components(self.source.clone(), self.target.clone(), self.low, comps)
    }

    fn coefficients(&self, f: &ChainMap<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.total];
        for (k, s) in self.spaces.iter().enumerate() {
            let j = self.low + k as i64;
            let c = s.coordinates(&f.component(j));
            out[self.offsets[k]..self.offsets[k + 1]].clone_from_slice(&c);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Representatives of a basis of homotopy classes.
    pub fn basis(&self) -> &[ChainMap<F>] {
        &self.classes
    }

    /// Class coordinates of a chain map `source -> target`.
    pub fn coordinates(&self, f: &ChainMap<F>) -> Vec<F> {
        let x = self.solver.solve(&self.coefficients(f)).expect("chain map between the recorded complexes");
        x[self.n_null..].to_vec()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap<F>) -> bool {
        self.coordinates(f).iter().all(F::is_zero)
    }

    pub fn equal(&self, f: &ChainMap<F>, g: &ChainMap<F>) -> bool {
        self.is_null_homotopic(&f.sub(g))
    }

    pub fn combine(&self, coeffs: &[F]) -> ChainMap<F> {
        let mut acc = ChainMap::zero(self.source.clone(), self.target.clone());
        for (c, b) in coeffs.iter().zip(&self.classes) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Matrix of `f |-> g . f` from this space into `Hom_K(source, cod g)`.
    pub fn postcompose_matrix(&self, g: &ChainMap<F>, into: &HomK<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self.classes.iter().map(|c| into.coordinates(&g.compose(c))).collect();
        Matrix::from_columns(into.dim(), &cols)
    }

    /// Matrix of `f |-> f . s` from this space into `Hom_K(dom s, target)`.
    pub fn precompose_matrix(&self, s: &ChainMap<F>, into: &HomK<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self.classes.iter().map(|c| into.coordinates(&c.compose(s))).collect();
        Matrix::from_columns(into.dim(), &cols)
    }
}

/// `x: P -> A` with `g . x ~ target`, where `target: P -> B`.
pub fn solve_post<F: Field>(g: &ChainMap<F>, target: &ChainMap<F>) -> Option<ChainMap<F>> {
    let from = HomK::new(target.domain().clone(), g.domain().clone());
    let into = HomK::new(target.domain().clone(), g.codomain().clone());
    let m = from.postcompose_matrix(g, &into);
    let rhs = Matrix::from_columns(into.dim(), &[into.coordinates(target)]);
    let x = m.solve(&rhs)?;
    Some(from.combine(&x.column(0)))
}

/// `r: A -> C` with `r . s ~ target`, where `s: P -> A`, `target: P -> C`,
/// and `A` is a complex of projectives.
pub fn solve_pre<F: Field>(s: &ChainMap<F>, target: &ChainMap<F>) -> Option<ChainMap<F>> {
    let from = HomK::new(s.codomain().clone(), target.codomain().clone());
    let into = HomK::new(s.domain().clone(), target.codomain().clone());
    let m = from.precompose_matrix(s, &into);
    let rhs = Matrix::from_columns(into.dim(), &[into.coordinates(target)]);
    let x = m.solve(&rhs)?;
    Some(from.combine(&x.column(0)))
}

/// Homotopy inverse of a homotopy equivalence between projective complexes.
pub fn homotopy_inverse<F: Field>(s: &ChainMap<F>) -> Option<ChainMap<F>> {
    let id = ChainMap::identity(s.domain().clone());
    let r = solve_pre(s, &id)?;
    let back = HomK::new(s.codomain().clone(), s.codomain().clone());
    back.equal(&s.compose(&r), &ChainMap::identity(s.codomain().clone())).then_some(r)
}

/// `g f` as a class in the derived category; the middle objects must agree.
pub fn compose_derived<F: Field>(g: &ChainMap<F>, f: &ChainMap<F>) -> Result<ChainMap<F>> {
    if !Arc::ptr_eq(f.codomain(), g.domain()) && **f.codomain() != **g.domain() {
        return Err(Error::Invalid("composable maps must share the middle object".into()));
    }
    Ok(g.compose(&f.retype(f.domain().clone(), g.domain().clone())))
}

/// Derived Hom computed through a projective replacement of the source.
pub fn hom_derived<F: Field>(x: &Arc<Complex<F>>, y: &Arc<Complex<F>>, extra_length: usize) -> Result<HomK<F>> {
    let p = projective_replacement(x, extra_length)?;
    Ok(HomK::new(p.complex, y.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver};
    use crate::field::Rational;
    use crate::standard::simple;

    #[test]
    fn ext_as_derived_hom() {
        let a = Arc::new(Algebra::<Rational>::path_algebra(Quiver::linear_a(2)).unwrap());
        let s1 = Arc::new(Complex::stalk(Arc::new(simple(&a, 0)), 0));
        let s2 = Arc::new(Complex::stalk(Arc::new(simple(&a, 1)), 0));
        assert_eq!(hom_derived(&s1, &Arc::new(s2.shift(1)), 3).unwrap().dim(), 1);
        assert_eq!(hom_derived(&s1, &s2, 3).unwrap().dim(), 0);
        assert_eq!(hom_derived(&s1, &Arc::new(s2.shift(-1)), 3).unwrap().dim(), 0);
        assert_eq!(hom_derived(&s1, &s1, 3).unwrap().dim(), 1);
    }
}
