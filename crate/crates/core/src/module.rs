//! Finite-dimensional representations, morphisms and the abelian structure.
//!
//! A left module is a covariant representation: an arrow `a: v -> w` acts by
//! a matrix `M_a` of shape `dim M_w x dim M_v`, on column vectors.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{invalid, Result};
use crate::field::Field;
use crate::matrix::{quotient_maps, Matrix, Solver};

#[derive(Clone)]
pub struct Representation<F: Field> {
    algebra: Arc<Algebra<F>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.maps == other.maps
    }
}

impl<F: Field> Eq for Representation<F> {}

impl<F: Field> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

pub fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Representation<F> {
    /// Validates shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let alg = algebra.clone();
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return invalid(format!("expected {} dimensions, got {}", q.num_vertices(), dims.len()));
        }
        if maps.len() != q.arrows().len() {
            return invalid(format!("expected {} arrow maps, got {}", q.arrows().len(), maps.len()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return invalid(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                ));
            }
        }
        let rep = Representation { algebra, dims, maps };
        for (k, rel) in rep.algebra.relations().iter().enumerate() {
            let (s, e) = q.word_endpoints(&rel[0].1)?;
            let mut acc = Matrix::zeros(rep.dims[e], rep.dims[s]);
            for (c, w) in rel {
                acc = acc.add(&rep.word_matrix(w, s).scale(c));
            }
            if !acc.is_zero() {
                return invalid(format!("relation {} does not act as zero", k + 1));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        let rep = Representation { algebra, dims, maps };
        debug_assert!(Self::new(rep.algebra.clone(), rep.dims.clone(), rep.maps.clone()).is_ok());
        rep
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let dims = vec![0; algebra.num_vertices()];
        let maps = vec![Matrix::zeros(0, 0); algebra.num_arrows()];
        Representation { algebra, dims, maps }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }

    /// Action of a traversal-order word starting at `start`.
    pub fn word_matrix(&self, word: &[usize], start: usize) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dims[start]);
        for &a in word {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Action of the basis path `p`, from `M_start` to `M_end`.
    pub fn path_matrix(&self, p: usize) -> Matrix<F> {
        let path = self.algebra.path(p);
        self.word_matrix(&path.arrows, path.start)
    }

    /// Offsets of each vertex inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Direct sum with its canonical inclusions and projections.
    pub fn direct_sum(algebra: &Arc<Algebra<F>>, parts: &[Arc<Representation<F>>]) -> DirectSum<F> {
        let n = algebra.num_vertices();
        let mut dims = vec![0; n];
        for p in parts {
            for v in 0..n {
                dims[v] += p.dims[v];
            }
        }
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.paste(r, c, &p.maps[ai]);
                    r += p.dims[a.target];
                    c += p.dims[a.source];
                }
                m
            })
            .collect();
        let object = Arc::new(Representation { algebra: algebra.clone(), dims, maps });
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut offs = vec![0; n];
        for p in parts {
            let mut inc = Vec::with_capacity(n);
            let mut proj = Vec::with_capacity(n);
            for v in 0..n {
                let mut i = Matrix::zeros(object.dims[v], p.dims[v]);
                let mut q = Matrix::zeros(p.dims[v], object.dims[v]);
                for k in 0..p.dims[v] {
                    i.set(offs[v] + k, k, F::one());
                    q.set(k, offs[v] + k, F::one());
                }
                inc.push(i);
                proj.push(q);
                offs[v] += p.dims[v];
            }
            inclusions.push(Morphism { domain: p.clone(), codomain: object.clone(), maps: inc });
            projections.push(Morphism { domain: object.clone(), codomain: p.clone(), maps: proj });
        }
        DirectSum { object, parts: parts.to_vec(), inclusions, projections }
    }

    /// Sub-representation spanned vertexwise by the columns of `spans`, which
    /// must be closed under the arrow actions.
    pub fn subrepresentation(self: &Arc<Self>, spans: &[Matrix<F>]) -> Morphism<F> {
        let bases: Vec<Matrix<F>> = spans.iter().map(|s| s.column_space()).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let img = self.maps[ai].mul(&bases[a.source]);
                bases[a.target].solve(&img).expect("span closed under arrows")
            })
            .collect();
        let dims = bases.iter().map(|b| b.cols()).collect();
        let sub = Arc::new(Representation { algebra: self.algebra.clone(), dims, maps });
        Morphism { domain: sub, codomain: self.clone(), maps: bases }
    }

    /// Quotient by the arrow-stable vertexwise subspaces `spans`, with the
    /// projection and a vertexwise linear section.
    pub fn quotient(self: &Arc<Self>, spans: &[Matrix<F>]) -> (Morphism<F>, Vec<Matrix<F>>) {
        let qs: Vec<(Matrix<F>, Matrix<F>)> =
            spans.iter().enumerate().map(|(v, s)| quotient_maps(self.dims[v], s)).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| qs[a.target].0.mul(&self.maps[ai]).mul(&qs[a.source].1))
            .collect();
        let dims = qs.iter().map(|(q, _)| q.rows()).collect();
        let quot = Arc::new(Representation { algebra: self.algebra.clone(), dims, maps });
        let proj = Morphism { domain: self.clone(), codomain: quot, maps: qs.iter().map(|(q, _)| q.clone()).collect() };
        (proj, qs.into_iter().map(|(_, s)| s).collect())
    }

    /// Vertexwise span of all arrow images.
    pub fn radical_spans(&self) -> Vec<Matrix<F>> {
        let q = self.algebra.quiver();
        (0..q.num_vertices())
            .map(|v| {
                let mut span = Matrix::zeros(self.dims[v], 0);
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.target == v {
                        span = span.hstack(&self.maps[ai]);
                    }
                }
                span.column_space()
            })
            .collect()
    }

    /// Vertexwise common kernel of all outgoing arrows.
    pub fn socle_spans(&self) -> Vec<Matrix<F>> {
        let q = self.algebra.quiver();
        (0..q.num_vertices())
            .map(|v| {
                let mut stack = Matrix::zeros(0, self.dims[v]);
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == v {
                        stack = stack.vstack(&self.maps[ai]);
                    }
                }
                stack.kernel()
            })
            .collect()
    }

    /// Vector-space dual, a representation of the opposite algebra.
    pub fn dual(&self) -> Representation<F> {
        let op = self.algebra.opposite_arc();
        let maps = self.maps.iter().map(|m| m.transpose()).collect();
        Representation { algebra: op, dims: self.dims.clone(), maps }
    }

    /// Image of the generator `x in M_i` under every path out of `i`.
    pub fn orbit_matrix(&self, i: usize, x: &[F], v: usize) -> Matrix<F> {
        let cols: Vec<Vec<F>> =
            self.algebra.paths_between(i, v).iter().map(|&p| self.path_matrix(p).mul_vec(x)).collect();
        Matrix::from_columns(self.dims[v], &cols)
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum<F: Field> {
    pub object: Arc<Representation<F>>,
    pub parts: Vec<Arc<Representation<F>>>,
    pub inclusions: Vec<Morphism<F>>,
    pub projections: Vec<Morphism<F>>,
}

impl<F: Field> DirectSum<F> {
    /// Map out of the sum assembled from one map per summand.
    pub fn copair(&self, maps: &[Morphism<F>], codomain: &Arc<Representation<F>>) -> Morphism<F> {
        let mut acc = Morphism::zero(self.object.clone(), codomain.clone());
        for (f, p) in maps.iter().zip(&self.projections) {
            acc = acc.add(&f.compose(p));
        }
        acc
    }

    /// Map into the sum assembled from one map per summand.
    pub fn pair(&self, maps: &[Morphism<F>], domain: &Arc<Representation<F>>) -> Morphism<F> {
        let mut acc = Morphism::zero(domain.clone(), self.object.clone());
        for (f, i) in maps.iter().zip(&self.inclusions) {
            acc = acc.add(&i.compose(f));
        }
        acc
    }
}

#[derive(Clone)]
pub struct Morphism<F: Field> {
    domain: Arc<Representation<F>>,
    codomain: Arc<Representation<F>>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for Morphism<F> {
    fn eq(&self, other: &Self) -> bool {
        self.maps == other.maps && self.domain == other.domain && self.codomain == other.codomain
    }
}

impl<F: Field> Eq for Morphism<F> {}

impl<F: Field> fmt::Debug for Morphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism")
            .field("from", &self.domain.dims)
            .field("to", &self.codomain.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl<F: Field> Morphism<F> {
    /// Validates shapes and the intertwining equations.
    pub fn new(domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if !same_algebra(&domain.algebra, &codomain.algebra) {
            return invalid("morphism between modules over different algebras");
        }
        let n = domain.dims.len();
        if maps.len() != n {
            return invalid("wrong number of vertex maps");
        }
        for v in 0..n {
            if maps[v].shape() != (codomain.dims[v], domain.dims[v]) {
                return invalid(format!("vertex map {} has the wrong shape", v + 1));
            }
        }
        let f = Morphism { domain, codomain, maps };
        if !f.intertwines() {
            return invalid("vertex maps do not commute with the arrows");
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>, maps: Vec<Matrix<F>>) -> Self {
        let f = Morphism { domain, codomain, maps };
        debug_assert!(f.intertwines(), "non-intertwining morphism");
        f
    }

    pub fn intertwines(&self) -> bool {
        self.domain.algebra.quiver().arrows().iter().enumerate().all(|(ai, a)| {
            self.codomain.maps[ai].mul(&self.maps[a.source]) == self.maps[a.target].mul(&self.domain.maps[ai])
        })
    }

    pub fn identity(m: Arc<Representation<F>>) -> Self {
        let maps = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        Morphism { domain: m.clone(), codomain: m, maps }
    }

    pub fn zero(domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>) -> Self {
        let maps = (0..domain.dims.len()).map(|v| Matrix::zeros(codomain.dims[v], domain.dims[v])).collect();
        Morphism { domain, codomain, maps }
    }

    pub fn domain(&self) -> &Arc<Representation<F>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Representation<F>> {
        &self.codomain
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn vertex_map(&self, v: usize) -> &Matrix<F> {
        &self.maps[v]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Morphism<F>) -> Morphism<F> {
        assert_eq!(other.codomain.dims, self.domain.dims, "composition of incompatible morphisms");
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect();
        Morphism { domain: other.domain.clone(), codomain: self.codomain.clone(), maps }
    }

    pub fn add(&self, other: &Morphism<F>) -> Morphism<F> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Morphism { domain: self.domain.clone(), codomain: self.codomain.clone(), maps }
    }

    pub fn sub(&self, other: &Morphism<F>) -> Morphism<F> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect();
        Morphism { domain: self.domain.clone(), codomain: self.codomain.clone(), maps }
    }

    pub fn scale(&self, c: &F) -> Morphism<F> {
        let maps = self.maps.iter().map(|a| a.scale(c)).collect();
        Morphism { domain: self.domain.clone(), codomain: self.codomain.clone(), maps }
    }

    pub fn neg(&self) -> Morphism<F> {
        self.scale(&F::one().neg())
    }

    /// Same vertex maps, reinterpreted between equal objects.
    pub fn retype(&self, domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>) -> Morphism<F> {
        debug_assert!(*domain == *self.domain && *codomain == *self.codomain);
        Morphism { domain, codomain, maps: self.maps.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(Matrix::rank).collect()
    }

    pub fn rank(&self) -> usize {
        self.ranks().iter().sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.domain.total_dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.codomain.total_dim()
    }

    pub fn is_iso(&self) -> bool {
        self.domain.dims == self.codomain.dims && self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism<F>> {
        let maps: Option<Vec<Matrix<F>>> = self.maps.iter().map(Matrix::inverse).collect();
        Some(Morphism { domain: self.codomain.clone(), codomain: self.domain.clone(), maps: maps? })
    }

    /// Coordinates of all vertex matrices, concatenated row-major.
    pub fn flatten(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    pub fn kernel(&self) -> Morphism<F> {
        let spans: Vec<Matrix<F>> = self.maps.iter().map(Matrix::kernel).collect();
        self.domain.subrepresentation(&spans)
    }

    pub fn cokernel(&self) -> Morphism<F> {
        let spans: Vec<Matrix<F>> = self.maps.iter().map(Matrix::column_space).collect();
        self.codomain.quotient(&spans).0
    }

    /// Epi-mono factorization `self = mono . epi` through the image.
    pub fn image(&self) -> (Morphism<F>, Morphism<F>) {
        let spans: Vec<Matrix<F>> = self.maps.iter().map(Matrix::column_space).collect();
        let mono = self.codomain.subrepresentation(&spans);
        let epi_maps = (0..self.maps.len())
            .map(|v| mono.maps[v].solve(&self.maps[v]).expect("image contains the map"))
            .collect();
        let epi = Morphism { domain: self.domain.clone(), codomain: mono.domain.clone(), maps: epi_maps };
        (epi, mono)
    }

    pub fn dual(&self) -> Morphism<F> {
        Morphism {
            domain: Arc::new(self.codomain.dual()),
            codomain: Arc::new(self.domain.dual()),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Dual between given duals (avoids rebuilding them).
    pub fn dual_between(&self, domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>) -> Morphism<F> {
        Morphism { domain, codomain, maps: self.maps.iter().map(Matrix::transpose).collect() }
    }

    /// Some `g` with `self . g = target`, when `target` factors through `self`.
    pub fn lift_through(&self, target: &Morphism<F>) -> Option<Morphism<F>> {
        let hom = HomSpace::new(target.domain.clone(), self.domain.clone());
        let images: Vec<Vec<F>> = hom.basis.iter().map(|g| self.compose(g).flatten()).collect();
        let system = Matrix::from_columns(target.flatten().len(), &images);
        let coeffs = system.solve(&Matrix::from_columns(system.rows(), &[target.flatten()]))?;
        Some(hom.combine(&coeffs.column(0)))
    }

    /// Some `g` with `g . self = target`, when `target` factors through `self`.
    pub fn extend_through(&self, target: &Morphism<F>) -> Option<Morphism<F>> {
        let hom = HomSpace::new(self.codomain.clone(), target.codomain.clone());
        let images: Vec<Vec<F>> = hom.basis.iter().map(|g| g.compose(self).flatten()).collect();
        let system = Matrix::from_columns(target.flatten().len(), &images);
        let coeffs = system.solve(&Matrix::from_columns(system.rows(), &[target.flatten()]))?;
        Some(hom.combine(&coeffs.column(0)))
    }
}

/// Exact basis of `Hom(M, N)` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub domain: Arc<Representation<F>>,
    pub codomain: Arc<Representation<F>>,
    pub basis: Vec<Morphism<F>>,
    solver: Solver<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn new(domain: Arc<Representation<F>>, codomain: Arc<Representation<F>>) -> Self {
        let alg = domain.algebra.clone();
        assert!(same_algebra(&alg, &codomain.algebra), "hom_space over different algebras");
        let n = alg.num_vertices();
        let (dm, dn) = (&domain.dims, &codomain.dims);
        let mut offset = vec![0; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + dn[v] * dm[v];
        }
        let unknowns = offset[n];
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let (v, w) = (a.source, a.target);
            let (ma, na) = (&domain.maps[ai], &codomain.maps[ai]);
            // (N_a X_v - X_w M_a)[r, c] = 0
            for r in 0..dn[w] {
                for c in 0..dm[v] {
                    let mut row = vec![F::zero(); unknowns];
                    for k in 0..dn[v] {
                        let x = na.get(r, k);
                        if !x.is_zero() {
                            let idx = offset[v] + k * dm[v] + c;
                            row[idx] = row[idx].add(x);
                        }
                    }
                    for k in 0..dm[w] {
                        let x = ma.get(k, c);
                        if !x.is_zero() {
                            let idx = offset[w] + r * dm[w] + k;
                            row[idx] = row[idx].sub(x);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            Matrix::identity(unknowns)
        } else {
            Matrix::from_rows(rows).kernel()
        };
        let basis: Vec<Morphism<F>> = kernel
            .columns()
            .into_iter()
            .map(|col| {
                let maps = (0..n)
                    .map(|v| Matrix::from_vec(dn[v], dm[v], col[offset[v]..offset[v + 1]].to_vec()))
                    .collect();
                Morphism { domain: domain.clone(), codomain: codomain.clone(), maps }
            })
            .collect();
        let solver = Solver::new(&kernel);
        HomSpace { domain, codomain, basis, solver }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis.
    pub fn coordinates(&self, f: &Morphism<F>) -> Vec<F> {
        self.solver.solve(&f.flatten()).expect("morphism lies in the hom space")
    }

    pub fn combine(&self, coeffs: &[F]) -> Morphism<F> {
        let mut acc = Morphism::zero(self.domain.clone(), self.codomain.clone());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Exact basis of `Hom(M, N)`.
pub fn hom_space<F: Field>(m: &Arc<Representation<F>>, n: &Arc<Representation<F>>) -> Vec<Morphism<F>> {
    HomSpace::new(m.clone(), n.clone()).basis
}

/// Left multiplication on an algebra element, as a sparse combination.
pub(crate) fn element_coefficient<F: Field>(e: &Element<F>, idx: usize) -> F {
    e.iter().find(|(i, _)| *i == idx).map_or_else(F::zero, |(_, c)| c.clone())
}
