//! The octahedron for composable chain maps, built from the explicit
//! comparison maps between the three cones.

use std::sync::Arc;

use crate::complex::{ChainMap, Complex, Triangle};
use crate::field::Field;
use crate::homotopy::HomK;
use crate::module::{Morphism, Representation};

#[derive(Clone, Debug)]
pub struct Octahedron<F: Field> {
    /// Triangles on `f`, `g` and `g f`.
    pub on_f: Triangle<F>,
    pub on_g: Triangle<F>,
    pub on_gf: Triangle<F>,
    /// `C(f) -> C(gf) -> C(g) -> Sigma C(f)`.
    pub u: ChainMap<F>,
    pub v: ChainMap<F>,
    pub w: ChainMap<F>,
    pub checks: Vec<(String, bool)>,
}

impl<F: Field> Octahedron<F> {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

fn equal<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> bool {
    HomK::new(f.domain().clone(), f.codomain().clone()).equal(f, g)
}

/// Block map between cone terms `A_j (+) B_{j-1} -> C_j (+) D_{j-1}` with
/// entries `[[p, q], [r, s]]` given per degree.
fn cone_block<F: Field>(
    src: &Arc<Complex<F>>,
    dst: &Arc<Complex<F>>,
    entry: impl Fn(i64, &Arc<Representation<F>>, &Arc<Representation<F>>) -> Morphism<F>,
) -> ChainMap<F> {
    let lo = src.low().min(dst.low());
    let hi = src.high().max(dst.high());
    let comps = (lo..=hi).map(|j| entry(j, src.term(j), dst.term(j))).collect();
    ChainMap::from_components(src.clone(), dst.clone(), lo, comps)
}

/// Octahedron on `f: X -> Y`, `g: Y -> Z` between projective complexes.
pub fn octahedron<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> Octahedron<F> {
    let gf = g.compose(f);
    let (x, y, z) = (f.domain().clone(), f.codomain().clone(), g.codomain().clone());
    let alg = x.algebra().clone();
    let on_f = Complex::cone(f);
    let on_g = Complex::cone(g);
    let on_gf = Complex::cone(&gf);
    let sum = |a: &Arc<Representation<F>>, b: &Arc<Representation<F>>| Representation::direct_sum(&alg, &[a.clone(), b.clone()]);
    // u(y, x) = (g y, x)
    let u = cone_block(&on_f.z, &on_gf.z, |j, s, t| {
        let (ds, dt) = (sum(y.term(j), x.term(j - 1)), sum(z.term(j), x.term(j - 1)));
        let m = dt.inclusions[0]
            .compose(&g.component(j))
            .compose(&ds.projections[0])
            .add(&dt.inclusions[1].compose(&ds.projections[1]));
        m.retype(s.clone(), t.clone())
    });
    // v(z, x) = (z, f x)
    let v = cone_block(&on_gf.z, &on_g.z, |j, s, t| {
        let (ds, dt) = (sum(z.term(j), x.term(j - 1)), sum(z.term(j), y.term(j - 1)));
        let m = dt.inclusions[0]
            .compose(&ds.projections[0])
            .add(&dt.inclusions[1].compose(&f.component(j - 1)).compose(&ds.projections[1]));
        m.retype(s.clone(), t.clone())
    });
    // w(z, y) = (y, 0)
    let scf = Arc::new(on_f.z.shift(1));
    let w = cone_block(&on_g.z, &scf, |j, s, t| {
        let (ds, dt) = (sum(z.term(j), y.term(j - 1)), sum(y.term(j - 1), x.term(j - 2)));
        dt.inclusions[0].compose(&ds.projections[1]).retype(s.clone(), t.clone())
    });
    let mut checks = vec![
        ("u, v, w are chain maps".to_string(), u.commutes() && v.commutes() && w.commutes()),
        ("u iota_f = iota_gf g".to_string(), equal(&u.compose(&on_f.iota), &on_gf.iota.compose(g))),
        ("pi_gf u = pi_f".to_string(), equal(&on_gf.pi.compose(&u), &on_f.pi.retype(on_f.z.clone(), on_gf.pi.codomain().clone()))),
        ("v iota_gf = iota_g".to_string(), equal(&v.compose(&on_gf.iota), &on_g.iota)),
        (
            "Sigma f pi_gf = pi_g v".to_string(),
            equal(&f.shift_between(1, on_gf.pi.codomain().clone(), on_g.pi.codomain().clone()).compose(&on_gf.pi), &on_g.pi.compose(&v)),
        ),
        (
            "w = Sigma iota_f pi_g".to_string(),
            equal(&w, &on_f.iota.shift_between(1, on_g.pi.codomain().clone(), scf.clone()).compose(&on_g.pi)),
        ),
    ];
    // The comparison from the cone of u onto C(g) is a quasi-isomorphism.
    let cu = Complex::cone(&u);
    let comparison = cone_block(&cu.z, &on_g.z, |j, s, t| {
        let outer = sum(on_gf.z.term(j), on_f.z.term(j - 1));
        let inner = sum(y.term(j - 1), x.term(j - 2));
        let dt = sum(z.term(j), y.term(j - 1));
        let part_v = v.component(j).retype(on_gf.z.term(j).clone(), t.clone()).compose(&outer.projections[0]);
        let y_part = dt.inclusions[1].compose(&inner.projections[0]).retype(on_f.z.term(j - 1).clone(), t.clone());
        part_v.add(&y_part.compose(&outer.projections[1])).retype(s.clone(), t.clone())
    });
    checks.push(("cone(u) -> C(g) is a chain map".to_string(), comparison.commutes()));
    checks.push(("cone(u) -> C(g) is a quasi-isomorphism".to_string(), comparison.commutes() && comparison.is_quasi_iso()));
    checks.push(("v u = 0".to_string(), HomK::new(on_f.z.clone(), on_g.z.clone()).is_null_homotopic(&v.compose(&u))));
    Octahedron { on_f, on_g, on_gf, u, v, w, checks }
}
