//! Test-side oracles shared by the integration tests.

#![allow(dead_code)]

pub mod intervals;
pub mod modules;
pub mod random;

use std::sync::Arc;

use dabelian::algebra::{Algebra, Quiver};
use dabelian::field::{Field, Rational};

pub fn linear_a(n: usize) -> Arc<Algebra<Rational>> {
    Arc::new(Algebra::path_algebra(Quiver::linear_a(n)).unwrap())
}

/// Linear `A_3` modulo the square of its radical.
pub fn a3_rad2() -> Arc<Algebra<Rational>> {
    Arc::new(Algebra::new(Quiver::linear_a(3), vec![vec![(Rational::one(), vec![0, 1])]]).unwrap())
}

pub fn kronecker() -> Arc<Algebra<Rational>> {
    let q = Quiver::new(&["1", "2"], &[("x", "1", "2"), ("y", "1", "2")]).unwrap();
    Arc::new(Algebra::path_algebra(q).unwrap())
}

/// Frozen oracle counts of wide subcategories: A2, linear A3, and the
/// 2-cluster tilting subcategory of A3 modulo the square of the radical.
pub const WIDE_A2: usize = 5;
pub const WIDE_A3: usize = 14;
pub const WIDE_A3_RAD2: usize = 8;
