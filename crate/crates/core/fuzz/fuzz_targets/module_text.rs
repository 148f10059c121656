#![no_main]

use std::sync::{Arc, OnceLock};

use dabelian::algebra::Algebra;
use dabelian::field::Rational;
use dabelian::io::{parse_algebra, parse_representation, serialize_representation};
use libfuzzer_sys::fuzz_target;

const RAD2: &str = "[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n[relations]\nb*a\n";

fn algebra() -> &'static Arc<Algebra<Rational>> {
    static A: OnceLock<Arc<Algebra<Rational>>> = OnceLock::new();
    A.get_or_init(|| Arc::new(parse_algebra(RAD2).expect("fixed algebra").1))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let alg = algebra();
    let Ok(m) = parse_representation(alg, text) else { return };
    let out = serialize_representation(&m);
    assert_eq!(parse_representation(alg, &out).expect("serialized module parses"), m);
});
