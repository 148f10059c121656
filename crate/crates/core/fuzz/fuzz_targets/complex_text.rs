#![no_main]

use std::sync::{Arc, OnceLock};

use dabelian::algebra::Algebra;
use dabelian::field::Rational;
use dabelian::io::{parse_algebra, parse_complex, serialize_complex};
use libfuzzer_sys::fuzz_target;

const A3: &str = "[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n";

fn algebra() -> &'static Arc<Algebra<Rational>> {
    static A: OnceLock<Arc<Algebra<Rational>>> = OnceLock::new();
    A.get_or_init(|| Arc::new(parse_algebra(A3).expect("fixed algebra").1))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let alg = algebra();
    let Ok(x) = parse_complex(alg, text) else { return };
    let out = serialize_complex(&x);
    let y = parse_complex(alg, &out).expect("serialized complex parses");
    assert_eq!(y, x);
    assert_eq!(serialize_complex(&y), out);
});
