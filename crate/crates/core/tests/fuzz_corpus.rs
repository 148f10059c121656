//! Replays the checked-in fuzz seeds through the round-trip properties the
//! fuzz targets assert.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use dabelian::field::{Field, Rational};
use dabelian::io::{parse_algebra, parse_complex, parse_representation, serialize_complex, serialize_representation, AlgebraSpec};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn algebra_seeds_round_trip() {
    for (name, text) in seeds("algebra_file") {
        let spec = AlgebraSpec::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let out = spec.serialize();
        let again = AlgebraSpec::parse(&out).unwrap();
        assert_eq!(again, spec, "{name}");
        assert_eq!(again.serialize(), out, "{name}");
    }
}

#[test]
fn module_seeds_round_trip() {
    let alg = Arc::new(parse_algebra::<Rational>("[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n[relations]\nb*a\n").unwrap().1);
    for (name, text) in seeds("module_text") {
        let m = parse_representation(&alg, &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_representation(&alg, &serialize_representation(&m)).unwrap(), m, "{name}");
    }
}

#[test]
fn complex_seeds_round_trip() {
    let alg = Arc::new(parse_algebra::<Rational>("[quiver]\nvertices: 1 2 3\na: 1 -> 2\nb: 2 -> 3\n").unwrap().1);
    for (name, text) in seeds("complex_text") {
        let x = parse_complex(&alg, &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let out = serialize_complex(&x);
        let y = parse_complex(&alg, &out).unwrap();
        assert_eq!(y, x, "{name}");
        assert_eq!(serialize_complex(&y), out, "{name}");
    }
}

#[test]
fn scalar_seeds_round_trip() {
    for (name, text) in seeds("scalar") {
        let r = Rational::parse_scalar(&text).unwrap_or_else(|| panic!("{name}"));
        assert_eq!(Rational::parse_scalar(&r.to_string()), Some(r), "{name}");
    }
}
