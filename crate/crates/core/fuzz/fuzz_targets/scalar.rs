#![no_main]

use dabelian::field::{Field, Rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(r) = Rational::parse_scalar(text) {
        assert_eq!(Rational::parse_scalar(&r.to_string()), Some(r));
    }
});
