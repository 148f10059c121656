#![no_main]

use dabelian::io::AlgebraSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = AlgebraSpec::parse(text) else { return };
    // Serialization is canonical: one more round trip changes nothing.
    let out = spec.serialize();
    let again = AlgebraSpec::parse(&out).expect("serialized algebra parses");
    assert_eq!(again, spec);
    assert_eq!(again.serialize(), out);
});
