#![no_main]

use frobtest_core::{parse_polynomial, MonomialOrder, PolyRing};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = PolyRing::new(5, &["x", "y", "z", "x1"], MonomialOrder::Grevlex).unwrap();
    if let Ok(f) = parse_polynomial(text, &ring) {
        // printing is canonical
        let again = parse_polynomial(&f.to_string(), &ring).unwrap();
        assert_eq!(f, again);
    }
});
