#![no_main]

use std::str::FromStr;

use frobtest_core::harness::Manifest;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = Manifest::from_str(text);
    }
});
