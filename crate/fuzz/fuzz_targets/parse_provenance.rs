#![no_main]

use liardom::formats::parse_provenance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_provenance(text) {
        for (_, origin) in &lines {
            let _ = origin.to_string();
        }
    }
});
