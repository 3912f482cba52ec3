#![no_main]

use liardom::build_udg;
use liardom::formats::{parse_points, write_points};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(points) = parse_points(text) else {
        return;
    };
    // Pairwise construction is quadratic.
    if points.len() > 512 {
        return;
    }
    if let Ok(inst) = build_udg(&points) {
        let again = build_udg(&parse_points(&write_points(&inst)).unwrap()).unwrap();
        assert_eq!(again, inst);
    }
});
