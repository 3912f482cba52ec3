#![no_main]

use liardom::formats::{parse_solution, write_solution};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(set) = parse_solution(text) else {
        return;
    };
    assert_eq!(parse_solution(&write_solution(&set)).as_ref(), Ok(&set));
});
