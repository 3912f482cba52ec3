#![no_main]

use liardom::formats::{parse_graph, write_graph};
use liardom::graph::liars_feasible;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph(text) else { return };
    assert_eq!(parse_graph(&write_graph(&g)).as_ref(), Ok(&g));
    let _ = liars_feasible(&g);
});
