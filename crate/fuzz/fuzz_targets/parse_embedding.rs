#![no_main]

use liardom::embedding::{decompose_steps, total_segments, validate_embedding};
use liardom::formats::{parse_embedding, write_embedding};
use liardom::reduction::{check_separation, reduce};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(emb) = parse_embedding(text) else {
        return;
    };
    assert_eq!(parse_embedding(&write_embedding(&emb)).as_ref(), Ok(&emb));
    if emb.vertex_pos.len() > 64 || emb.edge_paths.len() > 96 {
        return;
    }
    let Ok(g) = emb.graph() else { return };
    let Ok(violations) = validate_embedding(&g, &emb) else {
        return;
    };
    if !violations.is_empty() || emb.total_length() > 40 * 256 {
        return;
    }
    let dec = decompose_steps(&emb).expect("valid embeddings decompose");
    assert_eq!(total_segments(&dec) as i64 * 40, emb.total_length());
    if let Ok(red) = reduce(&g, &emb) {
        assert!(red.map.counts_hold());
        assert!(check_separation(&red.instance, &red.map).is_ok());
    }
});
