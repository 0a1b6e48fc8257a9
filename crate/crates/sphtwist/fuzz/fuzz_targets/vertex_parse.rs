#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::mesh::Vertex;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = text.parse::<Vertex>() else { return };
    let reparsed: Vertex = v.to_string().parse().expect("display must reparse");
    assert_eq!(reparsed, v);
});
