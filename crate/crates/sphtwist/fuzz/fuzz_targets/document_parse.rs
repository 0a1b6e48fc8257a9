#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::Document;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = Document::parse(text) else { return };
    // Canonical serialization is a fixed point of parse.
    let canon = doc.to_text();
    let reparsed = Document::parse(&canon).expect("canonical text must parse");
    assert_eq!(reparsed, doc);
    assert_eq!(reparsed.to_text(), canon);
});
