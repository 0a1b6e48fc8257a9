#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::picard::UnitElement;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(unit) = text.parse::<UnitElement>() else { return };
    let reparsed: UnitElement = unit.to_string().parse().expect("display must reparse");
    assert_eq!(reparsed, unit);
    // Group laws hold syntactically.
    let prod = unit.mul(&unit.inverse());
    assert!(prod.is_one());
});
