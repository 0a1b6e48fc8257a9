#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::groups::{self, BraidFamily, GroupSpec, GroupWord};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(word) = text.parse::<GroupWord>() else { return };
    // Display round-trips through the parser.
    let reparsed: GroupWord = word.to_string().parse().expect("display must reparse");
    assert_eq!(reparsed, word);
    // Normal forms never panic and are idempotent on the canonical lift.
    for spec in [
        GroupSpec::Free(3),
        GroupSpec::Braid(BraidFamily::A2),
        GroupSpec::Braid(BraidFamily::B2),
        GroupSpec::Braid(BraidFamily::G2),
        GroupSpec::BraidModCenterPower(BraidFamily::G2, 3),
        GroupSpec::S3Z,
        GroupSpec::ZxZMod(2),
    ] {
        if let Ok(nf) = groups::normal_form(&word, spec) {
            let again = groups::normal_form(&nf.lift(), spec).expect("lift stays in range");
            assert_eq!(nf, again);
        }
    }
});
