#![no_main]

use libfuzzer_sys::fuzz_target;
use sphtwist::picard::{parse_element, pic_equal, pic_invert, pic_multiply, pic_normal_form};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(el) = parse_element(2, text) else { return };
    let nf = pic_normal_form(&el).expect("normal form is total");
    // The canonical form is idempotent and printable.
    let again = pic_normal_form(&nf).expect("normal form is total");
    assert_eq!(nf, again);
    let reparsed = parse_element(2, &nf.to_string()).expect("display must reparse");
    assert!(pic_equal(&nf, &reparsed).expect("same k"));
    // x * x^-1 normalizes to the identity.
    let inv = pic_invert(&el).expect("inversion is total");
    let prod = pic_multiply(&el, &inv).expect("same k");
    assert!(prod.braid.is_identity());
    assert_eq!(prod.shift, 0);
});
