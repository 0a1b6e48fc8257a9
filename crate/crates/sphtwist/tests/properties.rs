//! Property tests for the parsing layers and the canonical-form invariants.

use proptest::prelude::*;

use sphtwist::groups::{self, BraidFamily, GroupSpec, GroupWord};
use sphtwist::mesh::{build_mesh, Diagram, Vertex, Window};
use sphtwist::picard::{self, PicardElement, UnitElement};
use sphtwist::Document;

fn word_strategy(generators: u8, max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((1..=generators, -3i64..=3), 0..max_len)
        .prop_map(|letters| GroupWord::from_letters(letters.into_iter().filter(|&(_, e)| e != 0)))
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        Just(GroupSpec::Free(2)),
        Just(GroupSpec::Braid(BraidFamily::A2)),
        Just(GroupSpec::Braid(BraidFamily::B2)),
        Just(GroupSpec::Braid(BraidFamily::G2)),
        (1u64..5).prop_map(|t| GroupSpec::BraidModCenterPower(BraidFamily::B2, t)),
        Just(GroupSpec::S3Z),
        (0u64..4).prop_map(GroupSpec::ZxZMod),
        Just(GroupSpec::AbelianRank2),
    ]
}

proptest! {
    #[test]
    fn word_display_parses_back(w in word_strategy(3, 8)) {
        let text = w.to_string();
        let parsed: GroupWord = text.parse().unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn normal_form_is_idempotent(w in word_strategy(2, 8), spec in spec_strategy()) {
        let nf = groups::normal_form(&w, spec).unwrap();
        let again = groups::normal_form(&nf.lift(), spec).unwrap();
        prop_assert_eq!(nf, again);
    }

    #[test]
    fn inverse_cancels(w in word_strategy(2, 8), spec in spec_strategy()) {
        let prod = w.mul(&w.inverse());
        prop_assert!(groups::normal_form(&prod, spec).unwrap().is_identity());
    }

    #[test]
    fn document_roundtrip(entries in prop::collection::vec(
        ("[a-z][a-z0-9_.]{0,8}", prop::collection::vec("[a-zA-Z0-9()^,*-]{1,6}", 0..4)),
        0..8,
    )) {
        let mut doc = Document::new();
        for (k, vs) in &entries {
            doc.push(k, vs.iter().cloned());
        }
        let text = doc.to_text();
        let parsed = Document::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn vertex_display_parses_back(row in -8i32..8, pos in -50i64..50) {
        let v = Vertex::new(row, pos);
        let parsed: Vertex = v.to_string().parse().unwrap();
        prop_assert_eq!(parsed, v);
    }

    #[test]
    fn mesh_serre_duality(x_row in 0i32..4, x_pos in -2i64..=2, y_row in 0i32..4, y_pos in -2i64..=2) {
        let model = build_mesh(Diagram::D4, Window::new(-9, 9)).unwrap();
        let x = Vertex::new(x_row, x_pos);
        let y = Vertex::new(y_row, y_pos);
        let lhs = model.hom_dim(x, y).unwrap();
        let rhs = model.hom_dim(y, model.serre(x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn picard_injective_on_center_free_words(w in word_strategy(2, 6)) {
        // w -> (w, 0, 0, +1) respects equality of braid classes exactly.
        let k = 2;
        let a = PicardElement::new(k, w.clone(), 0, 0, UnitElement::one()).unwrap();
        let nf = groups::normal_form(&w, GroupSpec::Braid(BraidFamily::G2)).unwrap();
        let na = picard::pic_normal_form(&a).unwrap();
        // The braid word round-trips through the canonical lift; shift and
        // Nakayama powers record the center exponent.
        prop_assert_eq!(na.shift, 5 * nf.center_exponent);
        let lifted_back = groups::normal_form(&na.braid, GroupSpec::Braid(BraidFamily::G2)).unwrap();
        prop_assert_eq!(lifted_back.center_exponent, 0);
        prop_assert_eq!(lifted_back.body, nf.body);
    }

    #[test]
    fn picard_product_against_components(
        u in word_strategy(2, 5),
        v in word_strategy(2, 5),
        s1 in -4i64..=4,
        s2 in -4i64..=4,
    ) {
        let k = 3;
        let a = PicardElement::new(k, u.clone(), s1, 0, UnitElement::one()).unwrap();
        let b = PicardElement::new(k, v.clone(), s2, 0, UnitElement::one()).unwrap();
        let ab = picard::pic_multiply(&a, &b).unwrap();
        let direct = PicardElement::new(k, u.mul(&v), s1 + s2, 0, UnitElement::one()).unwrap();
        prop_assert!(picard::pic_equal(&ab, &direct).unwrap());
    }
}
