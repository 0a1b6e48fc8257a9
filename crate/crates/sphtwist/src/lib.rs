//! Symbolic toolkit for groups generated by two spherical twists.
//!
//! The crate models twist autoequivalences as vertex actions on finite
//! windows of the translation quivers ZA_n and ZD4, decides word problems in
//! every group two twists can generate (braid groups of types A2, B2, G2 and
//! their central quotients, the central extension of S3 by Z, abelian
//! quotients, free groups), certifies free subgroups through bounded
//! ping-pong evidence, and does element arithmetic in the derived Picard
//! group presentation of the D4-type selfinjective algebras Lambda_k.

pub mod document;
pub mod groups;
pub mod lambda;
pub mod mesh;
pub mod picard;
pub mod suites;
pub mod twist;

mod ratmat;

pub use document::{Document, DocumentError, MeshConfig};
pub use groups::{
    are_equal, classify_twist_group, normal_form, BraidFamily, ClassifyError, GroupDescription,
    GroupError, GroupSpec, GroupWord, NormalBody, NormalForm,
};
pub use lambda::{build_lambda, nakayama, spherical_data, AlgebraError, AlgebraModel, AlgebraVertex};
pub use mesh::{
    build_mesh, Diagram, DimensionStatistics, MeshError, MeshModel, SphericalReport,
    SphericalSequenceSpec, SphericalViolation, Vertex, Window,
};
pub use picard::{
    parse_element, pic_equal, pic_invert, pic_multiply, pic_normal_form, PicardElement,
    PicardError, UnitElement,
};
pub use twist::{
    builtin_d4_actions, compose, derive_automorphism, detect_exceptional, invert,
    lower_bound_propagate, orbit_sph, sph_class, twist_on_member, verify_relation, word_action,
    BoundState, CentralPowerAction, ExceptionalCase, OrbitGraph, QuiverAutomorphism, SphClass,
    TwistError,
};
