//! The four existence constructions as deterministic searches that emit
//! re-checkable certificates, plus certificate verification.

mod base_change;
mod certificate;
mod ordinary;
mod reflex;
mod supersingular;
mod type_iv;
mod verify;

pub use base_change::{construct_base_change, SimplicityEvidence};
pub use certificate::{
    embedding_dto, honda_dto, int_from_string, newton_dto, poly_from_strings, poly_strings,
    rat_string, BaseChangeCert, Certificate, EmbeddingDto, HondaTateDto, NewtonSlopeDto,
    OrdinaryCmCert, OrdinaryCmFullCert, ReflexDto, SearchTrace, SupersingularCert, TypeIvCert,
    TypeIvEmbedCert, WeilDto,
};
pub use ordinary::{construct_ordinary_cm, construct_ordinary_cm_full};
pub use reflex::{
    analyze_cm_field, build_reflex, canonical_cm_type, validate_cm_type, CmFieldData, ReflexData,
};
pub use supersingular::construct_supersingular;
pub use type_iv::{construct_typeiv, construct_typeiv_embedding};
pub use verify::verify_certificate;
