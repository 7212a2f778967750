//! The chapters of the guide in `book/src`, compiled as documentation so
//! that every Rust listing runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}

#[doc = include_str!("../../../book/src/qbinomials.md")]
pub mod qbinomials {}

#[doc = include_str!("../../../book/src/qt-binomials.md")]
pub mod qt_binomials {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/degrees.md")]
pub mod degrees {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/json-schemas.md")]
pub mod json_schemas {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
