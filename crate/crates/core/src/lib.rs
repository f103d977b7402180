//! Exact-arithmetic toolkit for Lie algebra cohomology after restriction of
//! scalars along a number field, and for norm estimates on truncated
//! enveloping-algebra series. Everything computes over Q or over an explicit
//! number field; no floating point anywhere.

pub mod cohomology;
pub mod dist;
pub mod field_tower;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod ring;
