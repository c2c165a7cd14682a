//! Support library for the `slpot` binary: expression parsing for boundary
//! data, deterministic JSON/CSV emission, and the output record types. Kept
//! as a library so integration tests can round-trip the emitted JSON.

pub mod expr;
pub mod json;
pub mod out;
