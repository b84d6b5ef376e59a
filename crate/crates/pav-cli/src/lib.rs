//! Document types and conversions for the `pav` binary, exposed as a
//! library so the integration suite can exercise the exact wire format.

pub mod doc;
