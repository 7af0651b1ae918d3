//! Library side of the CLI: the batch verification suite shared by the
//! `verify-suite` verb and the acceptance test target.

pub mod suite;
