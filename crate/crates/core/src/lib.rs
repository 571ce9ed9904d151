//! Signature-based Gröbner bases over prime fields.
//!
//! The engine ([`engine::f45`]) combines F4-style matrix reduction with the
//! F5 criteria: every stored polynomial carries a signature, pairs are
//! filtered by the F5 and rewritten criteria, and each degree is reduced as
//! one Macaulay matrix without ever reducing a row by a larger signature.
//! [`oracle`] holds an independent Buchberger implementation for checking.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod pairs;
pub mod signature;
