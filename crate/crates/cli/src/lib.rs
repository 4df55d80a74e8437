//! Library surface of the `darboux` CLI: the expression parser, reused by
//! the binary and by integration tests.

pub mod parser;
