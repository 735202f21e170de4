//! Shared test infrastructure: brute-force reference implementations and
//! random knowledge-base generators. Every test binary pulls in the subset
//! it needs.
#![allow(dead_code)]

pub mod gen;
pub mod oracles;
