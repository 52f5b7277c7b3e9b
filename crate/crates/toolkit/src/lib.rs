//! Command-line front end and HTTP+JSON service over the `hypergrid` library.

pub mod cli;
pub mod http;
pub mod tiles;
