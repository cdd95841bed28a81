//! Exact verification toolkit for b-rectangular metric spaces, C-class
//! weakly contractive self-maps, and the Picard iteration that locates their
//! fixed points.

pub mod cli;
pub mod config;
pub mod contraction;
pub mod fixtures;
pub mod functions;
pub mod numeric;
pub mod rational;
pub mod solver;
pub mod spaces;

pub use numeric::Value;
pub use rational::{format_rational, parse_rational, Rational};
