//! Command-line tool, timed grid verifier and HTTP game service for
//! Common Divisor Nim, built on [`cdnim_core`].

pub mod cli;
pub mod report;
pub mod service;
pub mod verify;
pub mod wire;
