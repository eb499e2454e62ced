//! Verification lab for the exotic q-difference equations of the Hilbert scheme of
//! points: command implementations, JSON reporting and the acceptance suite.

pub mod accept;
pub mod commands;
pub mod report;
