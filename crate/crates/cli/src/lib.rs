//! Command-line tool and session service for the quantum Grassmannian workbench.

pub mod cli;
pub mod service;
pub mod session;
