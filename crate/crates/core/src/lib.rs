// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulator for twisted and chiral W states of Rydberg trimers and their
//! conversion into GHZ states.
//!
//! Three to four gr-qubits sit in the Rydberg blockade regime; global laser
//! fields with tilted wave vectors imprint site phases that select which
//! collective state is driven. The crate covers
//!
//! - [`states`]: Dicke, twisted Dicke, ζ (chirality) and GHZ states, fidelities;
//! - [`geometry`]: triangle arrays, laser tilt to site phases, van der Waals tables;
//! - [`hamiltonians`]: the driven blockade model and its effective ladders,
//!   including the light-shift-compensated twisted ladder and its oracle;
//! - [`dynamics`]: fixed-step RK4 for kets and Lindblad density matrices with a
//!   built-in step-halving check;
//! - [`schemes`]: the named experiments;
//! - [`config`] and [`cli`]: TOML experiment files, CSV/JSON results and the
//!   `wghz` binary.
//!
//! ```no_run
//! use rydberg_wghz::hamiltonians::ZetaAlignment;
//! use rydberg_wghz::schemes::{convert_w_to_ghz, ConversionOptions};
//!
//! let run = convert_w_to_ghz(ZetaAlignment::Aligned, &ConversionOptions::default())?;
//! println!("F = {:.6} at T = {}", run.fidelity_at_conversion, run.conversion_time);
//! # Ok::<(), rydberg_wghz::Error>(())
//! ```

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod hamiltonians;
pub mod linalg;
pub mod schemes;
pub mod states;

pub use error::{Error, Result};
