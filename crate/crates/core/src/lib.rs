//! Desk-scale computations around symplectic implosion and contraction:
//! Weyl-symmetric hyperplane arrangements, hypertoric moment maps, the
//! full-flag quiver with its real-moment solver, SU(2)/SL(2) contraction
//! maps and flows, Moore-Tachikawa dimension bookkeeping, and Nahm-equation
//! integration. Every module exposes pure functions over immutable data and
//! is safe for unrestricted concurrent use.

pub mod arrangement;
pub mod contraction;
pub mod error;
pub mod hypertoric;
pub mod intlin;
pub mod mtcat;
pub mod nahm;
pub mod quiver;
pub mod rootsys;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
