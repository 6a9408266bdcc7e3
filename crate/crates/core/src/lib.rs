//! Exact-arithmetic Gelfand-Tsetlin realizations of weight modules over gl_n
//! and sl_n, with verification drivers for admissible families.

pub mod admissibility;
pub mod classification_sl3;
pub mod error;
pub mod gt_action;
pub mod induced;
pub mod localization;
pub mod modules_generic;
pub mod modules_singular;
pub mod scalars;
pub mod tableaux;

pub use error::{Error, ParseError, Result};
