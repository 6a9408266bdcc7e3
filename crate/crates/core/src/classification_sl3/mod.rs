//! The explicit sl_3 families: region tables, seeds and verification drivers.

mod region;

pub use region::{parse_region, AffineForm, Inequality, RegionExpr, RegionPredicate};

mod families;

pub use families::*;
