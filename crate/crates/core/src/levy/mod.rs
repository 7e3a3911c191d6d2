//! Lévy triplets, state-dependent symbols, the symbol catalog and the
//! boundedness / continuity conditions imposed on them.

pub mod catalog;
pub mod coeff;
pub mod conditions;
pub mod exponent;
pub mod sup_bound;
pub mod symbol;
pub mod triplet;

pub use catalog::{list_catalog, make_catalog_symbol, AlphaWeight, SymbolSpec};
pub use coeff::{Coeff, CoeffFn};
pub use conditions::{check_conditions, check_family_conditions, ConditionId, ConditionReport, GridSpec};
pub use exponent::LevyExponent;
pub use sup_bound::{operator_sup_bound, operator_sup_bound_with, SupBound, SupBoundMode, SupBoundOptions};
pub use symbol::{eval_symbol, CoefficientFlags, SymbolField};
pub use triplet::{JumpMeasure, KernelTerm, LevyTriplet};
