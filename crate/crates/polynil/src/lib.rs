//! Exact structure theory for finitely generated abelian groups:
//! polynilpotent multipliers and varietal capability.
//!
//! The crate is layered bottom-up:
//!
//! - [`matrix`]: arbitrary-precision integer matrices and Smith normal
//!   form with transformation witnesses;
//! - [`group`]: canonical invariant-factor presentations, quotients,
//!   generated subgroups, element streams, and a census of finite abelian
//!   groups by order;
//! - [`witt`]: Möbius function, Witt numbers, class rows, and the composed
//!   exponent sequences they induce;
//! - [`multiplier`]: the explicit multiplier structure of a group with
//!   respect to a class row, with orders kept in factored form;
//! - [`capability`]: the closed-form capability classification, the
//!   brute-force cyclic-quotient oracle, epicenters, and largest capable
//!   quotients.
//!
//! ```
//! use polynil::{is_capable_closed_form, is_capable_oracle, ClassRow, FGAbelianGroup};
//!
//! let g = FGAbelianGroup::finite(&[6, 6]);
//! let row = ClassRow::of(&[1, 1]);
//! let closed = is_capable_closed_form(&g, &row);
//! let oracle = is_capable_oracle(&g, &row).unwrap();
//! assert!(!closed.is_capable());
//! assert_eq!(closed.is_capable(), oracle.is_capable());
//! ```

mod arith;
pub mod capability;
pub mod error;
pub mod group;
pub mod matrix;
pub mod multiplier;
pub mod witt;

pub use capability::{
    epicenter, injectivity_test, is_capable_closed_form, is_capable_oracle,
    largest_capable_quotient, CapabilityVerdict, EpicenterResult, Rule,
};
pub use error::{Error, Result};
pub use group::{
    abelian_groups_of_order, enumerate_abelian_groups, is_valid_subgroup_shape, Cardinality,
    FGAbelianGroup, GroupElement,
};
pub use matrix::{smith_normal_form, IntMatrix, SnfResult};
pub use multiplier::{
    polynilpotent_multiplier, FactoredOrder, MultiplierOrder, MultiplierStructure,
};
pub use witt::{chi_chain, mobius, witt, witt_u64, ClassRow};
