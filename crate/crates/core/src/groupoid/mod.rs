// SPDX-License-Identifier: MIT OR Apache-2.0

//! Finite groupoids as composition tables, their wreath groups, group
//! actions, and conjugacy in `wreath(C)`.

mod action;
mod conj;
mod core;

pub use self::action::{GroupAction, InvariantGroupoid, Semidirect};
pub use self::conj::{are_conjugate, centralizer, centralizer_order, conj_type, label_class, transporter, ConjType};
pub use self::core::{perm_cycles, Groupoid, Mor, WreathElement};
