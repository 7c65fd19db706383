// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bench;
pub mod circular;
pub mod error;
pub mod exec;
pub mod mie;
pub mod special;
pub mod trig;
pub mod uncertainty;

pub use error::{Error, Result};
pub use exec::Execution;
