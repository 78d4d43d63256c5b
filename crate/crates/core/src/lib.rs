//! Interval-valued Sugeno-like FG-functionals.
//!
//! The crate is organised bottom-up:
//!
//! * [`interval`] holds the [`Interval`] value type and the admissible orders.
//! * [`measure`] holds scalar and interval-valued fuzzy measures.
//! * [`fg`] evaluates `S_m^{F,G}`, checks well-definedness under ties and
//!   runs the sampled property suite.
//! * [`miv`] builds interval functions from scalar pairs `(M1, M2)` through
//!   the `(K_α, λ_α)` coordinates.
//! * [`ensemble`] and [`network`] are the two application pipelines.
//!
//! ```
//! use ivfg_core::{FgFunctional, Interval};
//!
//! let fg = FgFunctional::iv_sugeno3(2).unwrap();
//! let xs = [Interval::new(0.1, 0.2).unwrap(), Interval::new(0.5, 0.7).unwrap()];
//! assert_eq!(fg.evaluate(&xs).unwrap(), Interval::new(0.5, 0.5).unwrap());
//! ```

pub mod ensemble;
pub mod fg;
pub mod format;
pub mod interval;
pub mod measure;
pub mod miv;
pub mod network;
pub mod sample;

pub use fg::{Aggregator, FPreset, FgError, FgFunctional, Outer};
pub use format::format_sig;
pub use interval::{AdmissibleOrder, Interval, IntervalError, OrderKind};
pub use measure::{IvFuzzyMeasure, MeasureError, ScalarMeasure};
pub use miv::{MivSpec, ScalarOp};
