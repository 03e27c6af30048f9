//! Initial-coefficient bounds for bi-univalent function classes defined by
//! subordination, together with the machinery to check them numerically:
//! truncated power series, Carathéodory and Schwarz coefficients, a catalogue
//! of Ma–Minda functions, closed-form bounds and a coefficient-functional
//! maximizer.

pub mod classbounds;
pub mod coeffsystem;
pub mod error;
pub mod maminda;
pub mod powerseries;
pub mod schwarz;
pub mod verify;

pub use classbounds::{bound_for, BoundReport, Branch, ClassSpec};
pub use coeffsystem::{
    functional_value, maximize_functional, solve_class_coefficients, ExtremalResult, FunctionalId,
    Point, SearchConfig,
};
pub use error::{Error, Result};
pub use maminda::{MaMindaPhi, PhiFamily};
pub use num_complex::Complex64;
pub use powerseries::PowerSeries;
pub use schwarz::{CaratheodoryCoeffs, Feasibility, SchwarzCoeffs};
pub use verify::{verify_class, VerifyReport};
