//! Turing machines, their area-preserving shift encodings, and the
//! geometric pipeline that realizes them as steady Navier-Stokes flows on
//! the 3-torus.

// `!(x > 0.0)` guards reject NaN along with the out-of-range values, and
// tensor code reads best with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod forms;
pub mod gluing;
pub mod jet;
pub mod ode;
pub mod profile;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod shift;
pub mod suspension;
pub mod tm;

pub use forms::FormsError;
pub use gluing::{build_turing_flow, BuildDescriptor, BuildReport, GluedStructure, GluingError, NestedTori};
pub use report::{CheckReport, Tolerances};
pub use suspension::{HamiltonianIsotopy, SuspensionError, SuspensionStructure};
pub use shift::{GeneralizedShift, ShiftError};
pub use tm::{Configuration, Shift, Tape, TmError, Transition, TuringMachine};
