//! Exact differential calculus on the reduced quantum group `C_q[SL_2]` at an
//! odd root of unity: de Rham cohomology, Hodge theory and Maxwell theory
//! over the cyclotomic field `Q(q)`.

pub mod algebra;
pub mod complex;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod exterior;
pub mod forms;
pub mod hodge;
pub mod linalg;
pub mod maxwell;
pub mod model;
pub mod spectrum;
pub mod verify;

pub use algebra::{AlgElem, Monomial};
pub use complex::{DeRham, DimsReport};
pub use cyclotomic::{CycField, CycScalar};
pub use error::{Error, Result};
pub use exterior::{Exterior, InvForm};
pub use forms::{Calculus, Form};
pub use hodge::{Hodge, HodgeDims};
pub use linalg::{LinOp, SVec, Solution, Subspace};
pub use maxwell::{Gauge, GaugeReport, Maxwell, SourceProblem};
pub use model::Model;
pub use verify::{Checklist, Suite};
