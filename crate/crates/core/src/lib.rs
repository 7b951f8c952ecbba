//! p-mechanical brackets on the Heisenberg and Galilean groups and
//! De Donder–Weyl field dynamics.

pub mod clifford;
pub mod conventions;
pub mod dwfield;
pub mod error;
pub mod galilean;
pub mod grid;
pub mod heisenberg;
pub mod io;
pub mod pbrackets;
pub mod poly;

pub use clifford::{blade_exp, center_constant, geometric_product, Blade, CliffordElement, Signature};
pub use conventions::CONVENTIONS_VERSION;
pub use dwfield::{DWHamiltonian, FieldState, LagrangianSpec};
pub use error::{Error, Result};
pub use galilean::{FieldCharacterSum, GalileanElement, PlanckTuple};
pub use grid::{Axis, Grid};
pub use heisenberg::{CoadjointPoint, GridFunction, HeisenbergElement};
pub use pbrackets::{Atom, Backend, Channel, CharacterSum, PolyObservable, Trajectory};
pub use poly::{Coefficient, Poly};
