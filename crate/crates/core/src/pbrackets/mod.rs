//! Star products and brackets on multi-channel observables.

mod charsum;
mod dynamics;
mod phase_space;

pub use charsum::{
    antiderivative, commutator, phase_form, pmech_bracket, pmech_kernel, star, Atom, Channel, CharacterSum,
    CoefficientRing,
};
pub use dynamics::{evolve, Backend, EvolveOptions, Observable, Trajectory};
pub use phase_space::{moyal_poly, poisson_poly, poisson_power, PolyObservable};

pub(crate) use charsum::bits;
