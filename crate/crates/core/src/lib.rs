pub mod bessel;
pub mod drive_mixing;
pub mod error;
pub mod integrator;
pub mod lindblad;
pub mod observables;
pub mod parallel;
pub mod quadrature;
pub mod runner;
pub mod scenario;
pub mod spectrum;
pub mod surface_state;
