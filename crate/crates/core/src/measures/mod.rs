//! Harmonic functions, cylinder and level masses of the invariant measures,
//! and a seeded Markov growth sampler.

mod family;
mod growth;
mod omega;
mod table;

pub use family::{
    gl_cylinder_mass, gl_harmonic, gl_level_mass, gl_level_mass_by_classes, omega_h, unitary_cylinder_mass,
    unitary_harmonic, MeasureSpec,
};
pub use growth::{empirical_check, markov_growth, EmpiricalReport, EmpiricalRow, GrowthChain, GrowthStep};
pub use omega::OmegaPoint;
pub use table::{MassRow, MeasureTable};
