//! Growth capacity of lattice growth schemes.
//!
//! A growth scheme `ω = x + iy` places buds on the lattice `ℤ + ℤω`; its
//! capacity `f(ω) = d(ω)²/Im ω` (with `d` the shortest nonzero lattice
//! vector) is invariant under `PSL₂(ℤ)`. Along a vertical line `x + i/t` the
//! capacity is a chain of convex pieces indexed by the Hermite convergents of
//! `x`, and its minima approach `2/L(x)`.
//!
//! Everything is computed exactly in `ℚ(√d)` whenever the inputs are
//! quadratic surds and rationals, with a high-precision float tier for the
//! rest.

pub mod average;
pub mod error;
pub mod markoff;
pub mod modular;
pub mod numeric;
pub mod packing;
pub mod profile;
pub mod render;

pub use average::{
    average_capacity_estimate, closed_form_g, piece_average, AverageReport, ClosedForm, GoldenOrSilver, PieceAverage,
};
pub use error::{Error, Result};
pub use markoff::{
    fibonacci, fibonacci_binet, lagrange_spectrum, markoff_numbers, markoff_quadratic_13, markoff_quadratic_5,
    markoff_triples, pell, MarkoffTriple, SpectrumEntry,
};
pub use modular::{
    growth_capacity, growth_capacity_direct, mobius_apply, reduce_to_fundamental, reduced_basis, shortest_vector,
    shortest_vector_naive, tangent_circle, Boundary, LatticeVector, ModularMatrix, Reduction, ShortestVector,
    TangentCircle, UpperHalfPoint,
};
pub use numeric::*;
pub use packing::{analytic_density, packing_density, PackingReport};
pub use profile::{
    build_profile, hermite_convergents, hermite_oracle_geodesic, humbert_is_hermite, local_minima, sup_of_minima,
    CapacityProfile, HermiteConvergent, LocalMinimum, MinimaLimit, ProfilePiece, ProfileSample,
};
