//! Pointwise tensor calculus on four-dimensional charts.
//!
//! Conventions: signature `(+,−,−,−)`; the connection `Γ_λ^μ_ν` carries the
//! derivative index first and acts as `∇_λ v^μ = ∂_λ v^μ − Γ_λ^μ_ν v^ν`, so
//! the Levi-Civita connection is the negative of the usual Christoffel
//! symbols of the second kind. Curvature, Ricci and scalar follow from it
//! without further sign changes.

pub mod chart;
pub mod connection;
pub mod covariance;
pub mod field;
pub mod split;
pub mod tensor;

pub use chart::{Chart, ConnectionSpec, FieldJets, JetPoint, SpinorJet, TauJet, TetradJet};
pub use connection::{
    christoffel, contorsion, curvature, decompose_connection, metric_from_tetrad, nonmetricity, nonmetricity_residual, ricci_and_scalar,
    torsion, Christoffel, Curvature, Decomposition, MetricFromTetrad, Ricci,
};
pub use covariance::{covariance_check, CovarianceReport, Diffeo};
pub use field::{he_field_equations, hilbert_einstein_density, FieldEquations};
pub use split::{cartan_connection, spacetime_split, SpaceTimeSplit};
pub use tensor::{TensorValue, Variance};
