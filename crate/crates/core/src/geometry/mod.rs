//! Radial profiles, their curvatures, and Monge-patch geometry of general
//! graph surfaces.

mod monge;
mod profile;
mod radial;

pub use monge::{monge_patch_geometry, profile_support_radius, FnGraph, GraphSurface, MongeGeometry, RadialGraph};
pub use profile::{FiniteDifferenceProfile, FlatProfile, FnProfile, GaussianBump, RadialProfile, TabulatedProfile};
pub use radial::{
    curvatures, curvatures_at_origin, g_derivative, g_function, geometry_at, total_gaussian_curvature,
    validate_profile, SurfaceGeometryAtPoint,
};
