//! Sampling of twistor images on grids and numerical certification of
//! superminimality.

pub mod geometry;
pub mod hp;
pub mod mesh;
pub mod radius;
pub mod sample;

pub use geometry::{
    conformality_report, geometry_report, isometry_ratio, minimality_report, superminimality_report, GeometryReport, IsometryReport, ReportOptions,
    Spin, SuperminimalityReport, KAPPA,
};
pub use mesh::{Mesh, StereoPole};
pub use radius::{intrinsic_radius, radius_refinement, EdgeWeight, RadiusOptions, RadiusReport};
pub use sample::{sample_surface, singular_points, DomainSpec, Precision, SampleOptions, SurfaceSample};
