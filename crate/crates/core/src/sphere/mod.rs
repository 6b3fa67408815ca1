//! The sphere of directions: meshes and rasterized topology.

pub mod mesh;
pub mod topology;

pub use mesh::{build_mesh, MeshError, SphereMesh};
pub use topology::{
    classify, complement_connected, components, contractibility_report, region_components,
    report_for_classification, Component, ComponentReport, Connectivity, ContractibilityReport,
    ReportConfig, SphereClassification, Verdict, DEFAULT_AMBIGUOUS_LIMIT,
};
