//! Chainlink polytopes and related polytopes as exact inequality systems.

mod chainlink;
mod hpoly;
mod lattice;
mod vertices;

pub use chainlink::{
    chainlink_vertices, combinatorial_structure, cycle_edges, cycle_matchings,
    same_incidence_structure, section_vertices, trace_of_product, trace_power, vertex_candidates,
    vertex_count_trace, volume_inclusion_exclusion, volume_trace, Mat3, StructureReport,
    VERTEX_MATRIX_A, VERTEX_MATRIX_B,
};
pub use hpoly::{
    build_chainlink_hrep, build_general_fence_polytope, build_ideal_polytope, build_order_polytope,
    HPolytope, Row,
};
pub use lattice::{
    count_lattice_points, enumerate_lattice_points, lattice_counts_by_sum,
    lattice_generating_function, visit_lattice_points,
};
pub use vertices::{enumerate_vertices, rank, solve, VertexSet, VERTEX_DIM_CAP};
