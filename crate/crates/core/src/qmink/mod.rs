//! Twisted Minkowski space for the abelian Cartan twist.

mod poly;

pub use poly::{p_bigrade, render_mono, z_bigrade, Bigrade, Gauge, Gen, Mono, NCPolynomial, Z_BIGRADES};

mod relations;

pub use relations::{
    centrality_check, centrality_checks, classical_invariants, delta_basis, delta_basis_checks, exchange_tables, invariants_build,
    invariants_check, paper_a_table, paper_b_table, quasi_commutation_checks, six_relations, six_relations_check, table_strings,
    tables_check, Invariants, Table, TableFixtures, TableStrings,
};

mod vform;

pub use vform::{d_matrix, dz_matrix, p_matrix, paper_dz_matrix, permutation_operator, v_diag, v_form_checks, z_matrix, PolyMat};

mod kgf;

pub use kgf::{
    dalembertian, kgf_checks, kgf_residual, metric, momentum_square, pairing, reduce_mass_shell, truncated_exp_pairing, truncated_plane_wave,
    twisted_box_on, twisted_dalembertian, twisted_metric, z_monomials,
};

mod omega;

pub use omega::{basis_witness, omega_checks, omega_from_rep, omega_from_star};

mod undress;

pub use undress::{dress_generator, typeset_p2_dressing_witness, undress, undressing_checks, WeylMono, WeylPoly};

mod bar;

pub use bar::{bar, bar_checks};
