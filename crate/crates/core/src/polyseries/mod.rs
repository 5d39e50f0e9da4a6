//! Polynomial-side machinery: irreducibles, the involution on polynomials
//! over `F_{q^2}`, truncated Euler factors and exact product coefficients.

mod euler_factor;
mod involution;
mod irreducible;
mod products;
mod series;
mod theorem;

pub use euler_factor::{
    euler_factor_gl, euler_factor_gl_closed, euler_factor_kloost, euler_factor_kloost_closed,
    euler_factor_unitary, euler_factor_unitary_closed, euler_factor_unitary_with, euler_product_gl,
    euler_product_kloost, euler_product_unitary, invariant_table, Sign,
};
pub use involution::{
    count_invariant, invariant_irreducible_counts, invariant_irreducible_degrees, invariant_polys,
    is_invariant, poly_involution,
};
pub use irreducible::{is_irreducible, mobius, necklace_count, IrreduciblesTable};
pub use products::{
    clears_to_integers, euler_closed_form, euler_denominator, euler_identity_check, level_product_coeffs, product_coeffs_gl,
    product_coeffs_kloost, product_coeffs_unitary,
};
pub use series::SeriesPrefix;
pub use theorem::{
    check_bound, check_euler, check_fourier, check_gauss_modulus, check_gl, check_gl_order, check_invariant_count,
    check_kim, check_kloosterman, check_lemma_gl, check_lemma_kloost, check_lemma_unitary, check_odd_degrees,
    check_u_order, check_unitary, gl_closed_form, gl_series_coeff, theorem_check, Selection, Theorem,
};
