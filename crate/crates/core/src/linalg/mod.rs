//! Dense symmetric linear algebra, random problem generation and eigenvalue
//! estimation.

mod dense;
mod eigen;
mod io;
mod power;
mod problem;

pub use dense::{cholesky_solve, dot, matvec, matvec_into, norm2, Matrix};
pub use eigen::{
    jacobi_eigen, jacobi_eigenvalues, EigenDecomposition, Spectrum, DEFAULT_MAX_SWEEPS,
};
pub use io::{read_problem, write_problem};
pub use power::{
    power_method_max, power_method_min, DEFAULT_MAX_ITER, DEFAULT_TOL, SHIFT_SAFEGUARD,
};
pub use problem::{
    generate_gaussian_problem, generate_gaussian_problem_with, marchenko_pastur_edges,
    QuadraticProblem,
};
