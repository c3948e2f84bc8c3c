//! Boundary value problems in non-integer dimension.

pub mod poisson;

pub use poisson::{
    apply_operator, max_difference, max_residual, poisson_homogeneous_basis, poisson_news_closed_form, poisson_solve_analytic, poisson_solve_numeric,
    solve_fd, Boundary, PoissonOperator, PoissonProblem, PoissonSolution, SolutionMethod,
};
