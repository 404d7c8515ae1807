//! Generalized Sudoku as an integer inequality system.
//!
//! A candidate `x ∈ Z^{n²}` is laid out row-major as an `n × n` tableau.
//! Each constraint permutation `π` selects `n` groups of `n` cells, and the
//! matrix `A_π` lists every pairwise difference inside each group; the
//! problem asks for `1 ≤ x_i ≤ n`, `A_π x` free of zeros for every `π`,
//! and the givens. Rows, columns and subsquares give classic Sudoku,
//! repeating the column permutation gives Latin squares, and arbitrary
//! regions give gerechte designs.
//!
//! Every solution satisfies `x = ½(A_πᵀ sgn(A_π x) + (n+1)·1)` for each
//! constraint; [`sign::check_necessary`] evaluates that identity.
//!
//! ```
//! use gensudoku::{solve, ProblemSpec, SolveOptions};
//!
//! let spec = ProblemSpec::latin(3, vec![]).unwrap();
//! let outcome = solve(&spec, SolveOptions::default()).unwrap();
//! assert_eq!(outcome.solutions.len(), 12);
//! ```

pub mod cli;
pub mod difference;
pub mod error;
pub mod io;
pub mod permutation;
pub mod problem;
pub mod sign;
pub mod solver;

pub use difference::{
    triangular_sum, ConstraintMatrix, DenseMatrix, DifferenceMatrix, DifferenceRow, SignVector,
};
pub use error::{Error, Result};
pub use io::{parse_puzzle, parse_regions, render_tableau, PuzzleDocument, TableauRendering};
pub use permutation::{Partition, Permutation};
pub use problem::{verify_solution, Given, ProblemSpec, Violation};
pub use sign::{
    check_givens, check_necessary, gsgn, pairwise_sign_sum, reconstruct, sign_sum_closed_form,
    Assignment, NecessityReport,
};
pub use solver::{brute_force, brute_force_group_permutations, solve, SolveOptions, SolveOutcome};
