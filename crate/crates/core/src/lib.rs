//! Diagonal-dominance classes (SDD, Nekrasov, Gudkov, H) and upper bounds on
//! the infinity norm of the inverse of Nekrasov and SDD matrices.
//!
//! ```
//! use nekbound::{best_bound, builtin};
//!
//! let a = builtin("A5").unwrap().matrix;
//! let report = best_bound(&a);
//! assert!(report.varah.is_none());
//! assert!((report.best.unwrap() - 1.4909).abs() < 1e-4);
//! ```

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod generate;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod rowsums;
pub mod sweep;
pub mod triangular;

pub use bounds::{
    best_bound, nekrasov_bound_2, nekrasov_bound_3, varah_bound, BoundError, BoundReport,
};
pub use classify::{
    classify_h_matrix, classify_nekrasov, classify_nekrasov_szulc, classify_sdd,
    find_gudkov_permutation, Classification, GudkovSearch,
};
pub use io::{
    builtin, parse_csv, parse_matrix_market, write_matrix_market, InputError, NamedMatrix,
};
pub use matrix::{Matrix, MatrixError, Splitting};
pub use num_complex::Complex64;
pub use oracle::{exact_inverse_inf_norm, inverse_entrywise, lu_factor, LuFactors, Singular};
pub use rowsums::{h_via_triangular_solve, nekrasov_row_sums, z_weights, RowSums, ZeroDiagonal};
