//! Choosing which input-connections of a sparse linear system `(A, B)` to
//! keep so that the pair stays structurally controllable, at least cost.
//!
//! Each nonzero `B[i][j]` (input `u_j` acting on state `v_i`) carries a cost.
//! Three objectives are supported: least total cost, fewest connections, and
//! least cost among the sparsest choices. Exact polynomial algorithms cover
//! systems whose state bipartite graph has a perfect matching, strongly
//! connected systems and rooted trees; a 2-approximation covers the rest.
//!
//! ```
//! use structctl::{fixtures, solve, Mode, Problem};
//!
//! let instance = fixtures::example1();
//! let solution = solve(&instance, Problem::SparsestMinCost, Mode::Auto).unwrap();
//! assert_eq!((solution.count(), solution.cost()), (3, 25.0));
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod pattern;
pub mod solvers;

pub use error::{ParseError, SolveError};
pub use graph::{check_controllability, classify, is_structurally_controllable, AssumptionClass};
pub use pattern::{
    apply_forbidden_set, dualize, parse_instance, serialize_instance, validate,
    CostedInputPattern, InputConnection, NormPair, SparsityPattern, SystemInstance,
};
pub use solvers::{solve, Method, Mode, Problem, Solution};
