//! Coherent versus dephased amplitude amplification.
//!
//! * [`grover`]: closed-form Grover rotation in the `{|a⟩, |b⟩}` plane.
//! * [`dephased`]: the same iteration with complete dephasing after each step,
//!   a two-state Markov chain that needs `k ∼ N` steps instead of `k ∼ √N`.
//! * [`analog`]: the continuous-time two-level search model, coherent and
//!   step-wise dephased.
//! * [`oracle`]: brute-force statevectors and density matrices in the full
//!   `N`-dimensional space, plus qubit entanglement diagnostics.
//! * [`harness`]: threshold-crossing sweeps, log-log fits, cross-validation
//!   and CSV/JSON output used by the command-line tool.

pub mod analog;
pub mod dephased;
pub mod error;
pub mod grover;
pub mod harness;
pub mod oracle;

pub use error::{Error, Result};
