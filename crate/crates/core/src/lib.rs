//! Steinhaus triangles over `Z/nZ`.
//!
//! A sequence `X = (x_1, ..., x_m)` generates a triangle whose rows are the
//! iterated derived sequences `(x_1 + x_2, ..., x_{m-1} + x_m)`. `X` is
//! balanced when every residue occurs equally often in that triangle.
//!
//! - [`residue`]: sequences, derivation, triangles, multiplicities, projections.
//! - [`orders`]: factorization, totient, radical and the orders `α(n)`, `β(n)`.
//! - [`admissible`]: lengths `m` with `n | C(m + 1, 2)` via the CRT.
//! - [`ap`]: arithmetic progressions and the balanced constructions for odd `n`.
//! - [`search`]: exhaustive oracles, parallel when the `parallel` feature is on.

pub mod admissible;
pub mod ap;
pub mod error;
pub mod orders;
pub mod par;
pub mod residue;
pub mod search;

pub use admissible::{admissible_classes, coverage_fraction, is_admissible, AdmissibleClasses, Fraction};
pub use ap::{antisymmetric_ap, construct_balanced, construct_balanced_ap, ArithmeticProgression, Family};
pub use error::{Error, Result};
pub use orders::{alpha, beta, factorize, multiplicative_order, omega, padic_valuation, radical, totient, Factorization};
pub use residue::{Modulus, MultiplicityVector, Residue, Sequence, Triangle};
pub use search::{
    brute_force_balanced, classify_even_aps, count_balanced, molluzzo_probe, ProbeMethod, ProbeResult, SearchBudget,
    SearchReport,
};
