//! Matrix models of the registered groups: fundamental representations,
//! factorization charts, generalized minors, Gaussian decomposition, the word
//! seed σ(𝐢) and the transition from factorization to cluster coordinates.

mod element;
mod minors;
mod numeric;
mod rep;
mod word;

pub use element::{mat_mul, Factor, Group, GroupElement, GroupWord};
pub use minors::{gaussian_decompose, generalized_minor, ldu, torus_part, Frac, Gaussian};
pub use numeric::{minor_at, peel, twist, NumericElement, TransitionInverse};
pub use rep::{exp_nilpotent, fundamental_reps, RepData};
pub use word::{
    chart_transition_to_cluster, chart_vars, cluster_minors, decorated_word_seed, factorization_chart,
    factorization_word, reduced_chart, reduced_word, torus_word, transpose_iota, word_seed, DoubleWord,
    SignedMinor,
};

#[cfg(test)]
mod tests;
