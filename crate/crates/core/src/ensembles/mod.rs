//! Random nonnegative matrices `X` and their Markov normalizations `M = DX`.

mod law;
mod markov;
mod stream;

pub use law::EntryLaw;
pub use markov::{dirichlet_markov_sample, markov_sample, mean_matrix, sample_iid_matrix, to_markov, MarkovSample};
pub use stream::{SeededStream, StreamRng};

/// One draw from `law` using the caller's generator.
pub fn sample_entry(law: &EntryLaw, rng: &mut StreamRng) -> f64 {
    law.sample(rng)
}
