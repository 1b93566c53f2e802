//! Bijections between tableaux, colored words and permutations.

pub mod corner_run;
pub mod cut;
pub mod phi;
pub mod run;
pub mod word;

pub use corner_run::CornerRunBijection;
pub use cut::{cut_at_corner, glue, Cut};
pub use phi::{corner_transfer_delta, phi, phi_inverse};
pub use run::{
    all_triplets, is_run_of_size_one, run_to_triplet, triplet_words_to_run, CycleForm,
    MarkedRunPermutation, Triplet,
};
pub use word::{
    colored_words, count_colored_words, m_star, m_star_inverse, ColoredLetter, ColoredWord,
    StarredWord,
};
