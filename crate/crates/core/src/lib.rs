//! Sequence reconstruction over the binary Hamming space with substitution errors.
//!
//! A word `x` is sent through `N` channels, each introducing at most `t = e + l`
//! substitutions, where `e` is the error-correcting capability of the code.
//! This crate evaluates the channel-count and list-size formulas, runs the list
//! decoders and the majority decoder, and simulates the probabilistic regime.

pub mod bounds;
pub mod channel;
pub mod codes;
pub mod combin;
pub mod error;
pub mod hamming;
pub mod harness;
pub mod majority;
pub mod probability;
pub mod reconstruct;

pub use channel::{transmit, ChannelModel, OutputBatch};
pub use codes::{Code, LinearCode};
pub use combin::{ball_volume, binomial};
pub use error::{Error, Result};
pub use hamming::{distance, enumerate_ball, sample_ball_uniform, weight, BallSampler, CoordSet, Word};
pub use majority::{majority_vote, verified_decode, verify_radius, MajorityResult, TernaryWord, VerifiedOutcome};
pub use reconstruct::{CandidateList, Certificate, DecoderKind};
