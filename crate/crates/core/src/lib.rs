//! Exact counting of primes in Beatty and Piatetski-Shapiro sequences, plus
//! the exponential-sum and Diophantine machinery used to study them.

pub mod accum;
pub mod arith;
pub mod cli;
pub mod counting;
pub mod diophantine;
pub mod exactnum;
pub mod expsum;
pub mod sequences;
