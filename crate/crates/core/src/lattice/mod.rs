//! Ideals, multiplicative sets and S-prime spectra.

mod ideal;
mod multset;
mod spectrum;

pub use ideal::{
    colon, colon_elem, enumerate_ideals, ideal_generated, is_ideal_set, is_prime_ideal, Ideal,
    DEFAULT_IDEAL_CAP,
};
pub use multset::{mult_closure, MultiplicativeSet};
pub use spectrum::{
    is_s_prime, s_minimal_s_primes, s_nilradical, s_prime_by_colon, s_prime_definitional,
    s_radical, s_spectrum, s_spectrum_of, spectrum_intersection, SPrimeWitness, SRadical,
};
