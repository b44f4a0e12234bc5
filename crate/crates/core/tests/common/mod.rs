#![allow(dead_code)]

use hyperwall::exactnum::parse_rational_function;
use hyperwall::{EpsRat, Rat};
use proptest::test_runner::{Config, RngSeed};

pub fn q(p: i64, r: i64) -> Rat {
    Rat::new(p.into(), r.into())
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(p.into())
}

pub fn e() -> EpsRat {
    EpsRat::eps()
}

pub fn f(src: &str) -> EpsRat {
    parse_rational_function(src, "e").expect("test formula parses")
}

/// Fixed seed and no persistence file, so every run replays the same cases.
pub fn seeded(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}
