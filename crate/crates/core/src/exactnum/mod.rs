//! Exact rationals and the ordered field Q(ε) of rational functions in a
//! positive infinitesimal ε.

mod parse;
mod poly;
mod ratfunc;

pub use parse::parse_rational_function;
pub use poly::EpsPoly;
pub use ratfunc::{eps_cmp, EpsRat};

use std::fmt::Debug;
use std::ops::{Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Largest polynomial degree accepted in numerators and denominators.
pub const MAX_DEGREE: usize = 64;

/// Binary field operation selector for [`eps_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn eps_arith(a: &EpsRat, b: &EpsRat, op: ArithOp) -> Result<EpsRat> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn eval_at(a: &EpsRat, x: &Rat) -> Result<Rat> {
    a.eval_at(x)
}

/// Parses an exact rational such as `-3/4`, `7` or `0.125`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let v = parse_rational_function(s, "e")?;
    v.as_rat().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("`{s}` is not a constant"),
    })
}

/// Ordered field operations used by the generic exact linear algebra.
pub trait OrderedField:
    Clone
    + Ord
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;
}

impl OrderedField for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl OrderedField for EpsRat {
    fn from_rat(r: &Rat) -> Self {
        EpsRat::from_rat(r.clone())
    }
}

/// Serde adapter writing a [`Rat`] as a string such as `"-3/2"`; integers are
/// also accepted on input.
pub mod rat_serde {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{EpsRat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let v = EpsRat::deserialize(d)?;
        v.as_rat()
            .ok_or_else(|| D::Error::custom(format!("`{v}` is not a rational number")))
    }
}

/// [`rat_serde`] for vectors.
pub mod rat_vec_serde {
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{EpsRat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<EpsRat>::deserialize(d)?
            .into_iter()
            .map(|v| {
                v.as_rat()
                    .ok_or_else(|| D::Error::custom(format!("`{v}` is not a rational number")))
            })
            .collect()
    }
}

/// [`rat_serde`] for matrices.
pub mod rat_matrix_serde {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{EpsRat, Rat};

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<EpsRat>>::deserialize(d)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.as_rat().ok_or_else(|| {
                            D::Error::custom(format!("`{v}` is not a rational number"))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}
