use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse, EpsPoly, Rat, MAX_DEGREE};
use crate::error::{Error, Result};

/// Element of the ordered field Q(ε), ε a positive infinitesimal.
///
/// Stored as a reduced fraction whose denominator has lowest-degree
/// coefficient `+1`, so structural equality is field equality and the sign of
/// the value is the sign of the numerator's lowest-degree coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsRat {
    num: EpsPoly,
    den: EpsPoly,
}

fn check_degree(p: &EpsPoly) -> Result<()> {
    match p.degree() {
        Some(d) if d > MAX_DEGREE => Err(Error::DegreeOverflow {
            degree: d,
            limit: MAX_DEGREE,
        }),
        _ => Ok(()),
    }
}

impl EpsRat {
    /// Builds `num / den` in normal form.
    pub fn new(num: EpsPoly, den: EpsPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if num.is_zero() {
            (EpsPoly::zero(), EpsPoly::one())
        } else if den.degree() == Some(0) {
            let inv = den.coeffs()[0].recip();
            (num.scale(&inv), EpsPoly::one())
        } else {
            let g = EpsPoly::gcd(&num, &den);
            let (num, den) = if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            };
            let low = den.lowest_term().expect("nonzero denominator").1.recip();
            (num.scale(&low), den.scale(&low))
        };
        check_degree(&num)?;
        check_degree(&den)?;
        Ok(Self { num, den })
    }

    pub fn from_rat(r: Rat) -> Self {
        Self {
            num: EpsPoly::constant(r),
            den: EpsPoly::one(),
        }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rat(Rat::from_integer(i.into()))
    }

    /// `p / q` as a constant.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rat(Rat::new(p.into(), q.into()))
    }

    pub fn from_poly(p: EpsPoly) -> Result<Self> {
        check_degree(&p)?;
        Ok(Self {
            num: p,
            den: EpsPoly::one(),
        })
    }

    /// The infinitesimal ε itself.
    pub fn eps() -> Self {
        Self {
            num: EpsPoly::monomial(Rat::one(), 1),
            den: EpsPoly::one(),
        }
    }

    pub fn numer(&self) -> &EpsPoly {
        &self.num
    }

    pub fn denom(&self) -> &EpsPoly {
        &self.den
    }

    /// The value as a rational number when it does not depend on ε.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rat().is_some()
    }

    /// Whether the value is the given integer exactly.
    pub fn is_integer(&self, k: i64) -> bool {
        self.as_rat()
            .is_some_and(|r| r == Rat::from_integer(k.into()))
    }

    pub fn signum(&self) -> Ordering {
        self.num.germ_sign()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Substitutes ε := x.
    pub fn eval_at(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Formats with a custom variable name in place of `e`.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a EpsRat, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let EpsRat { num, den } = self.0;
                if den.degree() == Some(0) {
                    num.fmt_with_var(f, self.1)
                } else {
                    f.write_str("(")?;
                    num.fmt_with_var(f, self.1)?;
                    f.write_str(")/(")?;
                    den.fmt_with_var(f, self.1)?;
                    f.write_str(")")
                }
            }
        }
        D(self, var)
    }
}

/// Sign comparison for all sufficiently small positive ε.
pub fn eps_cmp(a: &EpsRat, b: &EpsRat) -> Ordering {
    a.cmp(b)
}

impl Ord for EpsRat {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.sub(&other.num).germ_sign();
        }
        // Both denominators are positive near zero, so cross-multiplying
        // preserves the sign of the difference.
        self.num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den))
            .germ_sign()
    }
}

impl PartialOrd for EpsRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for EpsRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rat> for EpsRat {
    fn from(r: Rat) -> Self {
        Self::from_rat(r)
    }
}

impl From<i64> for EpsRat {
    fn from(i: i64) -> Self {
        Self::from_int(i)
    }
}

impl Zero for EpsRat {
    fn zero() -> Self {
        Self {
            num: EpsPoly::zero(),
            den: EpsPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for EpsRat {
    fn one() -> Self {
        Self {
            num: EpsPoly::one(),
            den: EpsPoly::one(),
        }
    }
}

fn unwrap_op(r: Result<EpsRat>) -> EpsRat {
    r.unwrap_or_else(|e| panic!("EpsRat arithmetic: {e}"))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&EpsRat> for &EpsRat {
            type Output = EpsRat;
            fn $method(self, rhs: &EpsRat) -> EpsRat {
                unwrap_op(self.$checked(rhs))
            }
        }
        impl $tr<EpsRat> for EpsRat {
            type Output = EpsRat;
            fn $method(self, rhs: EpsRat) -> EpsRat {
                unwrap_op(self.$checked(&rhs))
            }
        }
        impl $tr<&EpsRat> for EpsRat {
            type Output = EpsRat;
            fn $method(self, rhs: &EpsRat) -> EpsRat {
                unwrap_op(self.$checked(rhs))
            }
        }
        impl $tr<EpsRat> for &EpsRat {
            type Output = EpsRat;
            fn $method(self, rhs: EpsRat) -> EpsRat {
                unwrap_op(self.$checked(&rhs))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for EpsRat {
    type Output = EpsRat;
    fn neg(self) -> EpsRat {
        self.neg_ref()
    }
}

impl Neg for &EpsRat {
    type Output = EpsRat;
    fn neg(self) -> EpsRat {
        self.neg_ref()
    }
}

impl std::iter::Sum for EpsRat {
    fn sum<I: Iterator<Item = EpsRat>>(iter: I) -> Self {
        iter.fold(EpsRat::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a EpsRat> for EpsRat {
    fn sum<I: Iterator<Item = &'a EpsRat>>(iter: I) -> Self {
        iter.fold(EpsRat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for EpsRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("e"))
    }
}

impl FromStr for EpsRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_rational_function(s, "e")
    }
}

impl Serialize for EpsRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EpsRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = EpsRat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational function of e as a string, or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<EpsRat, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<EpsRat, E> {
                Ok(EpsRat::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<EpsRat, E> {
                i64::try_from(v)
                    .map(EpsRat::from_int)
                    .map_err(|_| E::custom("integer out of range"))
            }
        }
        d.deserialize_any(V)
    }
}
