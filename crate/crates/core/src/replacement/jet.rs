//! Power series in `t` truncated modulo `t^T`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational_function, EpsPoly, Rat};

/// `a_0 + a_1 t + ... + a_{T-1} t^{T-1} mod t^T`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetPoly {
    coeffs: Vec<Rat>,
}

impl JetPoly {
    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::BadParameters("truncation order must be at least 1".into()));
        }
        coeffs.resize(order, Rat::zero());
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order.max(1)],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = c;
        j
    }

    /// Reads a rational function of `t` such as `5*t + t^2` or `1/(1 - t)` and
    /// expands it modulo `t^order`.
    pub fn parse(src: &str, order: usize) -> Result<Self> {
        let f = parse_rational_function(src, "t")?;
        let num = Self::from_poly(f.numer(), order)?;
        let den = Self::from_poly(f.denom(), order)?;
        if den.at_zero().is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(num.mul(&den.inverse()?))
    }

    fn from_poly(p: &EpsPoly, order: usize) -> Result<Self> {
        Self::new(p.coeffs().iter().take(order).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn at_zero(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn is_unit(&self) -> bool {
        !self.at_zero().is_zero()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..order.clamp(1, self.order())].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.order().min(other.order());
        Self {
            coeffs: (0..t).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.order().min(other.order());
        Self {
            coeffs: (0..t).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.order().min(other.order());
        let coeffs = (0..t)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
            .collect();
        Self { coeffs }
    }

    /// Inverse of a unit, by the usual recursion on coefficients.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::DivisionByZero);
        }
        let a0 = self.at_zero().clone();
        let mut inv: Vec<Rat> = Vec::with_capacity(self.order());
        inv.push(Rat::one() / &a0);
        for k in 1..self.order() {
            let s: Rat = (1..=k).map(|i| &self.coeffs[i] * &inv[k - i]).sum();
            inv.push(-s / &a0);
        }
        Ok(Self { coeffs: inv })
    }

    /// Equal coefficients in degrees `< k`.
    pub fn congruent_mod(&self, other: &Self, k: usize) -> bool {
        (0..k).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        EpsPoly::from_coeffs(self.coeffs.clone()).fmt_with_var(f, "t")
    }
}

impl Serialize for JetPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reads a bare jet string, keeping every stored coefficient. Families carry
/// their truncation order separately and re-truncate.
impl<'de> Deserialize<'de> for JetPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        JetPoly::parse(&s, crate::exactnum::MAX_DEGREE + 1).map_err(D::Error::custom)
    }
}
