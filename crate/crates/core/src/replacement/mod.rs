//! One-parameter families of hyperplanes `V(a_0(t) + a_1(t) x_1 + ... + a_d(t) x_d)`
//! tending to `V(x_1)`, their limit sections on the exceptional divisor, and
//! the broken-pair model built from them.
//!
//! Input is expected in the chart where the common limit is `V(x_1)`:
//! `a_1(0) != 0` and `a_j(0) = 0` for `j != 1`. [`normalize_family`] moves a
//! family with any common limit hyperplane into that chart.

mod jet;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use jet::JetPoly;

use crate::error::{Error, Result};
use crate::exactnum::{rat_serde, rat_vec_serde, EpsRat, Rat};
use crate::intersect::{degeneration_log_divisor, is_ample_blowup, y1_log_divisor};
use crate::linalg::{bareiss_rank, inverse};

/// The affine function `c_0 + c_2 x_2 + ... + c_d x_d` on the exceptional
/// divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LimitSection {
    #[serde(with = "rat_serde")]
    pub c0: Rat,
    /// `c_2, ..., c_d`.
    #[serde(with = "rat_vec_serde")]
    pub c: Vec<Rat>,
}

impl fmt::Display for LimitSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c0)?;
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if *c < Rat::zero() { ("-", -c) } else { ("+", c.clone()) };
            if mag == Rat::from_integer(1.into()) {
                write!(f, " {sign} x_{}", j + 2)?;
            } else {
                write!(f, " {sign} {mag}*x_{}", j + 2)?;
            }
        }
        Ok(())
    }
}

fn check_normal_form(l: &[JetPoly], label: &str) -> Result<()> {
    if l.len() < 2 {
        return Err(Error::NotInNormalForm(format!(
            "{label}: need at least the coefficients a_0, a_1"
        )));
    }
    if l[1].at_zero().is_zero() {
        return Err(Error::NotInNormalForm(format!("{label}: a_1(0) = 0")));
    }
    if let Some(j) = (0..l.len()).find(|&j| j != 1 && !l[j].at_zero().is_zero()) {
        return Err(Error::NotInNormalForm(format!("{label}: a_{j}(0) != 0")));
    }
    Ok(())
}

/// First-order limit `σ_0`: `c_0 = -a_0'(0)/a_1(0)`, `c_j = -a_j'(0)/a_1(0)`.
pub fn limit_section(l: &[JetPoly]) -> Result<LimitSection> {
    check_normal_form(l, "hyperplane")?;
    let order = l.iter().map(JetPoly::order).min().unwrap_or(0);
    if order < 2 {
        return Err(Error::InsufficientTruncation { needed: 2, got: order });
    }
    let a1 = l[1].at_zero();
    Ok(LimitSection {
        c0: -l[0].coeff(1) / a1,
        c: l[2..].iter().map(|a| -a.coeff(1) / a1).collect(),
    })
}

/// Hyperplane families in normal form, all truncated to a common order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct JetFamily {
    d: usize,
    order: usize,
    members: Vec<Vec<JetPoly>>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    d: usize,
    truncation: usize,
    members: Vec<Vec<String>>,
}

impl TryFrom<RawFamily> for JetFamily {
    type Error = Error;
    fn try_from(raw: RawFamily) -> Result<Self> {
        let members = raw
            .members
            .iter()
            .map(|m| m.iter().map(|s| JetPoly::parse(s, raw.truncation)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        JetFamily::new(raw.d, members)
    }
}

impl From<JetFamily> for RawFamily {
    fn from(f: JetFamily) -> Self {
        RawFamily {
            d: f.d,
            truncation: f.order,
            members: f
                .members
                .iter()
                .map(|m| m.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl JetFamily {
    /// Validates `d >= 2`, member lengths and normal form; the common order
    /// is the smallest order among all jets.
    pub fn new(d: usize, members: Vec<Vec<JetPoly>>) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadParameters(format!("d = {d} must be at least 2")));
        }
        if members.is_empty() {
            return Err(Error::BadParameters("family has no members".into()));
        }
        if let Some(m) = members.iter().find(|m| m.len() != d + 1) {
            return Err(Error::DimensionMismatch {
                expected: format!("{} coefficients per member", d + 1),
                found: format!("{}", m.len()),
            });
        }
        for (i, m) in members.iter().enumerate() {
            check_normal_form(m, &format!("member {}", i + 1))?;
        }
        let order = members.iter().flatten().map(JetPoly::order).min().unwrap_or(1);
        let members = members
            .into_iter()
            .map(|m| m.into_iter().map(|a| a.truncate(order)).collect())
            .collect();
        Ok(Self { d, order, members })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[Vec<JetPoly>] {
        &self.members
    }

    /// Every member divided by its unit `a_1(t)`.
    pub fn normalized(&self) -> Vec<Vec<JetPoly>> {
        self.members
            .iter()
            .map(|m| {
                let inv = m[1].inverse().expect("normal form guarantees a unit");
                m.iter().map(|a| a.mul(&inv)).collect()
            })
            .collect()
    }
}

/// Least `k >= 1` such that the normalized members are not all congruent
/// modulo `t^{k+1}`.
pub fn separation_depth(f: &JetFamily) -> Result<usize> {
    if f.members.len() < 2 {
        return Err(Error::BadParameters("separation needs at least two members".into()));
    }
    let norm = f.normalized();
    depth_of(&norm, f.order)
}

fn depth_of(norm: &[Vec<JetPoly>], order: usize) -> Result<usize> {
    let first = &norm[0];
    (1..order)
        .find(|&k| {
            norm[1..]
                .iter()
                .any(|m| m.iter().zip(first).any(|(a, b)| a.coeff(k) != b.coeff(k)))
        })
        .ok_or(Error::IndistinguishableAtTruncation { truncation: order })
}

/// Sections on the last exceptional divisor: for each member the negated
/// `t^s` coefficients of `a_0/a_1, a_2/a_1, ..., a_d/a_1`, with `s` the
/// separation depth. Lower-order terms are common to all members and drop out.
pub fn separated_sections(f: &JetFamily) -> Result<Vec<LimitSection>> {
    let s = separation_depth(f)?;
    Ok(f.normalized()
        .iter()
        .map(|m| LimitSection {
            c0: -m[0].coeff(s),
            c: m[2..].iter().map(|a| -a.coeff(s)).collect(),
        })
        .collect())
}

/// The broken pair: `P^d` with `d + 2` general hyperplanes glued to the
/// blow-up carrying the sections of the colliding hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationModel {
    pub d: usize,
    pub n: usize,
    pub depth: usize,
    /// Section of `C_{d+2}, ..., C_n`.
    pub sections: Vec<LimitSection>,
    /// Classes of coinciding sections, as hyperplane labels in `d+2..=n`.
    pub classes: Vec<Vec<usize>>,
}

impl DegenerationModel {
    pub fn from_sections(d: usize, n: usize, depth: usize, sections: Vec<LimitSection>) -> Result<Self> {
        if d < 2 || n < d + 3 {
            return Err(Error::BadParameters(format!(
                "need d >= 2 and n >= d + 3, got d = {d}, n = {n}"
            )));
        }
        if sections.len() != n - d - 1 {
            return Err(Error::DimensionMismatch {
                expected: format!("{} sections", n - d - 1),
                found: format!("{}", sections.len()),
            });
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<&LimitSection> = Vec::new();
        for (i, s) in sections.iter().enumerate() {
            let label = d + 2 + i;
            match reps.iter().position(|r| *r == s) {
                Some(c) => classes[c].push(label),
                None => {
                    reps.push(s);
                    classes.push(vec![label]);
                }
            }
        }
        Ok(Self {
            d,
            n,
            depth,
            sections,
            classes,
        })
    }

    /// At least two distinct sections and no more than `n - d - 2` coinciding.
    pub fn multiplicity_ok(&self) -> bool {
        let largest = self.classes.iter().map(Vec::len).max().unwrap_or(0);
        self.classes.len() >= 2 && largest + self.d + 2 <= self.n
    }
}

pub fn stable_replacement_model(f: &JetFamily, n: usize) -> Result<DegenerationModel> {
    if n < f.d + 3 || f.members.len() != n - f.d - 1 {
        return Err(Error::BadParameters(format!(
            "family has {} members, expected n - d - 1 = {}",
            f.members.len(),
            n.saturating_sub(f.d + 1)
        )));
    }
    let depth = separation_depth(f)?;
    DegenerationModel::from_sections(f.d, n, depth, separated_sections(f)?)
}

/// Ampleness of the log divisor on both components and the coincidence bound.
pub fn validate_degeneration(m: &DegenerationModel, eps: &EpsRat) -> bool {
    let Ok(div) = degeneration_log_divisor(m.d, m.n, eps) else {
        return false;
    };
    is_ample_blowup(&div) && y1_log_divisor(m.d, eps).is_positive() && m.multiplicity_ok()
}

/// Moves a family whose members share a limit hyperplane into the chart where
/// that limit is `V(x_1)`. Returns the family and the coordinate change `M`
/// (new coefficients are `a(t)·M`).
pub fn normalize_family(d: usize, members: Vec<Vec<JetPoly>>) -> Result<(JetFamily, Vec<Vec<Rat>>)> {
    let k = d + 1;
    if members.is_empty() || members.iter().any(|m| m.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: format!("members with {k} coefficients"),
            found: format!("{:?}", members.iter().map(Vec::len).collect::<Vec<_>>()),
        });
    }
    let limit = |m: &[JetPoly]| m.iter().map(|a| a.at_zero().clone()).collect::<Vec<Rat>>();
    let v = limit(&members[0]);
    if v.iter().all(Zero::is_zero) {
        return Err(Error::NotInNormalForm("member 1 has no limit hyperplane".into()));
    }
    for (i, m) in members.iter().enumerate() {
        let w = limit(m);
        if w.iter().all(Zero::is_zero) || bareiss_rank(&[v.clone(), w]) != 1 {
            return Err(Error::NotInNormalForm(format!(
                "member {} has a different limit hyperplane",
                i + 1
            )));
        }
    }
    // Rows of P: v in position 1, unit vectors elsewhere; then v·P^{-1} = e_1.
    let unit = |j: usize| (0..k).map(|i| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect::<Vec<Rat>>();
    let mut others: Vec<Vec<Rat>> = Vec::new();
    for j in 0..k {
        let mut trial = vec![v.clone()];
        trial.extend(others.iter().cloned());
        trial.push(unit(j));
        if bareiss_rank(&trial) == trial.len() {
            others.push(unit(j));
        }
        if others.len() == d {
            break;
        }
    }
    let mut p = Vec::with_capacity(k);
    p.push(others[0].clone());
    p.push(v);
    p.extend(others[1..].iter().cloned());
    let m = inverse(&p).ok_or_else(|| Error::InvariantBreach("completion is singular".into()))?;
    let moved = members
        .iter()
        .map(|mem| {
            (0..k)
                .map(|c| {
                    let order = mem.iter().map(JetPoly::order).min().unwrap_or(1);
                    mem.iter()
                        .zip(&m)
                        .fold(JetPoly::zero(order), |acc, (a, row)| acc.add(&a.scale(&row[c])))
                })
                .collect()
        })
        .collect();
    Ok((JetFamily::new(d, moved)?, m))
}
