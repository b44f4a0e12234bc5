//! Hyperplane arrangements in P^d, their intersection flats, and the
//! flat-sum tests for log canonicity and stability.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{EpsRat, Rat};
use crate::linalg::{bareiss_rank, in_rref_span, rref};
use crate::weightdomain::{nt_weights, t_weights, WeightVector};

/// Largest `n` for [`flats`] unless lattice pruning is requested.
pub const MAX_FLAT_N: usize = 16;

/// `n` hyperplanes `H_i = V(sum_j coeffs[i][j] x_j)` in P^d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArrangement", into = "RawArrangement")]
pub struct Arrangement {
    d: usize,
    n: usize,
    coeffs: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct RawArrangement {
    d: usize,
    n: usize,
    hyperplanes: Vec<Vec<EpsRat>>,
}

impl TryFrom<RawArrangement> for Arrangement {
    type Error = Error;
    fn try_from(raw: RawArrangement) -> Result<Self> {
        let coeffs = raw
            .hyperplanes
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        x.as_rat().ok_or_else(|| {
                            Error::BadParameters(format!("coefficient {x} is not a rational number"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(raw.d, raw.n, coeffs)
    }
}

impl From<Arrangement> for RawArrangement {
    fn from(a: Arrangement) -> Self {
        RawArrangement {
            d: a.d,
            n: a.n,
            hyperplanes: a
                .coeffs
                .into_iter()
                .map(|row| row.into_iter().map(EpsRat::from_rat).collect())
                .collect(),
        }
    }
}

impl Arrangement {
    pub fn new(d: usize, n: usize, coeffs: Vec<Vec<Rat>>) -> Result<Self> {
        if d < 1 || n < d + 3 {
            return Err(Error::BadParameters(format!(
                "need d >= 1 and n >= d + 3, got d = {d}, n = {n}"
            )));
        }
        if coeffs.len() != n || coeffs.iter().any(|r| r.len() != d + 1) {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} rows of length {}", d + 1),
                found: format!(
                    "{} rows of lengths {:?}",
                    coeffs.len(),
                    coeffs.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        if let Some(i) = coeffs.iter().position(|r| r.iter().all(Zero::is_zero)) {
            return Err(Error::BadParameters(format!("hyperplane {} has a zero row", i + 1)));
        }
        Ok(Self { d, n, coeffs })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(d: usize, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let coeffs = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        Self::new(d, n, coeffs)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Vec<Rat>] {
        &self.coeffs
    }

    /// Coefficients right-multiplied by `m`, i.e. the arrangement after the
    /// coordinate change `x = m x'`.
    pub fn transform(&self, m: &[Vec<Rat>]) -> Result<Self> {
        let k = self.d + 1;
        if m.len() != k || m.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: format!("{k}x{k} matrix"),
                found: format!("{} rows", m.len()),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                (0..k)
                    .map(|j| row.iter().zip(m).map(|(a, mr)| a * &mr[j]).sum())
                    .collect()
            })
            .collect();
        Self::new(self.d, self.n, coeffs)
    }
}

/// A nonempty intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flat {
    pub codim: usize,
    /// 1-based indices of every hyperplane containing the flat.
    pub support: Vec<usize>,
    /// Reduced row-echelon basis of the span of the supporting rows.
    #[serde(skip)]
    pub basis: Vec<Vec<Rat>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlatOptions {
    /// Lift the `n` guard. Enumeration walks the flat lattice one hyperplane
    /// at a time, so cost scales with the number of flats, not subsets.
    pub lattice_pruning: bool,
}

/// Every nonempty flat (codim `<= d`), sorted by codim and then support.
pub fn flats(a: &Arrangement) -> Result<Vec<Flat>> {
    flats_with(a, FlatOptions::default())
}

pub fn flats_with(a: &Arrangement, opts: FlatOptions) -> Result<Vec<Flat>> {
    if a.n > MAX_FLAT_N && !opts.lattice_pruning {
        return Err(Error::SizeGuard {
            what: "n",
            got: a.n,
            limit: MAX_FLAT_N,
        });
    }
    let mut seen: HashMap<Vec<Vec<Rat>>, usize> = HashMap::new();
    let mut out: Vec<Flat> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();

    let mut insert = |basis: Vec<Vec<Rat>>, out: &mut Vec<Flat>| -> Option<usize> {
        if seen.contains_key(&basis) {
            return None;
        }
        let support = (0..a.n)
            .filter(|&i| in_rref_span(&basis, &a.coeffs[i]))
            .map(|i| i + 1)
            .collect();
        let idx = out.len();
        out.push(Flat {
            codim: basis.len(),
            support,
            basis: basis.clone(),
        });
        seen.insert(basis, idx);
        Some(idx)
    };

    for row in &a.coeffs {
        if let Some(i) = insert(rref(std::slice::from_ref(row)), &mut out) {
            frontier.push(i);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &f in &frontier {
            if out[f].codim == a.d {
                continue;
            }
            for i in 0..a.n {
                if out[f].support.contains(&(i + 1)) {
                    continue;
                }
                let mut rows = out[f].basis.clone();
                rows.push(a.coeffs[i].clone());
                if let Some(j) = insert(rref(&rows), &mut out) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|x, y| x.codim.cmp(&y.codim).then_with(|| x.support.cmp(&y.support)));
    Ok(out)
}

fn check_match(a: &Arrangement, b: &WeightVector) -> Result<()> {
    if (a.d, a.n) != (b.d(), b.n()) {
        return Err(Error::DimensionMismatch {
            expected: format!("weights for (d, n) = ({}, {})", a.d, a.n),
            found: format!("(d, n) = ({}, {})", b.d(), b.n()),
        });
    }
    Ok(())
}

/// `sum_{i in support} b_i`.
pub fn flat_weight(flat: &Flat, b: &WeightVector) -> EpsRat {
    flat.support.iter().map(|&i| &b.entries()[i - 1]).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum LcVerdict {
    #[serde(rename = "LC")]
    Lc,
    #[serde(rename = "NotLC")]
    NotLc { witness: Flat, weight_sum: EpsRat },
}

impl LcVerdict {
    pub fn is_lc(&self) -> bool {
        matches!(self, LcVerdict::Lc)
    }
}

/// Flat-sum criterion: LC iff every nonempty flat `L` has
/// `sum_{i in support(L)} b_i <= codim(L)`. The witness is the first violating
/// flat in [`flats`] order.
pub fn is_log_canonical(a: &Arrangement, b: &WeightVector) -> Result<LcVerdict> {
    check_match(a, b)?;
    lc_against(&flats(a)?, b)
}

/// [`is_log_canonical`] against a precomputed flat list.
pub fn lc_against(flats: &[Flat], b: &WeightVector) -> Result<LcVerdict> {
    for f in flats {
        let s = flat_weight(f, b);
        if s > EpsRat::from_int(f.codim as i64) {
            return Ok(LcVerdict::NotLc {
                witness: f.clone(),
                weight_sum: s,
            });
        }
    }
    Ok(LcVerdict::Lc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum StabilityVerdict {
    Stable,
    #[serde(rename = "NotLC")]
    NotLc { witness: Flat, weight_sum: EpsRat },
    NotPositive { weight_total: EpsRat },
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }
}

pub fn is_stable(a: &Arrangement, b: &WeightVector) -> Result<StabilityVerdict> {
    check_match(a, b)?;
    stable_against(&flats(a)?, b)
}

pub fn stable_against(flats: &[Flat], b: &WeightVector) -> Result<StabilityVerdict> {
    if let LcVerdict::NotLc { witness, weight_sum } = lc_against(flats, b)? {
        return Ok(StabilityVerdict::NotLc { witness, weight_sum });
    }
    if !b.in_domain() {
        return Ok(StabilityVerdict::NotPositive {
            weight_total: b.sum(),
        });
    }
    Ok(StabilityVerdict::Stable)
}

/// Coordinate hyperplanes `V(x_0), ..., V(x_d)` followed by `n - d - 1`
/// copies of `V(x_0 + ... + x_d)`.
pub fn e_configuration(d: usize, n: usize) -> Result<Arrangement> {
    if d < 1 || n < d + 3 {
        return Err(Error::BadParameters(format!(
            "need d >= 1 and n >= d + 3, got d = {d}, n = {n}"
        )));
    }
    let coeffs = (0..n)
        .map(|i| {
            (0..=d)
                .map(|j| {
                    if i > d || i == j {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    Arrangement::new(d, n, coeffs)
}

/// Projective equivalence with the e-configuration: `H_{d+2} = ... = H_n`
/// and `H_1, ..., H_{d+2}` linearly general.
pub fn is_e_type(a: &Arrangement) -> bool {
    let k = a.d + 1;
    let last = &a.coeffs[k..];
    if last.windows(2).any(|p| bareiss_rank(&[p[0].clone(), p[1].clone()]) != 1) {
        return false;
    }
    let first: Vec<Vec<Rat>> = a.coeffs[..=k].to_vec();
    (0..=k).all(|skip| {
        let rows: Vec<Vec<Rat>> = first
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, r)| r.clone())
            .collect();
        bareiss_rank(&rows) == k
    })
}

/// For a `t`-stable arrangement: `nt`-stability holds exactly when the
/// arrangement is not of e-type. Returns whether that exclusive-or holds.
pub fn dichotomy_check(a: &Arrangement) -> Result<bool> {
    let eps = EpsRat::eps();
    let fl = flats(a)?;
    let t = t_weights(a.d, a.n, &eps)?;
    if !stable_against(&fl, &t)?.is_stable() {
        return Err(Error::PreconditionViolated(
            "arrangement is not stable for the weights t".into(),
        ));
    }
    let nt = nt_weights(a.d, a.n, &eps)?;
    let nt_stable = stable_against(&fl, &nt)?.is_stable();
    Ok(nt_stable != is_e_type(a))
}
