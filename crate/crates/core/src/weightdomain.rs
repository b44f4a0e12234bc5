//! Weight vectors, walls `x_I = k` of the weight domain, chamber predicates
//! and wall crossings along segments.
//!
//! Wall enumeration groups coordinates with equal values and enumerates
//! multiplicity vectors instead of subsets; a wall's value only depends on how
//! many indices it takes from each group. Subsets are expanded only for walls
//! that are actually reported.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{EpsRat, Rat};

/// Largest number of weights accepted by the subset enumerations.
pub const MAX_WALL_N: usize = 20;

/// A point `b = (b_1, ..., b_n)` with `0 < b_i <= 1`, attached to `(d, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWeightVector", into = "RawWeightVector")]
pub struct WeightVector {
    d: usize,
    n: usize,
    entries: Vec<EpsRat>,
}

#[derive(Serialize, Deserialize)]
struct RawWeightVector {
    d: usize,
    n: usize,
    weights: Vec<EpsRat>,
}

impl TryFrom<RawWeightVector> for WeightVector {
    type Error = Error;
    fn try_from(raw: RawWeightVector) -> Result<Self> {
        WeightVector::new(raw.d, raw.n, raw.weights)
    }
}

impl From<WeightVector> for RawWeightVector {
    fn from(w: WeightVector) -> Self {
        RawWeightVector {
            d: w.d,
            n: w.n,
            weights: w.entries,
        }
    }
}

fn check_dims(d: usize, n: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::BadParameters(format!("d = {d} must be at least 1")));
    }
    if n < d + 3 {
        return Err(Error::BadParameters(format!(
            "n = {n} must be at least d + 3 = {}",
            d + 3
        )));
    }
    Ok(())
}

impl WeightVector {
    pub fn new(d: usize, n: usize, entries: Vec<EpsRat>) -> Result<Self> {
        check_dims(d, n)?;
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} weights"),
                found: format!("{} weights", entries.len()),
            });
        }
        let one = EpsRat::one();
        if let Some((i, b)) = entries
            .iter()
            .enumerate()
            .find(|(_, b)| !b.is_positive() || **b > one)
        {
            return Err(Error::BadParameters(format!(
                "weight b_{} = {b} is not in (0, 1]",
                i + 1
            )));
        }
        Ok(Self { d, n, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[EpsRat] {
        &self.entries
    }

    pub fn sum(&self) -> EpsRat {
        self.entries.iter().sum()
    }

    /// `sum b_i > d + 1`, the remaining condition for the weight domain.
    pub fn in_domain(&self) -> bool {
        self.sum() > EpsRat::from_int(self.d as i64 + 1)
    }

    /// Entrywise substitution ε := x.
    pub fn eval_at(&self, x: &Rat) -> Result<Vec<Rat>> {
        self.entries.iter().map(|b| b.eval_at(x)).collect()
    }

    /// `(1 - u) * self + u * other`.
    pub fn lerp(&self, other: &Self, u: &EpsRat) -> Result<Self> {
        same_shape(self, other)?;
        let v = EpsRat::one() - u;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| &v * a + u * b)
            .collect();
        Self::new(self.d, self.n, entries)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

fn same_shape(a: &WeightVector, b: &WeightVector) -> Result<()> {
    if (a.d, a.n) != (b.d, b.n) {
        return Err(Error::DimensionMismatch {
            expected: format!("(d, n) = ({}, {})", a.d, a.n),
            found: format!("(d, n) = ({}, {})", b.d, b.n),
        });
    }
    Ok(())
}

fn check_eps(eps: &EpsRat) -> Result<()> {
    if !eps.is_positive() || *eps >= EpsRat::one() {
        return Err(Error::BadParameters(format!("eps = {eps} must lie in (0, 1)")));
    }
    Ok(())
}

/// `t = (1, ..., 1, ε, ..., ε)` with `d + 1` ones.
pub fn t_weights(d: usize, n: usize, eps: &EpsRat) -> Result<WeightVector> {
    check_dims(d, n)?;
    check_eps(eps)?;
    let entries = (0..n)
        .map(|i| if i <= d { EpsRat::one() } else { eps.clone() })
        .collect();
    WeightVector::new(d, n, entries)
}

/// `nt = (1 - ε, ..., 1 - ε, (1 + ε)/(n - d - 1), ...)` with `d + 1` heavy entries.
pub fn nt_weights(d: usize, n: usize, eps: &EpsRat) -> Result<WeightVector> {
    check_dims(d, n)?;
    check_eps(eps)?;
    let heavy = EpsRat::one() - eps;
    let light = (EpsRat::one() + eps) / EpsRat::from_int((n - d - 1) as i64);
    let entries = (0..n)
        .map(|i| if i <= d { heavy.clone() } else { light.clone() })
        .collect();
    WeightVector::new(d, n, entries)
}

/// The auxiliary vector `a = (1 - 1/(d+1) + ε̂, ..., ε, ..., ε)` used to
/// approach `t` from inside a chamber.
pub fn aux_a(d: usize, n: usize, eps: &EpsRat, eps_hat: &EpsRat) -> Result<WeightVector> {
    check_eps_hat(d, n, eps, eps_hat)?;
    let heavy = EpsRat::one() - EpsRat::ratio(1, d as i64 + 1) + eps_hat;
    let entries = (0..n)
        .map(|i| if i <= d { heavy.clone() } else { eps.clone() })
        .collect();
    WeightVector::new(d, n, entries)
}

/// The auxiliary vector `ŵ`, which lies on the wall `x_{d+2} + ... + x_n = 1`.
pub fn aux_w_hat(d: usize, n: usize, eps: &EpsRat, eps_hat: &EpsRat) -> Result<WeightVector> {
    check_eps_hat(d, n, eps, eps_hat)?;
    let heavy = EpsRat::one() - EpsRat::ratio(1, d as i64 + 1) + eps_hat;
    let light = EpsRat::ratio(1, (n - d - 1) as i64);
    let entries = (0..n)
        .map(|i| if i <= d { heavy.clone() } else { light.clone() })
        .collect();
    WeightVector::new(d, n, entries)
}

/// The midpoint of `ŵ` and `nt`, a point of the open segment between them.
pub fn aux_h(d: usize, n: usize, eps: &EpsRat, eps_hat: &EpsRat) -> Result<WeightVector> {
    let w_hat = aux_w_hat(d, n, eps, eps_hat)?;
    w_hat.lerp(&nt_weights(d, n, eps)?, &EpsRat::ratio(1, 2))
}

/// A value of ε̂ inside the admissible range for `a` and `ŵ`:
/// `1/(d+1) - ε²`.
pub fn default_eps_hat(d: usize, eps: &EpsRat) -> EpsRat {
    EpsRat::ratio(1, d as i64 + 1) - eps * eps
}

fn check_eps_hat(d: usize, n: usize, eps: &EpsRat, eps_hat: &EpsRat) -> Result<()> {
    check_dims(d, n)?;
    check_eps(eps)?;
    let top = EpsRat::ratio(1, d as i64 + 1);
    let bottom = &top - &(eps * &EpsRat::ratio((n - d - 1) as i64, d as i64 + 1));
    if !(*eps_hat > bottom && *eps_hat < top) {
        return Err(Error::BadParameters(format!(
            "eps_hat = {eps_hat} must lie strictly between {bottom} and {top}"
        )));
    }
    Ok(())
}

/// The wall `x_I = k`, with `I` a sorted list of 1-based indices.
///
/// The derived order is the canonical wall order: by `k`, then by `I`
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    pub k: usize,
    #[serde(rename = "I")]
    pub subset: Vec<usize>,
}

impl Wall {
    pub fn new(mut subset: Vec<usize>, k: usize) -> Self {
        subset.sort_unstable();
        subset.dedup();
        Self { k, subset }
    }

    /// Checks `2 <= |I| <= n - 2`, `1 <= k <= d` and `I ⊆ {1..n}`.
    pub fn validate(&self, d: usize, n: usize) -> Result<()> {
        let size = self.subset.len();
        let ok = size >= 2
            && size + 2 <= n
            && (1..=d).contains(&self.k)
            && self.subset.iter().all(|&i| (1..=n).contains(&i));
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: format!("a wall for (d, n) = ({d}, {n})"),
                found: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x_{")?;
        for (j, i) in self.subset.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}} = {}", self.k)
    }
}

/// `sum_{i in I} b_i - k`.
pub fn wall_value(wall: &Wall, b: &WeightVector) -> Result<EpsRat> {
    wall.validate(b.d, b.n)?;
    let s: EpsRat = wall.subset.iter().map(|&i| &b.entries[i - 1]).sum();
    Ok(s - EpsRat::from_int(wall.k as i64))
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_WALL_N {
        return Err(Error::SizeGuard {
            what: "n",
            got: n,
            limit: MAX_WALL_N,
        });
    }
    Ok(())
}

/// Partition of `0..keys.len()` into classes of equal keys, in order of first
/// appearance.
fn group_indices<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut reps: Vec<&K> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        match reps.iter().position(|r| *r == k) {
            Some(g) => groups[g].push(i),
            None => {
                reps.push(k);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Calls `f` for every multiplicity vector `0 <= m_g <= sizes[g]`.
fn for_each_multiplicity(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    let mut m = vec![0usize; sizes.len()];
    loop {
        f(&m);
        let mut g = 0;
        loop {
            if g == sizes.len() {
                return;
            }
            if m[g] < sizes[g] {
                m[g] += 1;
                break;
            }
            m[g] = 0;
            g += 1;
        }
    }
}

fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, r, 0, &mut Vec::new(), &mut out);
    out
}

/// All 1-based subsets taking `mults[g]` indices from `groups[g]`.
fn expand_subsets(groups: &[Vec<usize>], mults: &[usize]) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for (g, &m) in groups.iter().zip(mults) {
        let choices = combinations(g, m);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut s = prefix.clone();
                    s.extend(c.iter().map(|i| i + 1));
                    s
                })
            })
            .collect();
    }
    for s in &mut acc {
        s.sort_unstable();
    }
    acc
}

fn weighted_sum(values: &[&EpsRat], mults: &[usize]) -> EpsRat {
    values
        .iter()
        .zip(mults)
        .filter(|(_, &m)| m > 0)
        .map(|(v, &m)| v.scale(&Rat::from_integer(m.into())))
        .sum()
}

/// Every wall through `b`, in canonical order.
pub fn walls_containing(b: &WeightVector) -> Result<Vec<Wall>> {
    guard(b.n)?;
    let groups = group_indices(&b.entries);
    let values: Vec<&EpsRat> = groups.iter().map(|g| &b.entries[g[0]]).collect();
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for_each_multiplicity(&sizes, |m| {
        let size: usize = m.iter().sum();
        if size < 2 || size + 2 > b.n {
            return;
        }
        let Some(s) = weighted_sum(&values, m).as_rat() else {
            return;
        };
        if !s.is_integer() {
            return;
        }
        let k = s.to_integer();
        if k < 1.into() || k > b.d.into() {
            return;
        }
        let k: usize = k.try_into().expect("k bounded by d");
        out.extend(expand_subsets(&groups, m).into_iter().map(|s| Wall { k, subset: s }));
    });
    out.sort();
    Ok(out)
}

/// A wall met in the relative interior of a segment `[b, b']`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub wall: Wall,
    /// Segment parameter in `(0, 1)`.
    pub u0: EpsRat,
    /// `(1 - u0) b + u0 b'`.
    pub point: WeightVector,
}

/// Walls crossed transversally by the open segment from `b` to `b2`, sorted by
/// `u0` and then by canonical wall order.
///
/// A wall containing the whole segment is not a crossing and is not reported.
pub fn segment_walls(b: &WeightVector, b2: &WeightVector) -> Result<Vec<Crossing>> {
    same_shape(b, b2)?;
    guard(b.n)?;
    if b == b2 {
        return Err(Error::BadParameters("segment endpoints coincide".into()));
    }
    let keys: Vec<(&EpsRat, &EpsRat)> = b.entries.iter().zip(&b2.entries).collect();
    let groups = group_indices(&keys);
    let v0: Vec<&EpsRat> = groups.iter().map(|g| &b.entries[g[0]]).collect();
    let v1: Vec<&EpsRat> = groups.iter().map(|g| &b2.entries[g[0]]).collect();
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_multiplicity(&sizes, |m| {
        if failure.is_some() {
            return;
        }
        let size: usize = m.iter().sum();
        if size < 2 || size + 2 > b.n {
            return;
        }
        let s0 = weighted_sum(&v0, m);
        let s1 = weighted_sum(&v1, m);
        for k in 1..=b.d {
            let kk = EpsRat::from_int(k as i64);
            let f0 = &s0 - &kk;
            let f1 = &s1 - &kk;
            let opposite = matches!(
                (f0.signum(), f1.signum()),
                (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
            );
            if !opposite {
                continue;
            }
            let u0 = &f0 / &(&f0 - &f1);
            let point = match b.lerp(b2, &u0) {
                Ok(p) => p,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            };
            for subset in expand_subsets(&groups, m) {
                out.push(Crossing {
                    wall: Wall { k, subset },
                    u0: u0.clone(),
                    point: point.clone(),
                });
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    out.sort_by(|x, y| x.u0.cmp(&y.u0).then_with(|| x.wall.cmp(&y.wall)));
    Ok(out)
}

/// Position of a point relative to one wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "-")]
    Below,
    #[serde(rename = "0")]
    On,
    #[serde(rename = "+")]
    Above,
}

impl From<Ordering> for Side {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Side::Below,
            Ordering::Equal => Side::On,
            Ordering::Greater => Side::Above,
        }
    }
}

/// Signs of `x_I - k` over all walls in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVector {
    pub signs: Vec<Side>,
}

impl SignVector {
    pub fn has_zero(&self) -> bool {
        self.signs.contains(&Side::On)
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

/// Every wall for `(d, n)` in canonical order.
pub fn all_walls(d: usize, n: usize) -> Result<Vec<Wall>> {
    check_dims(d, n)?;
    guard(n)?;
    let subsets = wall_subsets(n);
    Ok((1..=d)
        .flat_map(|k| subsets.iter().map(move |s| Wall { k, subset: s.clone() }))
        .collect())
}

/// Subsets with `2 <= |I| <= n - 2`, sorted lexicographically.
fn wall_subsets(n: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (1..=n).collect();
    let mut all: Vec<Vec<usize>> = (2..=n - 2).flat_map(|r| combinations(&idx, r)).collect();
    all.sort();
    all
}

pub fn sign_vector(b: &WeightVector) -> Result<SignVector> {
    guard(b.n)?;
    let groups = group_indices(&b.entries);
    let mut group_of = vec![0usize; b.n];
    for (g, members) in groups.iter().enumerate() {
        for &i in members {
            group_of[i] = g;
        }
    }
    let values: Vec<&EpsRat> = groups.iter().map(|g| &b.entries[g[0]]).collect();
    let mut cache: HashMap<Vec<usize>, EpsRat> = HashMap::new();
    let sums: Vec<EpsRat> = wall_subsets(b.n)
        .iter()
        .map(|s| {
            let mut m = vec![0usize; groups.len()];
            for &i in s {
                m[group_of[i - 1]] += 1;
            }
            cache
                .entry(m)
                .or_insert_with_key(|m| weighted_sum(&values, m))
                .clone()
        })
        .collect();
    let signs = (1..=b.d)
        .flat_map(|k| {
            let kk = EpsRat::from_int(k as i64);
            sums.iter()
                .map(move |s| Side::from(s.cmp(&kk)))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(SignVector { signs })
}

/// Both points avoid every wall and have equal sign vectors.
pub fn same_chamber(b: &WeightVector, b2: &WeightVector) -> Result<bool> {
    same_shape(b, b2)?;
    let s = sign_vector(b)?;
    let s2 = sign_vector(b2)?;
    Ok(!s.has_zero() && s == s2)
}

/// `b` lies in the closure of the open chamber containing `b2`.
pub fn in_chamber_closure(b: &WeightVector, b2: &WeightVector) -> Result<bool> {
    same_shape(b, b2)?;
    let s = sign_vector(b)?;
    let s2 = sign_vector(b2)?;
    if s2.has_zero() {
        return Ok(false);
    }
    Ok(s.signs
        .iter()
        .zip(&s2.signs)
        .all(|(x, y)| *x == Side::On || x == y))
}

/// Entrywise `b <= b2`.
pub fn leq(b: &WeightVector, b2: &WeightVector) -> Result<bool> {
    same_shape(b, b2)?;
    Ok(b.entries.iter().zip(&b2.entries).all(|(x, y)| x <= y))
}

/// Number of walls for `(d, n)`.
pub fn wall_count(d: usize, n: usize) -> usize {
    let subsets: usize = (2..=n.saturating_sub(2)).map(|r| binomial(n, r)).sum();
    subsets * d
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn e() -> EpsRat {
        EpsRat::eps()
    }

    fn w(subset: &[usize], k: usize) -> Wall {
        Wall::new(subset.to_vec(), k)
    }

    #[test]
    fn t_and_nt_entries() {
        let t = t_weights(2, 6, &e()).unwrap();
        assert_eq!(t.to_string(), "(1, 1, 1, e, e, e)");
        let t = t_weights(3, 8, &e()).unwrap();
        assert_eq!(t.entries().iter().filter(|x| x.is_integer(1)).count(), 4);
        let nt = nt_weights(2, 6, &e()).unwrap();
        assert_eq!(
            nt.to_string(),
            "(1 - e, 1 - e, 1 - e, 1/3 + 1/3*e, 1/3 + 1/3*e, 1/3 + 1/3*e)"
        );
        assert_eq!(nt.sum(), EpsRat::from_int(4) - &e() * &EpsRat::from_int(2));
        assert!(nt.in_domain());
        let nt15 = nt_weights(1, 5, &e()).unwrap();
        assert_eq!(nt15.entries()[4], (EpsRat::one() + e()) / EpsRat::from_int(3));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(t_weights(2, 4, &e()), Err(Error::BadParameters(_))));
        assert!(matches!(t_weights(0, 4, &e()), Err(Error::BadParameters(_))));
        assert!(matches!(nt_weights(2, 6, &EpsRat::zero()), Err(Error::BadParameters(_))));
        assert!(matches!(
            WeightVector::new(1, 4, vec![EpsRat::from_int(2); 4]),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn wall_values() {
        let t = t_weights(2, 6, &e()).unwrap();
        let nt = nt_weights(2, 6, &e()).unwrap();
        let light = w(&[4, 5, 6], 1);
        assert_eq!(wall_value(&light, &t).unwrap(), &e() * &EpsRat::from_int(3) - EpsRat::one());
        assert_eq!(wall_value(&light, &nt).unwrap(), e());
        assert!(wall_value(&w(&[1, 2], 2), &t).unwrap().is_zero());
        assert!(matches!(
            wall_value(&w(&[1, 2], 3), &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn walls_through_t_and_nt() {
        let t = t_weights(2, 6, &e()).unwrap();
        assert_eq!(
            walls_containing(&t).unwrap(),
            vec![w(&[1, 2], 2), w(&[1, 3], 2), w(&[2, 3], 2)]
        );
        let nt = nt_weights(2, 6, &e()).unwrap();
        assert_eq!(
            walls_containing(&nt).unwrap(),
            vec![w(&[1, 4, 5, 6], 2), w(&[2, 4, 5, 6], 2), w(&[3, 4, 5, 6], 2)]
        );
        assert!(walls_containing(&t_weights(1, 5, &e()).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn generic_point_is_on_no_wall() {
        let b = WeightVector::new(
            2,
            6,
            [(97, 100), (89, 100), (83, 100), (31, 100), (29, 100), (37, 1000)]
                .iter()
                .map(|&(p, q)| EpsRat::ratio(p, q))
                .collect(),
        )
        .unwrap();
        assert!(walls_containing(&b).unwrap().is_empty());
        assert!(same_chamber(&b, &b).unwrap());
    }

    #[test]
    fn t_to_nt_crossing() {
        let (d, n) = (2i64, 6i64);
        let t = t_weights(2, 6, &e()).unwrap();
        let nt = nt_weights(2, 6, &e()).unwrap();
        let cs = segment_walls(&t, &nt).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].wall, w(&[4, 5, 6], 1));
        let one = EpsRat::one();
        let u0 = (&one + &(&e() * &EpsRat::from_int(d + 1 - n)))
            / (&one + &(&e() * &EpsRat::from_int(d + 2 - n)));
        assert_eq!(cs[0].u0, u0);
        let heavy = &one - &e() + &(&e() * &e()) / (&one + &(&e() * &EpsRat::from_int(d + 2 - n)));
        assert_eq!(cs[0].point.entries()[0], heavy);
        assert_eq!(cs[0].point.entries()[5], EpsRat::ratio(1, 3));
    }

    #[test]
    fn segment_edge_cases() {
        let t = t_weights(2, 6, &e()).unwrap();
        assert!(matches!(segment_walls(&t, &t), Err(Error::BadParameters(_))));
        let a = aux_a(2, 6, &e(), &default_eps_hat(2, &e())).unwrap();
        let a2 = a.lerp(&t, &EpsRat::ratio(1, 2)).unwrap();
        assert!(segment_walls(&a, &a2).unwrap().is_empty());
        let other = t_weights(1, 6, &e()).unwrap();
        assert!(matches!(segment_walls(&t, &other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn chamber_predicates() {
        let (d, n) = (2, 6);
        let t = t_weights(d, n, &e()).unwrap();
        let a = aux_a(d, n, &e(), &default_eps_hat(d, &e())).unwrap();
        assert!(in_chamber_closure(&t, &a).unwrap());
        assert!(!same_chamber(&t, &a).unwrap());
        assert!(leq(&a, &t).unwrap());

        // concrete instance: ε = 1/100, ε̂ = 1/3 - 1/1000
        let eps = EpsRat::ratio(1, 100);
        let eps_hat = EpsRat::ratio(1, 3) - EpsRat::ratio(1, 1000);
        let tc = t_weights(d, n, &eps).unwrap();
        let ac = aux_a(d, n, &eps, &eps_hat).unwrap();
        assert!(in_chamber_closure(&tc, &ac).unwrap());
        assert!(aux_a(d, n, &eps, &EpsRat::ratio(1, 3)).is_err());

        let t1 = t_weights(1, 7, &e()).unwrap();
        let two_e = &e() * &EpsRat::from_int(2);
        let mut entries = vec![EpsRat::one() - e(); 2];
        entries.extend(std::iter::repeat_n(two_e, 5));
        let b = WeightVector::new(1, 7, entries).unwrap();
        assert!(same_chamber(&t1, &b).unwrap());
    }

    #[test]
    fn auxiliary_chain() {
        for (d, n) in [(1, 5), (2, 6), (2, 7), (3, 8)] {
            let eh = default_eps_hat(d, &e());
            let t = t_weights(d, n, &e()).unwrap();
            let nt = nt_weights(d, n, &e()).unwrap();
            let a = aux_a(d, n, &e(), &eh).unwrap();
            let w_hat = aux_w_hat(d, n, &e(), &eh).unwrap();
            let h = aux_h(d, n, &e(), &eh).unwrap();
            let w = segment_walls(&t, &nt).unwrap().remove(0).point;
            assert!(!sign_vector(&a).unwrap().has_zero());
            assert!(!sign_vector(&h).unwrap().has_zero());
            assert!(in_chamber_closure(&t, &a).unwrap());
            assert!(in_chamber_closure(&w_hat, &a).unwrap());
            assert!(in_chamber_closure(&nt, &h).unwrap());
            assert!(in_chamber_closure(&w, &h).unwrap());
            assert_eq!(sign_vector(&w).unwrap(), sign_vector(&w_hat).unwrap());
            assert!(leq(&a, &t).unwrap() && leq(&a, &w_hat).unwrap());
            assert!(a.in_domain());
        }
    }

    #[test]
    fn closure_of_t_and_order_below_nt_are_exclusive() {
        // With δ = 1/(d+1) - ε̂: t is in the closure of the chamber of `a`
        // iff δ < ε/d (walls with |I ∩ heavy| = d, |I ∩ light| = 1), while
        // ŵ <= nt iff δ >= ε. No admissible ε̂ gives both.
        for (d, n) in [(1, 5), (2, 6), (2, 7), (3, 8), (2, 9), (3, 12)] {
            let t = t_weights(d, n, &e()).unwrap();
            let nt = nt_weights(d, n, &e()).unwrap();
            let top = EpsRat::ratio(1, d as i64 + 1);
            let lowest = &top - &(&e() * &EpsRat::ratio((n - d - 1) as i64, d as i64 + 1));
            let mut deltas = vec![&e() * &e(), &e() / &EpsRat::from_int(2 * d as i64)];
            if n > 2 * d + 2 {
                deltas.push(e());
                deltas.push(&top - &((&lowest + &(&top - &e())) / EpsRat::from_int(2)));
            }
            for delta in deltas {
                let eh = &top - &delta;
                assert!(eh > lowest);
                let a = aux_a(d, n, &e(), &eh).unwrap();
                let w_hat = aux_w_hat(d, n, &e(), &eh).unwrap();
                let closure = in_chamber_closure(&t, &a).unwrap();
                let below = leq(&w_hat, &nt).unwrap();
                assert_eq!(closure, delta < &e() / &EpsRat::from_int(d as i64));
                assert_eq!(below, delta >= e());
                assert!(!(closure && below));
            }
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for (d, n) in [(1, 4), (2, 6), (3, 7)] {
            let walls = all_walls(d, n).unwrap();
            assert_eq!(walls.len(), wall_count(d, n));
            assert!(walls.windows(2).all(|p| p[0] < p[1]));
            let sv = sign_vector(&t_weights(d, n, &e()).unwrap()).unwrap();
            assert_eq!(sv.len(), walls.len());
        }
    }

    #[test]
    fn size_guard() {
        let b = t_weights(2, 21, &e()).unwrap();
        assert!(matches!(walls_containing(&b), Err(Error::SizeGuard { .. })));
    }
}
