//! Exact dense linear algebra over the rationals and over any
//! [`OrderedField`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{OrderedField, Rat};

/// Rows scaled to a common integer lattice (each row by the lcm of its
/// denominators), which leaves the row space unchanged.
pub fn integer_rows(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

/// Rank via fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = integer_rows(rows);
    let ncols = m.first().map_or(0, Vec::len);
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Reduced row-echelon form with zero rows removed; a canonical key for the
/// row space.
#[allow(clippy::needless_range_loop)]
pub fn rref<F: OrderedField>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = F::one() / m[rank][col].clone();
        for c in col..ncols {
            m[rank][c] = m[rank][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = m[r][c].clone() - factor.clone() * m[rank][c].clone();
                m[r][c] = v;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

/// Whether `v` lies in the row space of a matrix already in [`rref`] form.
pub fn in_rref_span<F: OrderedField>(basis: &[Vec<F>], v: &[F]) -> bool {
    let mut r: Vec<F> = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if r[p].is_zero() {
            continue;
        }
        let f = r[p].clone();
        for (x, b) in r.iter_mut().zip(row) {
            *x = x.clone() - f.clone() * b.clone();
        }
    }
    r.iter().all(Zero::is_zero)
}

/// Solves the square system `a x = b`; `None` when singular.
#[allow(clippy::needless_range_loop)]
pub fn solve<F: OrderedField>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = F::one() / a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..n {
                let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                a[r][c] = v;
            }
            let v = b[r].clone() - f * b[col].clone();
            b[r] = v;
        }
    }
    let mut x = vec![F::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let red = rref(&aug);
    if red.len() < n || (0..n).any(|i| red[i][i] != Rat::one()) {
        return None;
    }
    aug = red;
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dimension of the affine span of a point set.
pub fn affine_rank<F: OrderedField>(points: &[Vec<F>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<F>> = rest
        .iter()
        .map(|p| {
            p.iter()
                .zip(first)
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .collect();
    rref(&diffs).len()
}
