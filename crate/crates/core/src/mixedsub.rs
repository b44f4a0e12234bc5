//! Regular mixed subdivisions of `m·Δ_d` (`d` in {1, 2}) through the Cayley
//! trick, their fiber-polytope vertices, dual graphs, and the unit
//! parallelogram cells that meet the boundary of `m·Δ_2` in a single point.
//!
//! Copy `i` of `Δ_d` contributes the Cayley points `(u_i, v)` where `u_i` is
//! the `i`-th vertex of a simplex of dimension `m - 1` and `v` runs over the
//! vertices `0, e_1, ..., e_d` of `Δ_d`. A lifting assigns a height to each of
//! the `m(d+1)` points; the lower facets of the lifted configuration restrict
//! to the cells of the mixed subdivision.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat_serde, rat_vec_serde, EpsRat, OrderedField, Rat};
use crate::linalg::{affine_rank, solve};

pub const MAX_M: usize = 6;

/// The Cayley embedding of `m` copies of `Δ_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyConfig {
    pub d: usize,
    pub m: usize,
}

impl CayleyConfig {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::BadParameters(format!("d = {d} must be 1 or 2")));
        }
        if m < 1 {
            return Err(Error::BadParameters("m must be at least 1".into()));
        }
        if m > MAX_M {
            return Err(Error::SizeGuard {
                what: "m",
                got: m,
                limit: MAX_M,
            });
        }
        Ok(Self { d, m })
    }

    pub fn len(&self) -> usize {
        self.m * (self.d + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `m - 1 + d` of the Cayley polytope.
    pub fn dim(&self) -> usize {
        self.m - 1 + self.d
    }

    /// `(copy, vertex)` of a point index.
    pub fn tag(&self, p: usize) -> (usize, usize) {
        (p / (self.d + 1), p % (self.d + 1))
    }

    pub fn point<F: OrderedField>(&self, p: usize) -> Vec<F> {
        let (copy, v) = self.tag(p);
        let mut x = vec![F::zero(); self.dim()];
        if copy > 0 {
            x[copy - 1] = F::one();
        }
        if v > 0 {
            x[self.m - 1 + v - 1] = F::one();
        }
        x
    }

    pub fn points<F: OrderedField>(&self) -> Vec<Vec<F>> {
        (0..self.len()).map(|p| self.point(p)).collect()
    }
}

/// A cell `F_1 + ... + F_m`, with `F_i` given by its vertices in `0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedCell {
    pub faces: Vec<Vec<usize>>,
    /// Indices of the Cayley points on the lower facet.
    pub points: Vec<usize>,
    #[serde(with = "rat_serde")]
    pub volume: Rat,
}

impl MixedCell {
    /// `sum (|F_i| - 1) = d` and the Cayley cell is a simplex.
    pub fn is_fine(&self, d: usize) -> bool {
        let m = self.faces.len();
        self.points.len() == m + d
    }

    /// Vertices of the cell polytope in the plane (`d = 2`) or the endpoints
    /// of the segment (`d = 1`), in counter-clockwise order.
    pub fn polygon(&self, d: usize) -> Vec<Vec<Rat>> {
        let sums = minkowski_points(&self.faces, d);
        if d == 1 {
            let lo = sums.iter().min().cloned().unwrap_or_default();
            let hi = sums.iter().max().cloned().unwrap_or_default();
            return if lo == hi { vec![lo] } else { vec![lo, hi] };
        }
        convex_hull_2d(sums)
    }
}

fn vertex_coords(v: usize, d: usize) -> Vec<i64> {
    (1..=d).map(|j| i64::from(j == v)).collect()
}

/// All sums `v_1 + ... + v_m` with `v_i` in `F_i`, deduplicated.
fn minkowski_points(faces: &[Vec<usize>], d: usize) -> Vec<Vec<Rat>> {
    let mut acc: Vec<Vec<i64>> = vec![vec![0; d]];
    for f in faces {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for p in &acc {
            for &v in f {
                let q: Vec<i64> = p.iter().zip(vertex_coords(v, d)).map(|(a, b)| a + b).collect();
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|p| p.into_iter().map(|x| Rat::from_integer(x.into())).collect())
        .collect()
}

fn cross(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone-chain hull without collinear points, counter-clockwise.
pub fn convex_hull_2d(mut pts: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Rat>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rat::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rat>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rat::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(poly: &[Vec<Rat>]) -> Rat {
    if poly.len() < 3 {
        return Rat::zero();
    }
    let twice: Rat = (0..poly.len())
        .map(|i| {
            let j = (i + 1) % poly.len();
            &poly[i][0] * &poly[j][1] - &poly[j][0] * &poly[i][1]
        })
        .sum();
    twice / Rat::from_integer(2.into())
}

fn cell_volume(faces: &[Vec<usize>], d: usize) -> Rat {
    let pts = minkowski_points(faces, d);
    if d == 1 {
        let lo = pts.iter().min().expect("nonempty");
        let hi = pts.iter().max().expect("nonempty");
        return &hi[0] - &lo[0];
    }
    polygon_area(&convex_hull_2d(pts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedSubdivision {
    pub d: usize,
    pub m: usize,
    pub lifting: Vec<EpsRat>,
    pub cells: Vec<MixedCell>,
    /// Every Cayley cell is a simplex.
    pub fine: bool,
    /// Set when the lifting does not induce a triangulation of the Cayley
    /// configuration; the cells are still those of the induced subdivision.
    pub non_generic: bool,
}

/// `m^d / d!`.
pub fn dilated_simplex_volume(d: usize, m: usize) -> Rat {
    let fact: i64 = (1..=d as i64).product();
    Rat::new((m as i64).pow(d as u32).into(), fact.into())
}

/// Regular mixed subdivision for a rational lifting.
pub fn regular_mixed_subdivision(d: usize, m: usize, lifting: &[Rat]) -> Result<MixedSubdivision> {
    let cells = lower_cells(&CayleyConfig::new(d, m)?, lifting)?;
    Ok(assemble(d, m, lifting.iter().cloned().map(EpsRat::from_rat).collect(), cells))
}

/// Regular mixed subdivision for a lifting over Q(ε).
pub fn regular_mixed_subdivision_eps(d: usize, m: usize, lifting: &[EpsRat]) -> Result<MixedSubdivision> {
    let cells = lower_cells(&CayleyConfig::new(d, m)?, lifting)?;
    Ok(assemble(d, m, lifting.to_vec(), cells))
}

fn assemble(d: usize, m: usize, lifting: Vec<EpsRat>, masks: Vec<u64>) -> MixedSubdivision {
    let cfg = CayleyConfig { d, m };
    let cells: Vec<MixedCell> = masks
        .into_iter()
        .map(|mask| {
            let points: Vec<usize> = (0..cfg.len()).filter(|&p| mask >> p & 1 == 1).collect();
            let mut faces = vec![Vec::new(); m];
            for &p in &points {
                let (c, v) = cfg.tag(p);
                faces[c].push(v);
            }
            let volume = cell_volume(&faces, d);
            MixedCell { faces, points, volume }
        })
        .collect();
    let fine = cells.iter().all(|c| c.is_fine(d));
    MixedSubdivision {
        d,
        m,
        lifting,
        cells,
        fine,
        non_generic: !fine,
    }
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lower facets of the lifted Cayley configuration as point bitmasks, sorted.
fn lower_cells<F: OrderedField>(cfg: &CayleyConfig, lifting: &[F]) -> Result<Vec<u64>> {
    let n = cfg.len();
    if lifting.len() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n} lifting values"),
            found: format!("{}", lifting.len()),
        });
    }
    let dim = cfg.dim();
    let pts: Vec<Vec<F>> = cfg.points();
    let mut found: Vec<u64> = Vec::new();
    combinations(n, dim + 1, |s| {
        let mask: u64 = s.iter().map(|&p| 1u64 << p).sum();
        let mut copies = vec![false; cfg.m];
        for &p in s {
            copies[cfg.tag(p).0] = true;
        }
        if copies.contains(&false) || found.iter().any(|&c| c & mask == mask) {
            return;
        }
        // affine function a·x + c through the lifted points of s
        let a: Vec<Vec<F>> = s
            .iter()
            .map(|&p| {
                let mut row = pts[p].clone();
                row.push(F::one());
                row
            })
            .collect();
        let b: Vec<F> = s.iter().map(|&p| lifting[p].clone()).collect();
        let Some(sol) = solve(a, b) else {
            return;
        };
        let mut cell = 0u64;
        for q in 0..n {
            let mut h = sol[dim].clone();
            for (x, coef) in pts[q].iter().zip(&sol) {
                if !x.is_zero() {
                    h = h + coef.clone();
                }
            }
            match lifting[q].cmp(&h) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => cell |= 1 << q,
                std::cmp::Ordering::Greater => {}
            }
        }
        found.push(cell);
    });
    found.sort_unstable();
    Ok(found)
}

impl MixedSubdivision {
    /// Exact volume sum and pairwise interior-disjointness of the cells.
    pub fn check_partition(&self) -> Result<()> {
        let total: Rat = self.cells.iter().map(|c| c.volume.clone()).sum();
        let want = dilated_simplex_volume(self.d, self.m);
        if total != want {
            return Err(Error::InvariantBreach(format!(
                "cell volumes sum to {total}, expected {want}"
            )));
        }
        let polys: Vec<Vec<Vec<Rat>>> = self.cells.iter().map(|c| c.polygon(self.d)).collect();
        for i in 0..polys.len() {
            for j in 0..i {
                if interiors_overlap(&polys[i], &polys[j], self.d) {
                    return Err(Error::InvariantBreach(format!(
                        "cells {j} and {i} overlap"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Whether two convex cells have intersecting interiors, by a separating
/// axis test over their edge normals.
fn interiors_overlap(p: &[Vec<Rat>], q: &[Vec<Rat>], d: usize) -> bool {
    if d == 1 {
        if p.len() < 2 || q.len() < 2 {
            return false;
        }
        return p[0][0] < q[1][0] && q[0][0] < p[1][0];
    }
    if p.len() < 3 || q.len() < 3 {
        return false;
    }
    for poly in [p, q] {
        for i in 0..poly.len() {
            let a = &poly[i];
            let b = &poly[(i + 1) % poly.len()];
            let normal = [&b[1] - &a[1], &a[0] - &b[0]];
            let proj = |pts: &[Vec<Rat>]| {
                let vals: Vec<Rat> = pts.iter().map(|x| &x[0] * &normal[0] + &x[1] * &normal[1]).collect();
                (
                    vals.iter().min().cloned().expect("nonempty"),
                    vals.iter().max().cloned().expect("nonempty"),
                )
            };
            let (pl, ph) = proj(p);
            let (ql, qh) = proj(q);
            if ph <= ql || qh <= pl {
                return false;
            }
        }
    }
    true
}

/// A vertex of the fiber polytope: one point of `R^d` per copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberVertex {
    pub coords: Vec<FiberCoord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiberCoord(#[serde(with = "rat_vec_serde")] pub Vec<Rat>);

impl FiberVertex {
    /// `sum_i coords_i`, which equals `vol(mΔ_d) · centroid(mΔ_d)` for every
    /// fine subdivision.
    pub fn total(&self) -> Vec<Rat> {
        let d = self.coords.first().map_or(0, |c| c.0.len());
        (0..d)
            .map(|j| self.coords.iter().map(|c| c.0[j].clone()).sum())
            .collect()
    }
}

/// `sum over cells of vol(cell) · (bary F_1, ..., bary F_m)`.
pub fn fiber_vertex(s: &MixedSubdivision) -> Result<FiberVertex> {
    if !s.fine {
        return Err(Error::NotFine);
    }
    let mut coords = vec![vec![Rat::zero(); s.d]; s.m];
    for cell in &s.cells {
        for (i, face) in cell.faces.iter().enumerate() {
            let k = Rat::from_integer((face.len() as i64).into());
            for &v in face {
                for (j, x) in vertex_coords(v, s.d).into_iter().enumerate() {
                    if x != 0 {
                        coords[i][j] += &cell.volume / &k;
                    }
                }
            }
        }
    }
    Ok(FiberVertex {
        coords: coords.into_iter().map(FiberCoord).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    /// The shared facet as a tuple of faces.
    pub facet: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub nodes: usize,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// Cells sharing a facet: their common Cayley points span a face of
/// codimension one.
pub fn dual_graph(s: &MixedSubdivision) -> DualGraph {
    let cfg = CayleyConfig { d: s.d, m: s.m };
    let pts: Vec<Vec<Rat>> = cfg.points();
    let mut edges = Vec::new();
    for a in 0..s.cells.len() {
        for b in a + 1..s.cells.len() {
            let common: Vec<usize> = s.cells[a]
                .points
                .iter()
                .filter(|p| s.cells[b].points.contains(p))
                .copied()
                .collect();
            if common.len() < cfg.dim() {
                continue;
            }
            let sub: Vec<Vec<Rat>> = common.iter().map(|&p| pts[p].clone()).collect();
            if affine_rank(&sub) + 1 != cfg.dim() {
                continue;
            }
            let mut facet = vec![Vec::new(); s.m];
            for &p in &common {
                let (c, v) = cfg.tag(p);
                facet[c].push(v);
            }
            edges.push(DualEdge { a, b, facet });
        }
    }
    DualGraph {
        nodes: s.cells.len(),
        edges,
    }
}

/// A unit parallelogram cell touching `∂(mΔ_2)` in one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectCell {
    pub cell: usize,
    #[serde(with = "rat_vec_serde")]
    pub contact: Vec<Rat>,
    /// Sides of `mΔ_2` through the contact point, each named by the vertex of
    /// `Δ_2` it is opposite to.
    pub sides: Vec<usize>,
}

fn boundary_sides(p: &[Rat], m: usize) -> Vec<usize> {
    let mm = Rat::from_integer((m as i64).into());
    let mut sides = Vec::new();
    if &p[0] + &p[1] == mm {
        sides.push(0);
    }
    if p[0].is_zero() {
        sides.push(1);
    }
    if p[1].is_zero() {
        sides.push(2);
    }
    sides
}

/// Unit parallelograms (two non-parallel edges of `Δ_2`, all other summands
/// points) meeting `∂(mΔ_2)` in exactly one vertex.
pub fn qcartier_defect_cells(s: &MixedSubdivision) -> Result<Vec<DefectCell>> {
    if s.d != 2 {
        return Err(Error::WrongDimension { expected: 2, got: s.d });
    }
    let mut out = Vec::new();
    for (idx, cell) in s.cells.iter().enumerate() {
        let edges: Vec<&Vec<usize>> = cell.faces.iter().filter(|f| f.len() == 2).collect();
        let is_parallelogram = edges.len() == 2
            && edges[0] != edges[1]
            && cell.faces.iter().all(|f| f.len() <= 2);
        if !is_parallelogram {
            continue;
        }
        let poly = cell.polygon(2);
        let contacts: Vec<&Vec<Rat>> = poly
            .iter()
            .filter(|v| !boundary_sides(v, s.m).is_empty())
            .collect();
        if contacts.len() != 1 {
            continue;
        }
        out.push(DefectCell {
            cell: idx,
            contact: contacts[0].clone(),
            sides: boundary_sides(contacts[0], s.m),
        });
    }
    for dc in &out {
        let poly = s.cells[dc.cell].polygon(2);
        let hits = poly.iter().filter(|v| !boundary_sides(v, s.m).is_empty()).count();
        if hits != 1 {
            return Err(Error::InvariantBreach(format!(
                "defect cell {} meets the boundary in {hits} points",
                dc.cell
            )));
        }
    }
    Ok(out)
}
