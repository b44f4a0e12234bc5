//! Intersection numbers on the blow-up of P^d at a point, and Kleiman-type
//! ampleness tests on surfaces given by an intersection matrix of boundary
//! curves.
//!
//! On `Bl_p P^d` a divisor is `aH·H + aE·E` and curves are tested against the
//! three classes `e` (a line in `E`), `f` (strict transform of a line through
//! `p`) and `s` (a line missing `p`):
//!
//! | | e | f | s |
//! |---|---|---|---|
//! | H | 0 | 1 | 1 |
//! | E | -1 | 1 | 0 |

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat_matrix_serde, EpsRat, Rat};

/// The class `aH·H + aE·E` on `Bl_p P^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupDivisor {
    pub d: usize,
    #[serde(rename = "aH")]
    pub a_h: EpsRat,
    #[serde(rename = "aE")]
    pub a_e: EpsRat,
}

impl BlowupDivisor {
    pub fn new(d: usize, a_h: EpsRat, a_e: EpsRat) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadParameters(format!("d = {d} must be at least 2")));
        }
        Ok(Self { d, a_h, a_e })
    }

    pub fn hyperplane(d: usize) -> Result<Self> {
        Self::new(d, EpsRat::one(), EpsRat::zero())
    }

    pub fn exceptional(d: usize) -> Result<Self> {
        Self::new(d, EpsRat::zero(), EpsRat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.d, other.d);
        Self {
            d: self.d,
            a_h: &self.a_h + &other.a_h,
            a_e: &self.a_e + &other.a_e,
        }
    }

    pub fn scale(&self, c: &EpsRat) -> Self {
        Self {
            d: self.d,
            a_h: &self.a_h * c,
            a_e: &self.a_e * c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestCurve {
    /// `e`: a line in the exceptional divisor.
    #[serde(rename = "e")]
    ELine,
    /// `f`: strict transform of a line through the centre.
    #[serde(rename = "f")]
    LineThroughP,
    /// `s`: a line missing the centre.
    #[serde(rename = "s")]
    LineMissingP,
}

impl TestCurve {
    pub const ALL: [TestCurve; 3] = [TestCurve::ELine, TestCurve::LineThroughP, TestCurve::LineMissingP];

    /// `(H·C, E·C)`.
    fn table(self) -> (i64, i64) {
        match self {
            TestCurve::ELine => (0, -1),
            TestCurve::LineThroughP => (1, 1),
            TestCurve::LineMissingP => (1, 0),
        }
    }
}

pub fn pair(div: &BlowupDivisor, c: TestCurve) -> EpsRat {
    let (h, e) = c.table();
    &div.a_h * &EpsRat::from_int(h) + &div.a_e * &EpsRat::from_int(e)
}

/// `K = -(d+1) H + (d-1) E`.
pub fn canonical_class(d: usize) -> Result<BlowupDivisor> {
    BlowupDivisor::new(d, EpsRat::from_int(-(d as i64 + 1)), EpsRat::from_int(d as i64 - 1))
}

/// The log canonical divisor of the blown-up component of the degeneration
/// model: `E + K + (d+1)(1-ε)(H - E) + (1+ε) H`, summed term by term.
pub fn degeneration_log_divisor(d: usize, n: usize, eps: &EpsRat) -> Result<BlowupDivisor> {
    if n < d + 3 {
        return Err(Error::BadParameters(format!("n = {n} must be at least d + 3")));
    }
    let conductor = BlowupDivisor::exceptional(d)?;
    let k = canonical_class(d)?;
    let h = BlowupDivisor::hyperplane(d)?;
    let strict = h.add(&conductor.scale(&EpsRat::from_int(-1)));
    let heavy = strict.scale(&(EpsRat::from_int(d as i64 + 1) * (EpsRat::one() - eps)));
    let light = h.scale(&(EpsRat::one() + eps));
    Ok(conductor.add(&k).add(&heavy).add(&light))
}

/// Positive against `e`, `f` and `s`.
pub fn is_ample_blowup(div: &BlowupDivisor) -> bool {
    TestCurve::ALL.iter().all(|&c| pair(div, c).is_positive())
}

/// Coefficient `1 - (d+1)ε` of `H` in the log canonical divisor of the
/// P^d component.
pub fn y1_log_divisor(d: usize, eps: &EpsRat) -> EpsRat {
    EpsRat::one() - EpsRat::from_int(d as i64 + 1) * eps.clone()
}

/// Degree on a ruling `f` of `K + conductor + c·(d+1)(H - E)`, for a
/// conductor given as a divisor class.
pub fn fiber_degree(
    d: usize,
    conductor: &BlowupDivisor,
    heavy_coeff: &EpsRat,
) -> Result<EpsRat> {
    let k = canonical_class(d)?;
    let strict = BlowupDivisor::new(d, EpsRat::one(), EpsRat::from_int(-1))?;
    let div = k
        .add(conductor)
        .add(&strict.scale(&(EpsRat::from_int(d as i64 + 1) * heavy_coeff.clone())));
    Ok(pair(&div, TestCurve::LineThroughP))
}

/// Degree on a ruling of the log divisor of an intermediate exceptional
/// component, with conductor `E + H` and heavy coefficient `1 - ε`.
pub fn ruled_fiber_degree(d: usize, eps: &EpsRat) -> Result<EpsRat> {
    let conductor = BlowupDivisor::new(d, EpsRat::one(), EpsRat::one())?;
    fiber_degree(d, &conductor, &(EpsRat::one() - eps))
}

/// How a torus-fixed curve of the modified surface meets the boundary:
/// `base` is its degree against `K + conductor`, `heavy` and `light` count
/// its transverse contacts with the curves carrying weight `1 - ε` and
/// `(1 + ε)/(n - 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveIncidence {
    pub base: i64,
    pub heavy: i64,
    pub light: i64,
}

impl CurveIncidence {
    /// The exceptional curve of the blow-up at the isolated contact point.
    pub const EXCEPTIONAL: CurveIncidence = CurveIncidence { base: 1, heavy: -1, light: 0 };
    /// Worst case for a strict-transformed ruling: two heavy contacts, one light.
    pub const RULING_LOWER: CurveIncidence = CurveIncidence { base: -2, heavy: 2, light: 1 };
}

pub fn modification_pairing(n: usize, eps: &EpsRat, c: CurveIncidence) -> Result<EpsRat> {
    if n < 5 {
        return Err(Error::BadParameters(format!("n = {n} must be at least 5")));
    }
    let light = (EpsRat::one() + eps) / EpsRat::from_int(n as i64 - 3);
    Ok(EpsRat::from_int(c.base)
        + EpsRat::from_int(c.heavy) * (EpsRat::one() - eps)
        + EpsRat::from_int(c.light) * light)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModificationChecks {
    #[serde(rename = "onE")]
    pub on_e: EpsRat,
    #[serde(rename = "onR_lower")]
    pub on_r_lower: EpsRat,
}

impl ModificationChecks {
    pub fn all_positive(&self) -> bool {
        self.on_e.is_positive() && self.on_r_lower.is_positive()
    }
}

pub fn modification_checks(n: usize, eps: &EpsRat) -> Result<ModificationChecks> {
    Ok(ModificationChecks {
        on_e: modification_pairing(n, eps, CurveIncidence::EXCEPTIONAL)?,
        on_r_lower: modification_pairing(n, eps, CurveIncidence::RULING_LOWER)?,
    })
}

/// A surface known through the intersection matrix of `m` boundary curves,
/// with a divisor written in terms of those curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingSurface {
    #[serde(with = "rat_matrix_serde")]
    pub matrix: Vec<Vec<Rat>>,
    pub divisor: Vec<EpsRat>,
}

impl PairingSurface {
    pub fn new(matrix: Vec<Vec<Rat>>, divisor: Vec<EpsRat>) -> Result<Self> {
        let s = Self { matrix, divisor };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let m = self.matrix.len();
        if self.matrix.iter().any(|r| r.len() != m) || self.divisor.len() != m {
            return Err(Error::DimensionMismatch {
                expected: format!("{m}x{m} matrix and {m} divisor coefficients"),
                found: format!(
                    "row lengths {:?}, {} coefficients",
                    self.matrix.iter().map(Vec::len).collect::<Vec<_>>(),
                    self.divisor.len()
                ),
            });
        }
        if (0..m).any(|i| (0..i).any(|j| self.matrix[i][j] != self.matrix[j][i])) {
            return Err(Error::BadParameters("intersection matrix is not symmetric".into()));
        }
        Ok(())
    }

    /// `D·C_j` for every boundary curve.
    pub fn pairings(&self) -> Result<Vec<EpsRat>> {
        self.validate()?;
        Ok(pair_matrix(&self.matrix, &self.divisor))
    }

    /// `P^1 x P^1` with the two rulings.
    pub fn p1xp1(divisor: [EpsRat; 2]) -> Self {
        let m = vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::one(), Rat::zero()],
        ];
        Self {
            matrix: m,
            divisor: divisor.to_vec(),
        }
    }

    /// The blow-up of P^2 at a point, boundary curves `[E, f1, f2, H]`,
    /// carrying the class `aH·H + aE·E`.
    pub fn blowup_p2(div: &BlowupDivisor) -> Self {
        let r = |x: i64| Rat::from_integer(x.into());
        let m = vec![
            vec![r(-1), r(1), r(1), r(0)],
            vec![r(1), r(0), r(0), r(1)],
            vec![r(1), r(0), r(0), r(1)],
            vec![r(0), r(1), r(1), r(1)],
        ];
        Self {
            matrix: m,
            divisor: vec![div.a_e.clone(), EpsRat::zero(), EpsRat::zero(), div.a_h.clone()],
        }
    }
}

fn pair_matrix(matrix: &[Vec<Rat>], coeffs: &[EpsRat]) -> Vec<EpsRat> {
    (0..matrix.len())
        .map(|j| {
            coeffs
                .iter()
                .zip(matrix)
                .map(|(c, row)| c.scale(&row[j]))
                .sum()
        })
        .collect()
}

/// Strictly positive against every listed curve.
pub fn ample_from_pairing(s: &PairingSurface) -> Result<bool> {
    Ok(s.pairings()?.iter().all(EpsRat::is_positive))
}

/// For `A` positive on every curve and any `D`, the supremum `c*` of the `c`
/// with `A + cD` positive on every curve: the minimum of `A·L / (-D·L)` over
/// curves with `D·L < 0`. `None` when no curve pairs negatively with `D`.
pub fn ample_threshold(matrix: &[Vec<Rat>], a: &[Rat], d: &[Rat]) -> Result<Option<Rat>> {
    let m = matrix.len();
    if a.len() != m || d.len() != m || matrix.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: format!("{m} coefficients"),
            found: format!("{} and {}", a.len(), d.len()),
        });
    }
    let lift = |v: &[Rat]| v.iter().cloned().map(EpsRat::from_rat).collect::<Vec<_>>();
    let pa = pair_matrix(matrix, &lift(a));
    let pd = pair_matrix(matrix, &lift(d));
    if pa.iter().any(|x| !x.is_positive()) {
        return Err(Error::PreconditionViolated(
            "A must pair positively with every curve".into(),
        ));
    }
    Ok(pa
        .iter()
        .zip(&pd)
        .filter(|(_, y)| y.is_negative())
        .map(|(x, y)| (x / &(-y.clone())).as_rat().expect("rational input"))
        .min())
}
