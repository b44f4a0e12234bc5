//! Golden replay of the closed-form values the library is expected to
//! reproduce. Expected values are written as formulas in `e` and evaluated at
//! the run's ε (symbolic or concrete).

use serde::Serialize;

use hyperwall::arrangement::{e_configuration, is_log_canonical, LcVerdict};
use hyperwall::exactnum::parse_rational_function;
use hyperwall::intersect::{
    canonical_class, degeneration_log_divisor, is_ample_blowup, modification_checks, pair,
    ruled_fiber_degree, y1_log_divisor, BlowupDivisor, TestCurve,
};
use hyperwall::weightdomain::{nt_weights, segment_walls, t_weights, walls_containing, Wall};
use hyperwall::EpsRat;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    fn push(&mut self, name: String, expected: String, got: String, pass: bool) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(Check {
            name,
            expected,
            got,
            pass,
        });
    }

    /// Compares `got` against the formula `expected`, instantiated at `eps`.
    fn value(&mut self, name: String, expected: &str, got: hyperwall::Result<EpsRat>, eps: &EpsRat) {
        let want = instantiate(expected, eps);
        match (want, got) {
            (Ok(w), Ok(g)) => {
                let pass = w == g;
                self.push(name, format!("{expected} = {w}"), g.to_string(), pass)
            }
            (Err(e), _) => self.push(name, expected.to_string(), format!("bad formula: {e}"), false),
            (_, Err(e)) => self.push(name, expected.to_string(), format!("error: {e}"), false),
        }
    }

    fn flag(&mut self, name: String, expected: bool, got: hyperwall::Result<bool>) {
        match got {
            Ok(g) => self.push(name, expected.to_string(), g.to_string(), g == expected),
            Err(e) => self.push(name, expected.to_string(), format!("error: {e}"), false),
        }
    }

    fn walls(&mut self, name: String, expected: Vec<Wall>, got: hyperwall::Result<Vec<Wall>>) {
        let show = |ws: &[Wall]| {
            let parts: Vec<String> = ws.iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join("; "))
        };
        match got {
            Ok(g) => {
                let pass = g == expected;
                self.push(name, show(&expected), show(&g), pass)
            }
            Err(e) => self.push(name, show(&expected), format!("error: {e}"), false),
        }
    }
}

fn instantiate(formula: &str, eps: &EpsRat) -> hyperwall::Result<EpsRat> {
    let f = parse_rational_function(formula, "e")?;
    match eps.as_rat() {
        Some(x) => Ok(EpsRat::from_rat(f.eval_at(&x)?)),
        None => Ok(f),
    }
}

const WALL_CASES: [(usize, usize); 5] = [(1, 5), (1, 6), (2, 6), (2, 7), (3, 8)];

/// Subsets of `{1..d+1}` of size `2..=d`, each on the wall `x_I = |I|`.
fn expected_t_walls(d: usize) -> Vec<Wall> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (d + 1)) {
        let size = mask.count_ones() as usize;
        if (2..=d).contains(&size) {
            let subset: Vec<usize> = (0..=d).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            out.push(Wall::new(subset, size));
        }
    }
    out.sort();
    out
}

/// `x_i + x_{d+2} + ... + x_n = 2` for each `i <= d+1`; none when `d = 1`.
fn expected_nt_walls(d: usize, n: usize) -> Vec<Wall> {
    if d < 2 {
        return Vec::new();
    }
    let mut out: Vec<Wall> = (1..=d + 1)
        .map(|i| {
            let mut s = vec![i];
            s.extend(d + 2..=n);
            Wall::new(s, 2)
        })
        .collect();
    out.sort();
    out
}

fn weight_checks(r: &mut Report, eps: &EpsRat) {
    for (d, n) in WALL_CASES {
        let t = t_weights(d, n, eps);
        let nt = nt_weights(d, n, eps);
        let (t, nt) = match (t, nt) {
            (Ok(t), Ok(nt)) => (t, nt),
            (Err(e), _) | (_, Err(e)) => {
                r.push(format!("weights ({d},{n})"), "valid".into(), format!("error: {e}"), false);
                continue;
            }
        };
        r.walls(format!("walls through t({d},{n})"), expected_t_walls(d), walls_containing(&t));
        r.walls(format!("walls through nt({d},{n})"), expected_nt_walls(d, n), walls_containing(&nt));

        let crossings = segment_walls(&t, &nt);
        let crossings = match crossings {
            Ok(c) => c,
            Err(e) => {
                r.push(format!("segment t-nt ({d},{n})"), "1 crossing".into(), format!("error: {e}"), false);
                continue;
            }
        };
        let wall = Wall::new((d + 2..=n).collect(), 1);
        let single = crossings.len() == 1 && crossings[0].wall == wall;
        r.push(
            format!("segment t-nt ({d},{n}) crosses only {wall}"),
            "1".into(),
            crossings.len().to_string(),
            single,
        );
        let Some(c) = crossings.first() else { continue };
        let (d1, n1) = (d as i64 + 1, n as i64);
        r.value(
            format!("u0 ({d},{n})"),
            &format!("(1+({})*e)/(1+({})*e)", d1 - n1, d1 + 1 - n1),
            Ok(c.u0.clone()),
            eps,
        );
        r.value(
            format!("crossing point w_1 ({d},{n})"),
            &format!("1-e+e^2/(1+({})*e)", d1 + 1 - n1),
            Ok(c.point.entries()[0].clone()),
            eps,
        );
        r.value(
            format!("crossing point w_n ({d},{n})"),
            &format!("1/{}", n - d - 1),
            Ok(c.point.entries()[n - 1].clone()),
            eps,
        );
    }
}

fn stability_checks(r: &mut Report, eps: &EpsRat) {
    for (d, n) in [(2, 6), (2, 7), (3, 8)] {
        let verdict = |nt: bool| -> hyperwall::Result<LcVerdict> {
            let a = e_configuration(d, n)?;
            let b = if nt { nt_weights(d, n, eps)? } else { t_weights(d, n, eps)? };
            is_log_canonical(&a, &b)
        };
        r.flag(format!("e-configuration ({d},{n}) LC under t"), true, verdict(false).map(|v| v.is_lc()));
        let witness = (d + 2..=n).collect::<Vec<_>>();
        match verdict(true) {
            Ok(LcVerdict::NotLc { witness: w, weight_sum }) => {
                let pass = w.support == witness && w.codim == 1;
                r.push(
                    format!("e-configuration ({d},{n}) NotLC under nt, witness"),
                    format!("{witness:?} codim 1"),
                    format!("{:?} codim {}", w.support, w.codim),
                    pass,
                );
                r.value(format!("e-configuration ({d},{n}) witness weight"), "1+e", Ok(weight_sum), eps);
            }
            Ok(LcVerdict::Lc) => r.push(
                format!("e-configuration ({d},{n}) NotLC under nt, witness"),
                "NotLC".into(),
                "LC".into(),
                false,
            ),
            Err(e) => r.push(
                format!("e-configuration ({d},{n}) NotLC under nt, witness"),
                "NotLC".into(),
                format!("error: {e}"),
                false,
            ),
        }
    }
}

fn intersection_checks(r: &mut Report, eps: &EpsRat) {
    let table = [
        (TestCurve::ELine, "e", 0, -1),
        (TestCurve::LineThroughP, "f", 1, 1),
        (TestCurve::LineMissingP, "s", 1, 0),
    ];
    for (c, name, h, e) in table {
        r.value(format!("H.{name}"), &h.to_string(), BlowupDivisor::hyperplane(2).map(|x| pair(&x, c)), eps);
        r.value(format!("E.{name}"), &e.to_string(), BlowupDivisor::exceptional(2).map(|x| pair(&x, c)), eps);
    }
    for d in [2usize, 3, 4] {
        let di = d as i64;
        r.value(
            format!("K.f (d={d})"),
            "-2",
            canonical_class(d).map(|k| pair(&k, TestCurve::LineThroughP)),
            eps,
        );
        let n = d + 4;
        let div = degeneration_log_divisor(d, n, eps);
        let expected = [
            (TestCurve::ELine, "e", format!("1-{}*e", di + 1)),
            (TestCurve::LineThroughP, "f", "e".to_string()),
            (TestCurve::LineMissingP, "s", format!("1-{di}*e")),
        ];
        for (c, name, f) in expected {
            r.value(
                format!("degeneration divisor . {name} (d={d})"),
                &f,
                div.as_ref().map(|x| pair(x, c)).map_err(clone_err),
                eps,
            );
        }
        if eps.as_rat().is_none() {
            r.flag(
                format!("degeneration divisor ample (d={d})"),
                true,
                div.as_ref().map(is_ample_blowup).map_err(clone_err),
            );
        }
        r.value(format!("Y1 coefficient (d={d})"), &format!("1-{}*e", di + 1), Ok(y1_log_divisor(d, eps)), eps);
        r.value(format!("ruled fiber degree (d={d})"), "0", ruled_fiber_degree(d, eps), eps);
    }
    for n in 6usize..=10 {
        let m = modification_checks(n, eps);
        r.value(
            format!("modification onE (n={n})"),
            "e",
            m.as_ref().map(|x| x.on_e.clone()).map_err(clone_err),
            eps,
        );
        r.value(
            format!("modification onR_lower (n={n})"),
            &format!("-2+2*(1-e)+(1+e)/{}", n - 3),
            m.as_ref().map(|x| x.on_r_lower.clone()).map_err(clone_err),
            eps,
        );
        if eps.as_rat().is_none() {
            r.flag(
                format!("modification checks positive (n={n})"),
                true,
                m.as_ref().map(|x| x.all_positive()).map_err(clone_err),
            );
        }
    }
}

fn clone_err(e: &hyperwall::Error) -> hyperwall::Error {
    hyperwall::Error::BadParameters(e.to_string())
}

pub fn run(eps: &EpsRat) -> Report {
    let mut r = Report::default();
    weight_checks(&mut r, eps);
    stability_checks(&mut r, eps);
    intersection_checks(&mut r, eps);
    r
}
