mod common;

use common::{e, f, int, q, seeded};
use hyperwall::intersect::{
    ample_from_pairing, ample_threshold, canonical_class, degeneration_log_divisor, fiber_degree,
    is_ample_blowup, modification_checks, pair, BlowupDivisor, PairingSurface, TestCurve,
};
use hyperwall::{EpsRat, Error, Rat};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = EpsRat> {
    (-5i64..=5, -5i64..=5).prop_map(|(a, b)| EpsRat::from_int(a) + e() * EpsRat::from_int(b))
}

#[allow(clippy::needless_range_loop)]
fn matrix(m: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(-2i64..=3, m * (m + 1) / 2).prop_map(move |upper| {
        let mut out = vec![vec![Rat::default(); m]; m];
        let mut it = upper.into_iter();
        for i in 0..m {
            for j in i..m {
                let x = int(it.next().unwrap());
                out[i][j] = x.clone();
                out[j][i] = x;
            }
        }
        out
    })
}

fn pairings(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

proptest! {
    #![proptest_config(seeded(300, 41))]

    #[test]
    fn pairing_is_bilinear(d in 2usize..=5, h1 in coeff(), e1 in coeff(), h2 in coeff(), e2 in coeff(), s in coeff()) {
        let x = BlowupDivisor::new(d, h1, e1).unwrap();
        let y = BlowupDivisor::new(d, h2, e2).unwrap();
        for c in TestCurve::ALL {
            prop_assert_eq!(pair(&x.add(&y), c), pair(&x, c) + pair(&y, c));
            prop_assert_eq!(pair(&x.scale(&s), c), &s * &pair(&x, c));
        }
    }

    /// For `A` positive on every curve, `A + cD` is positive for `c` in
    /// `(0, c*)` and fails at `c*`.
    #[test]
    fn threshold_bounds_the_ample_range(
        (m, a, dv) in (2usize..=4).prop_flat_map(|m| (
            matrix(m),
            prop::collection::vec(0i64..=4, m),
            prop::collection::vec(-4i64..=4, m),
        )),
    ) {
        let a: Vec<Rat> = a.into_iter().map(int).collect();
        let dv: Vec<Rat> = dv.into_iter().map(int).collect();
        let pa = pairings(&m, &a);
        prop_assume!(pa.iter().all(|x| *x > Rat::default()));
        let combo = |c: &Rat| -> bool {
            let v: Vec<EpsRat> = a.iter().zip(&dv).map(|(x, y)| EpsRat::from_rat(x + c * y)).collect();
            ample_from_pairing(&PairingSurface::new(m.clone(), v).unwrap()).unwrap()
        };
        match ample_threshold(&m, &a, &dv).unwrap() {
            Some(c) => {
                prop_assert!(c > Rat::default());
                prop_assert!(combo(&(&c / int(2))));
                prop_assert!(combo(&(&c * q(99, 100))));
                prop_assert!(!combo(&c));
            }
            None => {
                for c in [int(1), int(10), int(1000)] {
                    prop_assert!(combo(&c));
                }
            }
        }
    }
}

#[test]
fn blowup_table_and_collected_form() {
    let h = BlowupDivisor::hyperplane(2).unwrap();
    let x = BlowupDivisor::exceptional(2).unwrap();
    let got: Vec<(i64, i64)> = TestCurve::ALL
        .iter()
        .map(|&c| (pair(&h, c).as_rat().unwrap().to_integer().try_into().unwrap(), pair(&x, c).as_rat().unwrap().to_integer().try_into().unwrap()))
        .collect();
    assert_eq!(got, vec![(0, -1), (1, 1), (1, 0)]);
    for d in 2..=6usize {
        let di = d as i64;
        let k = canonical_class(d).unwrap();
        assert_eq!(k, BlowupDivisor::new(d, EpsRat::from_int(-(di + 1)), EpsRat::from_int(di - 1)).unwrap());
        let div = degeneration_log_divisor(d, d + 3, &e()).unwrap();
        let collected = BlowupDivisor::new(d, f(&format!("1 - {di}*e")), f(&format!("({di}+1)*e - 1"))).unwrap();
        assert_eq!(div, collected);
        assert!(is_ample_blowup(&div));
        let surf = PairingSurface::blowup_p2(&div);
        let p = surf.pairings().unwrap();
        assert_eq!(p[0], pair(&div, TestCurve::ELine));
        assert_eq!(p[1], pair(&div, TestCurve::LineThroughP));
        assert_eq!(p[3], pair(&div, TestCurve::LineMissingP));
    }
    let big = EpsRat::from_rat(q(1, 2));
    assert!(!is_ample_blowup(&degeneration_log_divisor(2, 6, &big).unwrap()));
}

#[test]
fn fiber_degree_vanishes_only_for_the_ruled_conductor() {
    let c = BlowupDivisor::new(3, EpsRat::from_int(1), EpsRat::from_int(1)).unwrap();
    assert_eq!(fiber_degree(3, &c, &f("1 - e")).unwrap(), EpsRat::default());
    let other = BlowupDivisor::exceptional(3).unwrap();
    assert_ne!(fiber_degree(3, &other, &f("1 - e")).unwrap(), EpsRat::default());
}

#[test]
fn modification_values_at_concrete_eps() {
    let m = modification_checks(6, &EpsRat::from_rat(q(1, 10))).unwrap();
    assert_eq!(m.on_e.as_rat(), Some(q(1, 10)));
    assert_eq!(m.on_r_lower.as_rat(), Some(q(1, 6)));
    assert!(m.all_positive());
    let m = modification_checks(6, &EpsRat::from_rat(q(1, 4))).unwrap();
    assert!(!m.all_positive());
}

#[test]
fn surfaces_and_errors() {
    let s = PairingSurface::p1xp1([f("2"), f("1 - e")]);
    assert!(ample_from_pairing(&s).unwrap());
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<PairingSurface>(&json).unwrap(), s);
    let asym = vec![vec![int(0), int(1)], vec![int(2), int(0)]];
    assert!(PairingSurface::new(asym, vec![f("1"), f("1")]).is_err());
    assert!(PairingSurface::new(vec![vec![int(1)]], vec![f("1"), f("1")]).is_err());
    assert!(matches!(BlowupDivisor::hyperplane(1), Err(Error::BadParameters(_))));
    assert!(degeneration_log_divisor(3, 5, &e()).is_err());
    assert!(modification_checks(4, &e()).is_err());
    let m = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
    assert!(matches!(
        ample_threshold(&m, &[int(-1), int(1)], &[int(0), int(0)]),
        Err(Error::PreconditionViolated(_))
    ));
}
