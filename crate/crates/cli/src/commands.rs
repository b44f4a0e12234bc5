use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hyperwall::arrangement::{e_configuration, flats, stable_against, Arrangement};
use hyperwall::exactnum::{parse_rat, parse_rational_function};
use hyperwall::intersect::{
    ample_from_pairing, degeneration_log_divisor, is_ample_blowup, modification_checks, pair,
    ruled_fiber_degree, y1_log_divisor, PairingSurface, TestCurve,
};
use hyperwall::mixedsub::{
    dual_graph, fiber_vertex, qcartier_defect_cells, regular_mixed_subdivision,
    regular_mixed_subdivision_eps,
};
use hyperwall::replacement::{stable_replacement_model, validate_degeneration, JetFamily};
use hyperwall::weightdomain::{
    aux_a, aux_h, aux_w_hat, default_eps_hat, in_chamber_closure, leq, nt_weights, same_chamber,
    segment_walls, sign_vector, t_weights, walls_containing, WeightVector,
};
use hyperwall::{EpsRat, Rat};

/// Symbolic ε by default; a concrete rational must lie in (0, 1).
pub fn parse_eps(src: Option<&str>) -> Result<EpsRat> {
    let Some(src) = src else {
        return Ok(EpsRat::eps());
    };
    let r = parse_rat(src).with_context(|| format!("invalid --eps `{src}`"))?;
    if r <= Rat::from_integer(0.into()) || r >= Rat::from_integer(1.into()) {
        bail!("--eps must lie strictly between 0 and 1, got {r}");
    }
    Ok(EpsRat::from_rat(r))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn dims(d: Option<usize>, n: Option<usize>, what: &str) -> Result<(usize, usize)> {
    match (d, n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => bail!("`{what}` needs --d and --n"),
    }
}

/// `t`, `nt`, `a`, `w_hat`, `h`, or a weight-vector file.
fn resolve_weights(spec: &str, d: Option<usize>, n: Option<usize>, eps: &EpsRat) -> Result<WeightVector> {
    let named = |f: &dyn Fn(usize, usize) -> hyperwall::Result<WeightVector>| -> Result<WeightVector> {
        let (d, n) = dims(d, n, spec)?;
        Ok(f(d, n)?)
    };
    let w = match spec {
        "t" => named(&|d, n| t_weights(d, n, eps))?,
        "nt" => named(&|d, n| nt_weights(d, n, eps))?,
        "a" => named(&|d, n| aux_a(d, n, eps, &default_eps_hat(d, eps)))?,
        "w_hat" => named(&|d, n| aux_w_hat(d, n, eps, &default_eps_hat(d, eps)))?,
        "h" => named(&|d, n| aux_h(d, n, eps, &default_eps_hat(d, eps)))?,
        path => {
            let w: WeightVector = read_json(Path::new(path))?;
            if d.is_some_and(|d| d != w.d()) || n.is_some_and(|n| n != w.n()) {
                bail!("{path} has (d, n) = ({}, {}), which disagrees with --d/--n", w.d(), w.n());
            }
            w
        }
    };
    Ok(w)
}

pub fn walls(d: Option<usize>, n: Option<usize>, weights: &str, eps: &EpsRat) -> Result<Value> {
    let b = resolve_weights(weights, d, n, eps)?;
    let walls = walls_containing(&b)?;
    Ok(json!({
        "weights": b,
        "count": walls.len(),
        "walls": walls,
    }))
}

pub fn segment(d: Option<usize>, n: Option<usize>, from: &str, to: &str, eps: &EpsRat) -> Result<Value> {
    let b = resolve_weights(from, d, n, eps)?;
    let b2 = resolve_weights(to, d, n, eps)?;
    let crossings = segment_walls(&b, &b2)?;
    Ok(json!({
        "from": b,
        "to": b2,
        "count": crossings.len(),
        "crossings": crossings,
    }))
}

pub fn chamber(d: Option<usize>, n: Option<usize>, a: &str, b: &str, eps: &EpsRat) -> Result<Value> {
    let x = resolve_weights(a, d, n, eps)?;
    let y = resolve_weights(b, d, n, eps)?;
    let sx = sign_vector(&x)?;
    let sy = sign_vector(&y)?;
    Ok(json!({
        "a": x,
        "b": y,
        "a_on_walls": sx.signs.iter().filter(|s| **s == hyperwall::weightdomain::Side::On).count(),
        "b_on_walls": sy.signs.iter().filter(|s| **s == hyperwall::weightdomain::Side::On).count(),
        "same_chamber": same_chamber(&x, &y)?,
        "a_in_closure_of_b": in_chamber_closure(&x, &y)?,
        "b_in_closure_of_a": in_chamber_closure(&y, &x)?,
        "a_leq_b": leq(&x, &y)?,
        "b_leq_a": leq(&y, &x)?,
    }))
}

pub fn stability(
    d: Option<usize>,
    n: Option<usize>,
    weights: &str,
    arrangement: &str,
    eps: &EpsRat,
) -> Result<Value> {
    let arr = if arrangement == "e_config" {
        let (d, n) = dims(d, n, "e_config")?;
        e_configuration(d, n)?
    } else {
        let a: Arrangement = read_json(Path::new(arrangement))?;
        if d.is_some_and(|d| d != a.d()) || n.is_some_and(|n| n != a.n()) {
            bail!("{arrangement} disagrees with --d/--n");
        }
        a
    };
    let b = resolve_weights(weights, Some(arr.d()), Some(arr.n()), eps)?;
    if (b.d(), b.n()) != (arr.d(), arr.n()) {
        bail!("weights and arrangement have different (d, n)");
    }
    let fl = flats(&arr)?;
    let verdict = stable_against(&fl, &b)?;
    Ok(json!({
        "arrangement": arr,
        "weights": b,
        "flats": fl.len(),
        "result": verdict,
    }))
}

pub fn ample_blowup(d: Option<usize>, n: Option<usize>, eps: &EpsRat) -> Result<Value> {
    let (d, n) = dims(d, n, "ample --model blowup")?;
    let div = degeneration_log_divisor(d, n, eps)?;
    let pairings: serde_json::Map<String, Value> = TestCurve::ALL
        .iter()
        .map(|&c| {
            let key = serde_json::to_value(c).expect("serializable");
            (key.as_str().unwrap_or_default().to_string(), json!(pair(&div, c)))
        })
        .collect();
    let y1 = y1_log_divisor(d, eps);
    let mut report = json!({
        "d": d,
        "n": n,
        "divisor": div,
        "pairings": pairings,
        "ample": is_ample_blowup(&div),
        "y1_coefficient": y1,
        "y1_ample": y1.is_positive(),
        "ruled_fiber_degree": ruled_fiber_degree(d, eps)?,
    });
    if n >= 5 {
        let m = modification_checks(n, eps)?;
        report["modification_checks"] = json!({ "values": m, "positive": m.all_positive() });
    }
    Ok(report)
}

pub fn ample_pairing(surface: Option<&Path>) -> Result<Value> {
    let path = surface.ok_or_else(|| anyhow!("`ample --model pairing` needs a surface file"))?;
    let s: PairingSurface = read_json(path)?;
    let pairings = s.pairings()?;
    Ok(json!({
        "pairings": pairings,
        "ample": ample_from_pairing(&s)?,
    }))
}

pub fn replace(path: &Path, n: Option<usize>, eps: &EpsRat) -> Result<Value> {
    let f: JetFamily = read_json(path)?;
    let n = n.unwrap_or(f.d() + 1 + f.members().len());
    let model = stable_replacement_model(&f, n)?;
    let valid = validate_degeneration(&model, eps);
    let sections: Vec<String> = model.sections.iter().map(ToString::to_string).collect();
    Ok(json!({
        "family": f,
        "n": n,
        "depth": model.depth,
        "model": model,
        "sections_display": sections,
        "valid": valid,
    }))
}

/// Lifting values are rationals or, for symbolic perturbations, rational
/// functions of `e`.
fn read_lifting(path: &Path) -> Result<Vec<EpsRat>> {
    let raw: Vec<Value> = read_json(path)?;
    raw.iter()
        .map(|v| match v {
            Value::String(s) => Ok(parse_rational_function(s, "e")?),
            Value::Number(x) => {
                let s = x.to_string();
                Ok(parse_rational_function(&s, "e")?)
            }
            other => bail!("lifting entry {other} is not a number or string"),
        })
        .collect()
}

pub fn random_lifting(len: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| Rat::from_integer(rng.gen_range(0i64..1000).into()))
        .collect()
}

pub fn mixedsub(d: usize, m: usize, lifting: Option<&Path>, random: Option<u64>) -> Result<Value> {
    let len = m * (d + 1);
    let (sub, seed) = match lifting {
        Some(path) => {
            let l = read_lifting(path)?;
            let sub = match l.iter().map(EpsRat::as_rat).collect::<Option<Vec<Rat>>>() {
                Some(rats) => regular_mixed_subdivision(d, m, &rats)?,
                None => regular_mixed_subdivision_eps(d, m, &l)?,
            };
            (sub, None)
        }
        None => {
            let seed = random.unwrap_or(0);
            (regular_mixed_subdivision(d, m, &random_lifting(len, seed))?, Some(seed))
        }
    };
    sub.check_partition()?;
    let graph = dual_graph(&sub);
    let mut report = json!({
        "d": d,
        "m": m,
        "seed": seed,
        "subdivision": sub,
        "dual_graph": graph,
    });
    if d == 2 {
        report["defect_cells"] = json!(qcartier_defect_cells(&sub)?);
    }
    if sub.fine {
        report["fiber_vertex"] = json!(fiber_vertex(&sub)?);
    }
    Ok(report)
}
