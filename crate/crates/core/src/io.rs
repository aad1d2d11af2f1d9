//! JSON file formats for every object the CLI consumes or emits, with
//! exact rational round-trips and located parse errors.
//!
//! All numbers travel as rational strings `"p/q"` (or `"p"` when the
//! denominator is one); omitted bracket/action entries are zero.

use serde_json::{json, Map, Value};

use crate::action::ActionTensor;
use crate::algebra::{BiBracket, TriBracket};
use crate::comb::{wedge_flat, WedgeIndex};
use crate::graded::{Cochain, MAX_DEGREE};
use crate::lie::LieActionTensor;
use crate::matrix::Matrix;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// A parsed algebra file: the bracket kind decides the arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraFile {
    TripleSystem {
        labels: Option<Vec<String>>,
        bracket: TriBracket,
    },
    Lie {
        labels: Option<Vec<String>>,
        bracket: BiBracket,
    },
    ThreeLeibniz {
        labels: Option<Vec<String>>,
        bracket: TriBracket,
    },
}

impl AlgebraFile {
    pub fn dim(&self) -> usize {
        match self {
            AlgebraFile::TripleSystem { bracket, .. } => bracket.dim,
            AlgebraFile::Lie { bracket, .. } => bracket.dim,
            AlgebraFile::ThreeLeibniz { bracket, .. } => bracket.dim,
        }
    }
}

/// Which complex a cochain file lives in: maps out of the source system
/// (`F`) or out of the direct sum (`E`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CochainSpace {
    F,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainFile {
    pub space: CochainSpace,
    pub cochain: Cochain,
}

fn malformed(loc: &str, what: &str) -> Error {
    Error::Malformed(format!("{loc}: {what}"))
}

fn get<'a>(v: &'a Value, key: &str, loc: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| malformed(loc, &format!("missing key \"{key}\"")))
}

fn as_usize(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| malformed(loc, "expected a non-negative integer"))
}

fn as_str<'a>(v: &'a Value, loc: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| malformed(loc, "expected a string"))
}

fn as_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(loc, "expected an array"))
}

fn as_rat(v: &Value, loc: &str) -> Result<Rat> {
    let s = as_str(v, loc)?;
    parse_rat(s).map_err(|_| Error::BadRational(format!("{loc}: \"{s}\"")))
}

fn check_index(i: usize, dim: usize, loc: &str) -> Result<usize> {
    if i >= dim {
        return Err(Error::IndexOutOfRange(format!(
            "{loc}: index {i} out of range for dimension {dim}"
        )));
    }
    Ok(i)
}

fn parse_json(text: &str, loc: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(loc, &format!("invalid JSON: {e}")))
}

/// Sparse coordinate vector `{"k": "p/q", ...}` of the given dimension.
fn parse_out(v: &Value, dim: usize, loc: &str) -> Result<Vec<Rat>> {
    let obj = v
        .as_object()
        .ok_or_else(|| malformed(loc, "expected an object of index: rational"))?;
    let mut out = crate::matrix::vec_zero(dim);
    for (k, val) in obj {
        let idx: usize = k
            .parse()
            .map_err(|_| malformed(loc, &format!("bad index key \"{k}\"")))?;
        check_index(idx, dim, loc)?;
        out[idx] = as_rat(val, &format!("{loc}.{k}"))?;
    }
    Ok(out)
}

fn out_json(v: &[Rat]) -> Value {
    let mut m = Map::new();
    for (k, r) in v.iter().enumerate() {
        if !num_traits::Zero::is_zero(r) {
            m.insert(k.to_string(), Value::String(format_rat(r)));
        }
    }
    Value::Object(m)
}

/// Parses `{"kind":..., "dim":..., "basis":[...], "brackets":[...]}`.
/// Structural checks only; axiom verification is a separate step.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let v = parse_json(text, "algebra")?;
    let kind = as_str(get(&v, "kind", "algebra")?, "algebra.kind")?;
    let dim = as_usize(get(&v, "dim", "algebra")?, "algebra.dim")?;
    let labels = match v.get("basis") {
        None | Some(Value::Null) => None,
        Some(b) => {
            let arr = as_array(b, "algebra.basis")?;
            if arr.len() != dim {
                return Err(malformed(
                    "algebra.basis",
                    &format!("{} names for dimension {dim}", arr.len()),
                ));
            }
            Some(
                arr.iter()
                    .enumerate()
                    .map(|(k, s)| Ok(as_str(s, &format!("algebra.basis[{k}]"))?.to_string()))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let entries = as_array(get(&v, "brackets", "algebra")?, "algebra.brackets")?;
    let arity = if kind == "lie" { 2 } else { 3 };
    let mut tri = TriBracket::zero(dim);
    let mut bi = BiBracket::zero(dim);
    for (n, e) in entries.iter().enumerate() {
        let loc = format!("algebra.brackets[{n}]");
        let args = as_array(get(e, "args", &loc)?, &format!("{loc}.args"))?;
        if args.len() != arity {
            return Err(malformed(
                &format!("{loc}.args"),
                &format!("expected {arity} indices, got {}", args.len()),
            ));
        }
        let idx = args
            .iter()
            .enumerate()
            .map(|(k, a)| {
                check_index(
                    as_usize(a, &format!("{loc}.args[{k}]"))?,
                    dim,
                    &format!("{loc}.args[{k}]"),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let out = parse_out(get(e, "out", &loc)?, dim, &format!("{loc}.out"))?;
        if arity == 2 {
            bi.set(idx[0], idx[1], out)?;
        } else {
            tri.set(idx[0], idx[1], idx[2], out)?;
        }
    }
    match kind {
        "lts" => Ok(AlgebraFile::TripleSystem {
            labels,
            bracket: tri,
        }),
        "3leibniz" => Ok(AlgebraFile::ThreeLeibniz {
            labels,
            bracket: tri,
        }),
        "lie" => Ok(AlgebraFile::Lie {
            labels,
            bracket: bi,
        }),
        other => Err(malformed(
            "algebra.kind",
            &format!("unknown kind \"{other}\""),
        )),
    }
}

pub fn algebra_json(a: &AlgebraFile) -> Value {
    let (kind, labels) = match a {
        AlgebraFile::TripleSystem { labels, .. } => ("lts", labels),
        AlgebraFile::Lie { labels, .. } => ("lie", labels),
        AlgebraFile::ThreeLeibniz { labels, .. } => ("3leibniz", labels),
    };
    let brackets: Vec<Value> = match a {
        AlgebraFile::TripleSystem { bracket, .. } | AlgebraFile::ThreeLeibniz { bracket, .. } => {
            bracket
                .entries()
                .map(|((i, j, k), out)| json!({"args": [i, j, k], "out": out_json(out)}))
                .collect()
        }
        AlgebraFile::Lie { bracket, .. } => bracket
            .entries()
            .map(|((i, j), out)| json!({"args": [i, j], "out": out_json(out)}))
            .collect(),
    };
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("dim".into(), json!(a.dim()));
    if let Some(l) = labels {
        m.insert("basis".into(), json!(l));
    }
    m.insert("brackets".into(), Value::Array(brackets));
    Value::Object(m)
}

fn parse_matrix_rows(v: &Value, rows: usize, cols: usize, loc: &str) -> Result<Matrix> {
    let arr = as_array(v, loc)?;
    if arr.len() != rows {
        return Err(malformed(loc, &format!("{} rows, expected {rows}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows);
    for (i, row) in arr.iter().enumerate() {
        let rl = format!("{loc}[{i}]");
        let row = as_array(row, &rl)?;
        if row.len() != cols {
            return Err(malformed(&rl, &format!("{} entries, expected {cols}", row.len())));
        }
        data.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| as_rat(x, &format!("{rl}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(data)
}

fn matrix_rows_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(format_rat(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Parses `{"rows":n,"cols":m,"matrix":[[...]]}` — rows indexed by the
/// codomain basis.
pub fn parse_map(text: &str) -> Result<Matrix> {
    let v = parse_json(text, "map")?;
    let rows = as_usize(get(&v, "rows", "map")?, "map.rows")?;
    let cols = as_usize(get(&v, "cols", "map")?, "map.cols")?;
    parse_matrix_rows(get(&v, "matrix", "map")?, rows, cols, "map.matrix")
}

pub fn map_json(m: &Matrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "matrix": matrix_rows_json(m)})
}

/// Parses `{"acting_dim":n,"acted_dim":m,"theta":[{"x":i,"y":j,"matrix":...}]}`.
pub fn parse_action(text: &str) -> Result<ActionTensor> {
    let v = parse_json(text, "action")?;
    let acting = as_usize(get(&v, "acting_dim", "action")?, "action.acting_dim")?;
    let acted = as_usize(get(&v, "acted_dim", "action")?, "action.acted_dim")?;
    let mut act = ActionTensor::zero(acting, acted);
    for (n, e) in as_array(get(&v, "theta", "action")?, "action.theta")?
        .iter()
        .enumerate()
    {
        let loc = format!("action.theta[{n}]");
        let x = check_index(
            as_usize(get(e, "x", &loc)?, &format!("{loc}.x"))?,
            acting,
            &format!("{loc}.x"),
        )?;
        let y = check_index(
            as_usize(get(e, "y", &loc)?, &format!("{loc}.y"))?,
            acting,
            &format!("{loc}.y"),
        )?;
        let m = parse_matrix_rows(
            get(e, "matrix", &loc)?,
            acted,
            acted,
            &format!("{loc}.matrix"),
        )?;
        act.set(x, y, m)?;
    }
    Ok(act)
}

pub fn action_json(act: &ActionTensor) -> Value {
    let theta: Vec<Value> = act
        .entries()
        .map(|((x, y), m)| json!({"x": x, "y": y, "matrix": matrix_rows_json(m)}))
        .collect();
    json!({
        "acting_dim": act.acting_dim,
        "acted_dim": act.acted_dim,
        "theta": theta,
    })
}

fn parse_vector(v: &Value, dim: usize, loc: &str) -> Result<Vec<Rat>> {
    let arr = as_array(v, loc)?;
    if arr.len() != dim {
        return Err(malformed(
            loc,
            &format!("{} entries, expected {dim}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(k, x)| as_rat(x, &format!("{loc}[{k}]")))
        .collect()
}

fn vector_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rat(r))).collect())
}

/// Parses `{"a":[...],"b":[...]}`, both vectors of the given dimension.
pub fn parse_pair(text: &str, dim: usize) -> Result<crate::deform::WedgePair> {
    let v = parse_json(text, "pair")?;
    Ok(crate::deform::WedgePair::new(
        parse_vector(get(&v, "a", "pair")?, dim, "pair.a")?,
        parse_vector(get(&v, "b", "pair")?, dim, "pair.b")?,
    ))
}

pub fn pair_json(p: &crate::deform::WedgePair) -> Value {
    json!({"a": vector_json(&p.a), "b": vector_json(&p.b)})
}

/// Parses `{"rho":[{"x":i,"matrix":[[...]]}]}` against known dimensions.
pub fn parse_lie_action(text: &str, acting_dim: usize, acted_dim: usize) -> Result<LieActionTensor> {
    let v = parse_json(text, "lie-action")?;
    let mut rho = LieActionTensor::zero(acting_dim, acted_dim);
    for (n, e) in as_array(get(&v, "rho", "lie-action")?, "lie-action.rho")?
        .iter()
        .enumerate()
    {
        let loc = format!("lie-action.rho[{n}]");
        let x = check_index(
            as_usize(get(e, "x", &loc)?, &format!("{loc}.x"))?,
            acting_dim,
            &format!("{loc}.x"),
        )?;
        let m = parse_matrix_rows(
            get(e, "matrix", &loc)?,
            acted_dim,
            acted_dim,
            &format!("{loc}.matrix"),
        )?;
        rho.set(x, m)?;
    }
    Ok(rho)
}

pub fn lie_action_json(rho: &LieActionTensor) -> Value {
    let entries: Vec<Value> = (0..rho.acting_dim())
        .filter(|&x| !rho.rho_basis(x).is_zero())
        .map(|x| json!({"x": x, "matrix": matrix_rows_json(rho.rho_basis(x))}))
        .collect();
    json!({"rho": entries})
}

/// Parses `{"space":"F"|"E","arity":n,"entries":[{"pairs":[[i,j],...],
/// "last":k,"value":{...}}]}`. The caller supplies the domain and codomain
/// dimensions the space tag refers to; `i < j` is enforced, and arity
/// `n` stores as degree `n − 1` (pair-slot count).
pub fn parse_cochain(text: &str, dom: usize, cod: usize) -> Result<CochainFile> {
    let v = parse_json(text, "cochain")?;
    let space = match as_str(get(&v, "space", "cochain")?, "cochain.space")? {
        "F" => CochainSpace::F,
        "E" => CochainSpace::E,
        other => {
            return Err(malformed(
                "cochain.space",
                &format!("unknown space \"{other}\""),
            ))
        }
    };
    let arity = as_usize(get(&v, "arity", "cochain")?, "cochain.arity")?;
    if arity == 0 || arity > MAX_DEGREE + 1 {
        return Err(Error::UnsupportedDegree(arity));
    }
    let deg = arity - 1;
    let mut c = Cochain::zero(dom, cod, deg)?;
    for (n, e) in as_array(get(&v, "entries", "cochain")?, "cochain.entries")?
        .iter()
        .enumerate()
    {
        let loc = format!("cochain.entries[{n}]");
        let pairs = as_array(get(e, "pairs", &loc)?, &format!("{loc}.pairs"))?;
        if pairs.len() != deg {
            return Err(malformed(
                &format!("{loc}.pairs"),
                &format!("{} pair slots, arity {arity} needs {deg}", pairs.len()),
            ));
        }
        let mut flats = Vec::with_capacity(deg);
        for (k, p) in pairs.iter().enumerate() {
            let pl = format!("{loc}.pairs[{k}]");
            let p = as_array(p, &pl)?;
            if p.len() != 2 {
                return Err(malformed(&pl, "expected [i, j]"));
            }
            let i = check_index(as_usize(&p[0], &pl)?, dom, &pl)?;
            let j = check_index(as_usize(&p[1], &pl)?, dom, &pl)?;
            if i >= j {
                return Err(malformed(&pl, &format!("require i < j, got [{i}, {j}]")));
            }
            flats.push(wedge_flat(dom, WedgeIndex { i, j }));
        }
        let last = check_index(
            as_usize(get(e, "last", &loc)?, &format!("{loc}.last"))?,
            dom,
            &format!("{loc}.last"),
        )?;
        let value = parse_out(get(e, "value", &loc)?, cod, &format!("{loc}.value"))?;
        c.set_value(&flats, last, value)?;
    }
    Ok(CochainFile { space, cochain: c })
}

pub fn cochain_json(f: &CochainFile) -> Value {
    let c = &f.cochain;
    let dom = c.dom();
    let mut entries = Vec::new();
    let pair_space = crate::comb::wedge_count(dom);
    let mut tuple = vec![0usize; c.deg()];
    loop {
        for last in 0..dom {
            let val = c.value(&tuple, last);
            if !crate::matrix::vec_is_zero(val) {
                let pairs: Vec<Value> = tuple
                    .iter()
                    .map(|&f| {
                        let w = crate::comb::wedge_unflat(dom, f);
                        json!([w.i, w.j])
                    })
                    .collect();
                entries.push(json!({
                    "pairs": pairs,
                    "last": last,
                    "value": out_json(val),
                }));
            }
        }
        // odometer over pair slots
        let mut k = c.deg();
        loop {
            if k == 0 {
                return json!({
                    "space": match f.space { CochainSpace::F => "F", CochainSpace::E => "E" },
                    "arity": c.deg() + 1,
                    "entries": entries,
                });
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < pair_space {
                break;
            }
            tuple[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l3, l3_with_adjoint, t_star};
    use crate::matrix::vec_zero;
    use crate::rational::{rat, rat_int};

    #[test]
    fn algebra_round_trip() {
        let l = l3();
        let file = AlgebraFile::TripleSystem {
            labels: Some(l.labels.clone()),
            bracket: l.bracket.clone(),
        };
        let text = algebra_json(&file).to_string();
        assert_eq!(parse_algebra(&text).unwrap(), file);
        // a Lie algebra file
        let g = crate::fixtures::lie_nonabelian_2d();
        let file = AlgebraFile::Lie {
            labels: None,
            bracket: g.bracket.clone(),
        };
        let text = algebra_json(&file).to_string();
        assert_eq!(parse_algebra(&text).unwrap(), file);
    }

    #[test]
    fn algebra_rejects_bad_input() {
        let cases = [
            (r#"{"kind":"lts","dim":2,"brackets":[{"args":[0,1,2],"out":{}}]}"#, "index"),
            (r#"{"kind":"lts","dim":2,"brackets":[{"args":[0,1],"out":{}}]}"#, "arity"),
            (r#"{"kind":"orbit","dim":2,"brackets":[]}"#, "kind"),
            (r#"{"kind":"lts","dim":2,"brackets":[{"args":[0,1,1],"out":{"0":"1/0"}}]}"#, "rational"),
            (r#"{"kind":"lts","dim":2}"#, "missing"),
            ("not json", "json"),
        ];
        for (text, what) in cases {
            assert!(parse_algebra(text).is_err(), "case {what}");
        }
        // error message carries the location
        let err = parse_algebra(
            r#"{"kind":"lts","dim":2,"brackets":[{"args":[0,1,1],"out":{"5":"1"}}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("brackets[0].out"), "{err}");
    }

    #[test]
    fn map_and_action_round_trip() {
        let t = t_star();
        let text = map_json(&t).to_string();
        assert_eq!(parse_map(&text).unwrap(), t);
        let (_, act) = l3_with_adjoint();
        let text = action_json(&act).to_string();
        assert_eq!(parse_action(&text).unwrap(), act);
    }

    #[test]
    fn pair_and_lie_action_round_trip() {
        let p = crate::deform::WedgePair::new(
            vec![rat_int(1), rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat_int(-1), rat_int(3)],
        );
        let text = pair_json(&p).to_string();
        assert_eq!(parse_pair(&text, 3).unwrap(), p);
        assert!(parse_pair(&text, 4).is_err());

        let rho = crate::fixtures::lie_scaling_action(rat(3, 2), 2);
        let text = lie_action_json(&rho).to_string();
        assert_eq!(parse_lie_action(&text, 2, 2).unwrap(), rho);
    }

    #[test]
    fn cochain_round_trip_and_validation() {
        // a degree-1 cochain on a 3-dimensional domain
        let mut c = Cochain::zero(3, 3, 1).unwrap();
        let mut v = vec_zero(3);
        v[2] = rat(3, 2);
        c.set_value(&[wedge_flat(3, WedgeIndex { i: 0, j: 1 })], 0, v)
            .unwrap();
        let file = CochainFile {
            space: CochainSpace::F,
            cochain: c,
        };
        let text = cochain_json(&file).to_string();
        assert_eq!(parse_cochain(&text, 3, 3).unwrap(), file);

        // i >= j rejected
        let bad = r#"{"space":"F","arity":2,"entries":[{"pairs":[[1,0]],"last":0,"value":{}}]}"#;
        assert!(parse_cochain(bad, 3, 3).is_err());
        // arity 0 rejected
        let bad = r#"{"space":"F","arity":0,"entries":[]}"#;
        assert!(matches!(
            parse_cochain(bad, 3, 3),
            Err(Error::UnsupportedDegree(0))
        ));
    }

    #[test]
    fn rationals_normalize_on_parse() {
        let text = r#"{"rows":1,"cols":1,"matrix":[["2/4"]]}"#;
        let m = parse_map(text).unwrap();
        assert_eq!(m.get(0, 0), &rat(1, 2));
        assert_eq!(map_json(&m).to_string(), r#"{"rows":1,"cols":1,"matrix":[["1/2"]]}"#);
    }
}
