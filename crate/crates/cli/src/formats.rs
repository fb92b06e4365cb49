//! JSON and CSV formats for kernels, point sets, couplings, gradings and results.

use std::fs;
use std::path::Path;

use lions_jet_core::expansion::ExpansionResult;
use lions_jet_core::functional::{KernelTerm, PolyKernel};
use lions_jet_core::oracle::{ConvergenceTable, Report};
use lions_jet_core::ring::{int, Numeric, Rational, Ring};
use lions_jet_core::tagged::{Grading, RemainderFamilies};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::CliError;

/// Parses `p/q`, an integer, or a decimal such as `-1.25` or `3e-2`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    let bad = || CliError::Parse(format!("`{s}` is not a rational number"));
    if t.contains('/') {
        let r: Rational = t.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (digits, frac_len) = match mantissa.split_once('.') {
        Some((i, f)) => {
            if f.starts_with(['+', '-']) {
                return Err(bad());
            }
            (format!("{i}{f}"), f.len() as i32)
        }
        None => (mantissa.to_string(), 0),
    };
    if matches!(digits.as_str(), "" | "-" | "+") {
        return Err(bad());
    }
    let m: Rational = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_len;
    let ten = Ring::pow(&int(10), shift.unsigned_abs());
    Ok(if shift >= 0 { m * ten } else { m / ten })
}

/// A rational given either as a JSON string (`"p/q"`, decimal) or a JSON number.
fn rational_from_value(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(CliError::Parse(format!("expected a rational, found {v}"))),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn parse_seq(s: &str) -> Result<Vec<u32>, CliError> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Parse(format!("bad letter `{x}` in `{s}`"))))
        .collect()
}

pub fn seq_key(a: &[u32]) -> String {
    let inner: Vec<String> = a.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

/// On-disk kernel: exponent rows are `x₀` (if spatial) then slots `1..arity`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelJson {
    pub e: usize,
    pub d: usize,
    pub arity: usize,
    pub spatial: bool,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub out: usize,
    pub coeff: Value,
    pub exps: Vec<Vec<u32>>,
}

impl KernelJson {
    pub fn from_kernel(f: &PolyKernel) -> Self {
        let terms = f
            .terms()
            .into_iter()
            .map(|t| TermJson { out: t.out, coeff: Value::String(t.coeff.to_string()), exps: t.exps })
            .collect();
        KernelJson { e: f.e, d: f.d, arity: f.arity, spatial: f.spatial, terms }
    }

    pub fn to_kernel(&self) -> Result<PolyKernel, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(KernelTerm { out: t.out, coeff: rational_from_value(&t.coeff)?, exps: t.exps.clone() })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PolyKernel::from_terms(self.e, self.d, self.arity, self.spatial, &terms)?)
    }
}

pub fn read_kernel(path: &Path) -> Result<PolyKernel, CliError> {
    let text = read(path)?;
    let k: KernelJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    k.to_kernel()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn points_from_value(v: &Value) -> Result<Vec<Vec<Rational>>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::Parse("expected an array of points".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::Parse(format!("point {r} is not an array")))?
                .iter()
                .map(rational_from_value)
                .collect()
        })
        .collect()
}

/// Reads a point set: a JSON array of arrays, or CSV with one point per row.
pub fn read_points(path: &Path) -> Result<Vec<Vec<Rational>>, CliError> {
    let text = read(path)?;
    parse_points(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        return points_from_value(&v);
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CliError::Parse(e.to_string()))?;
        out.push(rec.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(out)
}

/// Reads a coupling file: a JSON array of `[x, y]` pairs.
pub fn read_coupling(path: &Path) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>), CliError> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let pairs = v.as_array().ok_or_else(|| CliError::Parse("coupling must be an array".into()))?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in pairs {
        match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => {
                xs.extend(points_from_value(&Value::Array(vec![x.clone()]))?);
                ys.extend(points_from_value(&Value::Array(vec![y.clone()]))?);
            }
            _ => return Err(CliError::Parse(format!("coupling entry {p} is not an [x, y] pair"))),
        }
    }
    Ok((xs, ys))
}

pub fn grading_to_json(g: &Grading) -> Value {
    json!({"alpha": g.alpha.to_string(), "beta": g.beta.to_string(), "gamma": g.gamma.to_string()})
}

pub fn grading_from_json(v: &Value) -> Result<Grading, CliError> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| CliError::Parse(format!("grading is missing `{k}`")))
            .and_then(rational_from_value)
    };
    Ok(Grading::new(field("alpha")?, field("beta")?, field("gamma")?)?)
}

pub fn seqs_to_json(v: &[Vec<u32>]) -> Value {
    json!(v)
}

pub fn families_to_json(f: &RemainderFamilies) -> Value {
    json!({"core": f.core, "star": f.star, "plus": f.plus, "cross": f.cross})
}

/// Scalars as JSON: rationals become `"p/q"` strings, floats become numbers.
pub trait JsonScalar: Numeric {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

fn vec_json<C: JsonScalar>(v: &[C]) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}

/// Jet terms are keyed by their sequence, e.g. `"(0,1)"`.
pub fn expansion_to_json<C: JsonScalar>(r: &ExpansionResult<C>) -> Value {
    let mut jet = Map::new();
    for t in &r.jet {
        jet.insert(seq_key(&t.seq), vec_json(&t.value));
    }
    let remainder_terms: Vec<Value> = r
        .remainder_terms
        .iter()
        .map(|t| json!({"family": t.family.symbol(), "seq": t.seq, "value": vec_json(&t.value)}))
        .collect();
    let bound_terms: Vec<Value> = r
        .bound_terms
        .iter()
        .map(|t| json!({"family": t.family.symbol(), "seq": t.seq, "value": t.value}))
        .collect();
    json!({
        "jet": jet,
        "predicted": vec_json(&r.predicted),
        "actual": vec_json(&r.actual),
        "remainder_exact": vec_json(&r.remainder_exact),
        "remainder_terms": remainder_terms,
        "identity_defect": vec_json(&r.identity_defect()),
        "remainder_bound": r.remainder_bound,
        "bound_terms": bound_terms,
    })
}

pub fn report_to_json(r: &Report) -> Value {
    json!({
        "identity": r.identity,
        "seed": r.seed,
        "max_abs_difference": r.max_abs_difference,
        "pass": r.pass,
    })
}

pub fn reports_to_csv(reports: &[Report]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["identity", "seed", "max_abs_difference", "pass"]).map_err(csv_err)?;
    for r in reports {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        w.write_record([r.identity.clone(), seed, r.max_abs_difference.to_string(), r.pass.to_string()])
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

/// `h,remainder,bound` rows.
pub fn convergence_to_csv(t: &ConvergenceTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["h", "remainder", "bound"]).map_err(csv_err)?;
    for r in &t.rows {
        w.write_record([r.h.to_string(), r.remainder.to_string(), r.bound.to_string()])
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

pub fn convergence_to_json(t: &ConvergenceTable) -> Value {
    let rows: Vec<Value> =
        t.rows.iter().map(|r| json!({"h": r.h, "remainder": r.remainder, "bound": r.bound})).collect();
    let slope = match t.slope {
        Some(s) => json!(s),
        None => json!("exact"),
    };
    json!({"rows": rows, "slope": slope})
}

pub fn seqs_to_csv(v: &[Vec<u32>]) -> String {
    let mut out = String::new();
    for a in v {
        let inner: Vec<String> = a.iter().map(u32::to_string).collect();
        out.push_str(&inner.join(","));
        out.push('\n');
    }
    out
}

pub fn families_to_csv(f: &RemainderFamilies) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "seq"]).map_err(csv_err)?;
    for (name, list) in [("core", &f.core), ("star", &f.star), ("plus", &f.plus), ("cross", &f.cross)] {
        for a in list {
            w.write_record([name.to_string(), seq_key(a)]).map_err(csv_err)?;
        }
    }
    finish_csv(w)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

pub fn points_to_strings(v: &[Vec<Rational>]) -> Vec<Vec<String>> {
    v.iter().map(|p| rationals_to_strings(p)).collect()
}

pub fn points_from_strings(v: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, CliError> {
    v.iter().map(|p| p.iter().map(|s| parse_rational(s)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lions_jet_core::ring::rat;

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn points_from_csv_and_json() {
        let csv = "# two points\n1, 1/2\n-3, 0.25\n";
        let json = r#"[["1", "1/2"], [-3, 0.25]]"#;
        let want = vec![vec![int(1), rat(1, 2)], vec![int(-3), rat(1, 4)]];
        assert_eq!(parse_points(csv).unwrap(), want);
        assert_eq!(parse_points(json).unwrap(), want);
    }

    #[test]
    fn kernel_roundtrip() {
        let text = r#"{"e":1,"d":1,"arity":2,"spatial":false,
            "terms":[{"out":0,"coeff":"1/2","exps":[[1],[2]]},{"out":0,"coeff":3,"exps":[[0],[1]]}]}"#;
        let k: KernelJson = serde_json::from_str(text).unwrap();
        let f = k.to_kernel().unwrap();
        let back = KernelJson::from_kernel(&f).to_kernel().unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn sequences_parse() {
        assert_eq!(parse_seq("(1,2,1)").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_seq("0, 1").unwrap(), vec![0, 1]);
        assert_eq!(parse_seq("()").unwrap(), Vec::<u32>::new());
        assert_eq!(seq_key(&[0, 1]), "(0,1)");
    }
}
