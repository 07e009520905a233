//! JSON forms of ring values, results and check reports.

use serde_json::{json, Map, Value};
use tlh_core::conjectures::CheckReport;
use tlh_core::torus::UnknotFactor;
use tlh_core::{Int, LaurentPoly, Monomial, StructuredRational};

pub fn poly_terms(p: &LaurentPoly) -> Value {
    Value::Array(
        p.display_terms()
            .into_iter()
            .map(|(m, c)| json!({"a": m.a, "q": m.q, "t": m.t, "c": c.to_string()}))
            .collect(),
    )
}

/// `{"terms":[{"a","q","t","c"}],"den_q","den_t"}`
pub fn ring(r: &StructuredRational) -> Value {
    json!({"terms": poly_terms(r.num()), "den_q": r.qpow(), "den_t": r.tpow()})
}

pub fn poly(p: &LaurentPoly) -> Value {
    json!({"terms": poly_terms(p), "den_q": 0, "den_t": 0})
}

pub fn unknot(u: &UnknotFactor) -> Value {
    json!({"terms": poly_terms(&u.num), "den_q_powers": u.den_q_powers})
}

pub fn ring_from_json(v: &Value) -> Result<StructuredRational, String> {
    let obj = v.as_object().ok_or("ring value is not an object")?;
    let den = |name: &str| -> Result<u32, String> {
        obj.get(name)
            .and_then(Value::as_u64)
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| format!("missing or bad {name}"))
    };
    let terms = obj.get("terms").and_then(Value::as_array).ok_or("missing terms")?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let exp = |name: &str| -> Result<i32, String> {
            t.get(name)
                .and_then(Value::as_i64)
                .and_then(|x| i32::try_from(x).ok())
                .ok_or_else(|| format!("missing or bad exponent {name}"))
        };
        let c: Int = t
            .get("c")
            .and_then(Value::as_str)
            .ok_or("missing coefficient")?
            .parse()
            .map_err(|e| format!("bad coefficient: {e}"))?;
        out.push((Monomial::new(exp("a")?, exp("q")?, exp("t")?), c));
    }
    Ok(StructuredRational::new(LaurentPoly::from_terms(out), den("den_q")?, den("den_t")?))
}

pub fn report(r: &CheckReport) -> Value {
    let range: Map<String, Value> = r.range.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let results: Vec<Value> = r
        .results
        .iter()
        .map(|x| json!({"k": x.k, "pass": x.pass, "witness": x.witness.as_ref().map(ring)}))
        .collect();
    json!({"claim": r.claim, "range": range, "results": results})
}
