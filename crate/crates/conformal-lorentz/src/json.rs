use serde_json::Value;
use space_core::ConformalFactor;

use crate::error::ConformalError;

/// Builds a conformal factor from its JSON form. Accepted shapes:
/// `{"type":"const","value":c}`, `{"type":"t_poly","coeffs":[c0,c1,..]}`
/// (polynomial in the time coordinate), `{"type":"t_exp","scale":s,
/// "rate":r}` (`s * exp(r t)`, both optional, default 1),
/// `{"type":"product","factors":[..]}`, `{"type":"reciprocal","of":..}`,
/// and `{"type":"expr_table","points":[[t,v],..]}` (piecewise linear in
/// time, clamped beyond the table). Positivity stays a runtime invariant
/// of evaluation; the parser checks only structure.
pub fn factor_from_json(v: &Value) -> Result<ConformalFactor, ConformalError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("factor must be an object"))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("factor needs a string `type`"))?;
    match kind {
        "const" => {
            let c = require_f64(obj.get("value"), "const needs a numeric `value`")?;
            if !(c.is_finite() && c > 0.0) {
                return Err(bad(&format!("const factor must be positive, got {c}")));
            }
            Ok(ConformalFactor::constant(c))
        }
        "t_poly" => {
            let coeffs: Vec<f64> = obj
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("t_poly needs a `coeffs` array"))?
                .iter()
                .map(|c| require_f64(Some(c), "t_poly coefficients must be numbers"))
                .collect::<Result<_, _>>()?;
            if coeffs.is_empty() {
                return Err(bad("t_poly needs at least one coefficient"));
            }
            let label = format!("poly{coeffs:?}");
            Ok(ConformalFactor::time_only(label, move |t| {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
            }))
        }
        "t_exp" => {
            let scale = match obj.get("scale") {
                Some(s) => require_f64(Some(s), "t_exp `scale` must be a number")?,
                None => 1.0,
            };
            let rate = match obj.get("rate") {
                Some(r) => require_f64(Some(r), "t_exp `rate` must be a number")?,
                None => 1.0,
            };
            if !(scale.is_finite() && scale > 0.0) {
                return Err(bad(&format!("t_exp scale must be positive, got {scale}")));
            }
            let label = format!("{scale}*exp({rate}t)");
            Ok(ConformalFactor::time_only(label, move |t| {
                scale * (rate * t).exp()
            }))
        }
        "product" => {
            let factors = obj
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("product needs a `factors` array"))?;
            let mut parsed = factors
                .iter()
                .map(factor_from_json)
                .collect::<Result<Vec<_>, _>>()?;
            let Some(mut acc) = parsed.pop() else {
                return Err(bad("product needs at least one factor"));
            };
            while let Some(next) = parsed.pop() {
                acc = ConformalFactor::product(&next, &acc);
            }
            Ok(acc)
        }
        "reciprocal" => {
            let inner = obj
                .get("of")
                .ok_or_else(|| bad("reciprocal needs an `of` factor"))?;
            Ok(factor_from_json(inner)?.reciprocal())
        }
        "expr_table" => {
            let rows = obj
                .get("points")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("expr_table needs a `points` array"))?;
            let mut table: Vec<(f64, f64)> = Vec::with_capacity(rows.len());
            for row in rows {
                let pair = row
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("expr_table rows must be [t, value] pairs"))?;
                table.push((
                    require_f64(Some(&pair[0]), "expr_table t must be a number")?,
                    require_f64(Some(&pair[1]), "expr_table value must be a number")?,
                ));
            }
            if table.len() < 2 {
                return Err(bad("expr_table needs at least two rows"));
            }
            if table.windows(2).any(|w| !(w[0].0 < w[1].0)) {
                return Err(bad("expr_table rows must have strictly increasing t"));
            }
            let lip = table
                .windows(2)
                .map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs())
                .fold(0.0f64, f64::max);
            let factor = ConformalFactor::time_only("table", move |t| {
                let i = table.partition_point(|&(ti, _)| ti <= t);
                if i == 0 {
                    table[0].1
                } else if i == table.len() {
                    table[table.len() - 1].1
                } else {
                    let (t0, v0) = table[i - 1];
                    let (t1, v1) = table[i];
                    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
                }
            });
            Ok(factor.with_lipschitz(lip))
        }
        other => Err(bad(&format!("unknown factor type `{other}`"))),
    }
}

fn bad(msg: &str) -> ConformalError {
    ConformalError::BadJson(msg.to_string())
}

fn require_f64(v: Option<&Value>, msg: &str) -> Result<f64, ConformalError> {
    v.and_then(Value::as_f64).ok_or_else(|| bad(msg))
}
