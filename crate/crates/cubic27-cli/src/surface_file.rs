//! The surface file format: `{p, k, modulus, coeffs[20], label?}`.
//!
//! Elements are written as arrays of k residues in the power basis of the
//! modulus (low degree first); a bare integer is accepted for a prime-field
//! element. `modulus` is the monic modulus, low degree first, and may be
//! omitted to get the library's default choice.

use cubic27::gf::{Fe, Field};
use cubic27::surface::CubicForm;
use serde_json::{json, Value};

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub struct SurfaceFile {
    pub form: CubicForm,
    pub label: Option<String>,
}

fn uint(v: &Value, field: &str) -> Result<u64, InputError> {
    v.as_u64().ok_or_else(|| bad(format!("field `{field}`: expected a non-negative integer, got {v}")))
}

pub fn field_from(p: u64, k: usize, modulus: Option<&[i64]>) -> Result<Field, InputError> {
    if k == 0 {
        return Err(bad("field `k`: must be at least 1"));
    }
    let f = match modulus {
        Some(m) => {
            if m.len() != k + 1 {
                return Err(bad(format!("field `modulus`: expected {} coefficients, got {}", k + 1, m.len())));
            }
            Field::with_modulus(p, m)
        }
        None => Field::gf(p, k),
    };
    f.map_err(|e| bad(format!("field `{}`: {e}", if modulus.is_some() { "modulus" } else { "p" })))
}

pub fn element(f: &Field, v: &Value, field: &str) -> Result<Fe, InputError> {
    let residues: Vec<i64> = match v {
        Value::Number(_) => vec![v.as_i64().ok_or_else(|| bad(format!("field `{field}`: bad integer {v}")))?],
        Value::Array(a) => a
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| bad(format!("field `{field}`: residue {x} is not an integer"))))
            .collect::<Result<_, _>>()?,
        _ => return Err(bad(format!("field `{field}`: expected an integer or an array of residues"))),
    };
    f.try_from_coeffs(&residues).map_err(|e| bad(format!("field `{field}`: {e}")))
}

/// Parse an element from a command-line string: `3` or `1,0,1`.
pub fn element_arg(f: &Field, s: &str, what: &str) -> Result<Fe, InputError> {
    let residues: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| bad(format!("{what}: `{s}` is not a residue list"))))
        .collect::<Result<_, _>>()?;
    f.try_from_coeffs(&residues).map_err(|e| bad(format!("{what}: {e}")))
}

pub fn element_json(f: &Field, a: &Fe) -> Value {
    json!(f.coeffs(a))
}

pub fn field_json(f: &Field) -> Value {
    json!({ "p": f.p(), "k": f.k(), "modulus": f.modulus() })
}

pub fn parse(text: &str) -> Result<SurfaceFile, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| bad("top level: expected an object"))?;
    let get = |name: &str| obj.get(name).ok_or_else(|| bad(format!("field `{name}`: missing")));
    let p = uint(get("p")?, "p")?;
    let k = match obj.get("k") {
        Some(x) => uint(x, "k")? as usize,
        None => 1,
    };
    let modulus: Option<Vec<i64>> = match obj.get("modulus") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|x| x.as_i64().ok_or_else(|| bad(format!("field `modulus`: {x} is not an integer"))))
                .collect::<Result<_, _>>()?,
        ),
        Some(x) => return Err(bad(format!("field `modulus`: expected an array, got {x}"))),
    };
    let f = field_from(p, k, modulus.as_deref())?;
    let coeffs = get("coeffs")?.as_array().ok_or_else(|| bad("field `coeffs`: expected an array"))?;
    if coeffs.len() != 20 {
        return Err(bad(format!("field `coeffs`: expected 20 entries, got {}", coeffs.len())));
    }
    let mut c = [f.zero(); 20];
    for (i, x) in coeffs.iter().enumerate() {
        c[i] = element(&f, x, &format!("coeffs[{i}]"))?;
    }
    if c.iter().all(|x| x.is_zero()) {
        return Err(bad("field `coeffs`: the form is identically zero"));
    }
    let label = match obj.get("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(x) => return Err(bad(format!("field `label`: expected a string, got {x}"))),
    };
    Ok(SurfaceFile { form: CubicForm::new(&f, c), label })
}

pub fn to_json(form: &CubicForm, label: Option<&str>) -> Value {
    let f = &form.field;
    let mut v = field_json(f);
    v["coeffs"] = Value::Array(form.c.iter().map(|a| element_json(f, a)).collect());
    if let Some(l) = label {
        v["label"] = json!(l);
    }
    v
}
