//! JSON encoding of exact values.
//!
//! Rationals are `[num, den]` and scalars `[re_num, re_den, im_num, im_den]`,
//! all as JSON integers of unbounded size, so every value round-trips
//! bit-exactly.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::series::{BSeries, LSeries, Rational, Scalar, Series, Window};

/// Conversion to and from the JSON wire form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn err(what: &str, v: &Value) -> Error {
    let mut shown = v.to_string();
    if shown.len() > 80 {
        shown.truncate(77);
        shown.push_str("...");
    }
    Error::Json(format!("{what}: got {shown}"))
}

fn big(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

fn parse_big(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| err(&format!("{what} must be an integer"), v)),
        _ => Err(err(&format!("{what} must be an integer"), v)),
    }
}

fn ratio(num: BigInt, den: BigInt, what: &str, v: &Value) -> Result<Rational> {
    if den.is_zero() {
        return Err(err(&format!("{what} has zero denominator"), v));
    }
    Ok(Rational::new(num, den))
}

/// Reads `obj[key]`, naming the field in the error.
pub fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Json(format!("missing field `{key}`")))
}

pub fn field_u64(obj: &Value, key: &str) -> Result<u64> {
    field(obj, key)?
        .as_u64()
        .ok_or_else(|| Error::Json(format!("field `{key}` must be a nonnegative integer")))
}

pub fn field_i64(obj: &Value, key: &str) -> Result<i64> {
    field(obj, key)?
        .as_i64()
        .ok_or_else(|| Error::Json(format!("field `{key}` must be an integer")))
}

/// Parses `obj[key]` and prefixes any error with the field path.
pub fn field_as<T: Json>(obj: &Value, key: &str) -> Result<T> {
    T::from_json(field(obj, key)?).map_err(|e| match e {
        Error::Json(m) => Error::Json(format!("{key}: {m}")),
        other => other,
    })
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| err(&format!("{what} must be an array"), v))
}

impl Json for Rational {
    fn to_json(&self) -> Value {
        Value::Array(vec![big(self.numer()), big(self.denom())])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let a = array(v, "rational")?;
        if a.len() != 2 {
            return Err(err("rational must be [num, den]", v));
        }
        ratio(
            parse_big(&a[0], "num")?,
            parse_big(&a[1], "den")?,
            "rational",
            v,
        )
    }
}

impl Json for Scalar {
    fn to_json(&self) -> Value {
        Value::Array(vec![
            big(self.re.numer()),
            big(self.re.denom()),
            big(self.im.numer()),
            big(self.im.denom()),
        ])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let a = array(v, "scalar")?;
        if a.len() != 4 {
            return Err(err("scalar must be [re_num, re_den, im_num, im_den]", v));
        }
        let re = ratio(
            parse_big(&a[0], "re_num")?,
            parse_big(&a[1], "re_den")?,
            "re",
            v,
        )?;
        let im = ratio(
            parse_big(&a[2], "im_num")?,
            parse_big(&a[3], "im_den")?,
            "im",
            v,
        )?;
        Ok(Scalar::new(re, im))
    }
}

impl Json for LSeries {
    fn to_json(&self) -> Value {
        let w = self.window();
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, c)| Value::Array(vec![json!(m), c.to_json()]))
            .collect();
        json!({"lo": w.lo, "hi": w.hi, "terms": terms})
    }
    fn from_json(v: &Value) -> Result<Self> {
        let lo = field_i64(v, "lo")?;
        let hi = field_i64(v, "hi")?;
        if lo > hi || lo < i32::MIN as i64 || hi > i32::MAX as i64 {
            return Err(err("laurent window must satisfy lo <= hi", v));
        }
        let window = Window::new(lo as i32, hi as i32);
        let mut terms = Vec::new();
        for t in array(field(v, "terms")?, "terms")? {
            let pair = array(t, "term")?;
            if pair.len() != 2 {
                return Err(err("term must be [exponent, scalar]", t));
            }
            let m = pair[0]
                .as_i64()
                .ok_or_else(|| err("exponent must be an integer", &pair[0]))?;
            terms.push((m as i32, Scalar::from_json(&pair[1])?));
        }
        LSeries::new(window, terms)
    }
}

impl Json for Series<Scalar> {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Value::Array(vec![json!(k), c.to_json()]))
            .collect();
        json!({"order": self.order(), "terms": terms})
    }
    fn from_json(v: &Value) -> Result<Self> {
        let order = field_u64(v, "order")? as usize;
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for t in array(field(v, "terms")?, "terms")? {
            let pair = array(t, "term")?;
            if pair.len() != 2 {
                return Err(err("term must be [exponent, scalar]", t));
            }
            let k = pair[0]
                .as_u64()
                .ok_or_else(|| err("exponent must be a nonnegative integer", &pair[0]))?
                as usize;
            if k > order {
                return Err(Error::OutOfWindow {
                    index: k as i64,
                    lo: 0,
                    hi: order as i64,
                });
            }
            coeffs[k] = Scalar::from_json(&pair[1])?;
        }
        Ok(Series::from_coeffs(coeffs))
    }
}

impl Json for Series<LSeries> {
    fn to_json(&self) -> Value {
        let w = self.window();
        let coeffs: Vec<Value> = self
            .coeffs()
            .iter()
            .map(|c| {
                Value::Array(
                    c.terms()
                        .map(|(m, s)| Value::Array(vec![json!(m), s.to_json()]))
                        .collect(),
                )
            })
            .collect();
        json!({"order": self.order(), "lo": w.lo, "hi": w.hi, "coeffs": coeffs})
    }
    fn from_json(v: &Value) -> Result<Self> {
        let order = field_u64(v, "order")? as usize;
        let lo = field_i64(v, "lo")?;
        let hi = field_i64(v, "hi")?;
        let coeffs = array(field(v, "coeffs")?, "coeffs")?;
        if coeffs.len() != order + 1 {
            return Err(err(
                &format!("coeffs must have order + 1 = {} entries", order + 1),
                &json!(coeffs.len()),
            ));
        }
        let mut out = Vec::with_capacity(order + 1);
        for c in coeffs {
            let mut obj = Map::new();
            obj.insert("lo".into(), json!(lo));
            obj.insert("hi".into(), json!(hi));
            obj.insert("terms".into(), c.clone());
            out.push(LSeries::from_json(&Value::Object(obj))?);
        }
        Ok(Series::from_coeffs(out))
    }
}

impl Json for BSeries {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(i, j, c)| Value::Array(vec![json!(i), json!(j), c.to_json()]))
            .collect();
        json!({"degree": self.degree(), "terms": terms})
    }
    fn from_json(v: &Value) -> Result<Self> {
        let degree = field_u64(v, "degree")? as u32;
        let mut terms = Vec::new();
        for t in array(field(v, "terms")?, "terms")? {
            let tr = array(t, "term")?;
            if tr.len() != 3 {
                return Err(err("term must be [i, j, scalar]", t));
            }
            let i = tr[0]
                .as_u64()
                .ok_or_else(|| err("i must be a nonnegative integer", &tr[0]))?;
            let j = tr[1]
                .as_u64()
                .ok_or_else(|| err("j must be a nonnegative integer", &tr[1]))?;
            terms.push((i as u32, j as u32, Scalar::from_json(&tr[2])?));
        }
        BSeries::new(degree, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    #[test]
    fn huge_rationals_round_trip() {
        let big_num: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let q = Rational::new(big_num, BigInt::from(7));
        let s = Scalar::new(q.clone(), -q);
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(Scalar::from_json(&back).unwrap(), s);
    }

    #[test]
    fn scalar_shape() {
        let s = Scalar::new(rat(1, 2), int(-3));
        assert_eq!(serde_json::to_string(&s.to_json()).unwrap(), "[1,2,-3,1]");
    }

    #[test]
    fn series_round_trip() {
        let w = Window::symmetric(4);
        let l = LSeries::new(w, [(-2, Scalar::from_int(3)), (1, Scalar::i())]).unwrap();
        assert_eq!(LSeries::from_json(&l.to_json()).unwrap(), l);
        let m = Series::from_coeffs(vec![l.clone(), LSeries::zero(w), l.clone()]);
        assert_eq!(Series::<LSeries>::from_json(&m.to_json()).unwrap(), m);
        let p = Series::monomial(5, 3, Scalar::from_ratio(2, 3));
        assert_eq!(Series::<Scalar>::from_json(&p.to_json()).unwrap(), p);
        let b = BSeries::new(6, [(1, 2, Scalar::from_int(5))]).unwrap();
        assert_eq!(BSeries::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn malformed_inputs_name_the_problem() {
        let e = Scalar::from_json(&json!([1, 0, 0, 1])).unwrap_err();
        assert!(e.to_string().contains("zero denominator"));
        let e = field_as::<LSeries>(&json!({"beta": {"lo": 0}}), "beta").unwrap_err();
        assert!(e.to_string().contains("beta"));
        assert!(e.to_string().contains("hi"));
        assert!(matches!(
            LSeries::from_json(&json!({"lo": -1, "hi": 1, "terms": [[2, [1, 1, 0, 1]]]})),
            Err(Error::OutOfWindow { .. })
        ));
    }
}
