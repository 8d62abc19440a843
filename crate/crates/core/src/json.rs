// SPDX-License-Identifier: Apache-2.0

//! Deterministic JSON output: fixed field order, complex numbers as `[re, im]`,
//! and every float written with 17 significant digits.

use std::io;

use ndarray::Array2;
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::ser::Formatter;

#[derive(Debug, Default, Clone, Copy)]
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serialize to a single line of JSON (no trailing newline).
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

pub(crate) fn complex_rows<S: Serializer>(m: &Array2<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for row in m.rows() {
        let row: Vec<[f64; 2]> = row.iter().map(|z| [z.re, z.im]).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub(crate) fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        b: f64,
        a: i32,
        #[serde(serialize_with = "complex_pair")]
        z: Complex64,
        none: Option<f64>,
    }

    #[test]
    fn seventeen_digits_fixed_order() {
        let s = Sample {
            b: 2.0 * std::f64::consts::PI / 3.0,
            a: -3,
            z: Complex64::new(0.5, -0.0),
            none: None,
        };
        assert_eq!(
            to_string(&s),
            r#"{"b":2.0943951023931953e0,"a":-3,"z":[5.0000000000000000e-1,-0.0000000000000000e0],"none":null}"#
        );
        let back: serde_json::Value = serde_json::from_str(&to_string(&s)).unwrap();
        assert_eq!(back["b"].as_f64().unwrap(), s.b);
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(to_string(&[f64::NAN, 1.0]), "[null,1.0000000000000000e0]");
    }
}
