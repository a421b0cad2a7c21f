//! CSV and JSON emitters. Floats always carry 17 significant digits.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// Scientific notation with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let mut ser = Serializer::with_formatter(&mut *out, Precise);
    value.serialize(&mut ser).map_err(io::Error::from)?;
    out.write_all(b"\n")
}

pub fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(real(1.0), "1.0000000000000000e0");
        assert_eq!(real(-0.1), "-1.0000000000000001e-1");
        assert_eq!(real(f64::NAN), "NaN");
        for x in [std::f64::consts::PI, -3.0e-300, 123456.789] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_numbers_round_trip() {
        let mut buf = Vec::new();
        write_json(&mut buf, &serde_json::json!({"x": 0.1, "n": 3, "v": [1.5]})).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "{\"n\":3,\"v\":[1.5000000000000000e0],\"x\":1.0000000000000001e-1}\n");
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], &[vec!["1".into(), real(2.0)]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,2.0000000000000000e0\n");
    }
}
