//! Line-delimited output records and exactness-tagged numbers.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{Map, Value};

use crate::roots::Real;

/// An integer read from config: a native integer or a decimal string (for
/// values beyond 64 bits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLiteral(pub BigInt);

impl<'de> Deserialize<'de> for IntLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntLiteral;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<IntLiteral, E> {
                Ok(IntLiteral(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<IntLiteral, E> {
                Ok(IntLiteral(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<IntLiteral, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(IntLiteral)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// A number tagged with how it was computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "exact", rename_all = "snake_case")]
pub enum Num {
    /// Exact integer, decimal.
    #[serde(rename = "integer")]
    Integer { value: String },
    #[serde(rename = "rational")]
    Rational { value: String },
    /// Floating value with its binary precision and an exact hex dump.
    #[serde(rename = "float")]
    Float {
        decimal: String,
        hex: String,
        prec: u32,
    },
}

impl Num {
    pub fn int(x: &BigInt) -> Num {
        Num::Integer {
            value: x.to_string(),
        }
    }

    pub fn small(x: i64) -> Num {
        Num::Integer {
            value: x.to_string(),
        }
    }

    pub fn rational(x: &BigRational) -> Num {
        Num::Rational {
            value: x.to_string(),
        }
    }

    pub fn real(x: &Real) -> Num {
        Num::Float {
            decimal: x.to_string_radix(10, Some(25)),
            hex: x.to_string_radix(16, None),
            prec: x.prec(),
        }
    }

    pub fn f64(x: f64) -> Num {
        Num::real(&Real::with_val(53, x))
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Builder for one output record; keys serialize in sorted order.
#[derive(Clone, Debug, Default)]
pub struct Record(Map<String, Value>);

impl Record {
    pub fn new(kind: &str) -> Record {
        let mut m = Map::new();
        m.insert("record".into(), Value::String(kind.into()));
        Record(m)
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Record {
        self.0.insert(
            key.into(),
            serde_json::to_value(v).expect("serializable field"),
        );
        self
    }

    pub fn num(self, key: &str, n: Num) -> Record {
        let v = n.to_value();
        self.with(key, v)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(&self.0).expect("plain data")
    }
}

/// Writes records as JSON lines.
pub struct RecordWriter<W: Write> {
    out: W,
    count: usize,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W) -> Self {
        RecordWriter { out, count: 0 }
    }

    pub fn write(&mut self, r: &Record) -> std::io::Result<()> {
        self.count += 1;
        writeln!(self.out, "{}", r.to_line())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_literals() {
        let v: Vec<IntLiteral> =
            serde_json::from_str(r#"[1, -2, "123456789012345678901234567890"]"#).unwrap();
        assert_eq!(v[1].0, BigInt::from(-2));
        assert_eq!(v[2].0.to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<IntLiteral>(r#""1.5""#).is_err());
    }

    #[test]
    fn tagged_numbers() {
        let r = Record::new("t")
            .num("a", Num::small(4))
            .num("b", Num::real(&Real::with_val(64, 0.5)));
        assert_eq!(
            r.to_line(),
            r#"{"a":{"exact":"integer","value":"4"},"b":{"decimal":"5.000000000000000000000000e-1","exact":"float","hex":"8.0000000000000000@-1","prec":64},"record":"t"}"#
        );
    }
}
