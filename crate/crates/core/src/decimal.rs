//! Serde adapters that write [`Integer`]s as decimal strings.
//!
//! JSON consumers commonly parse numbers as `f64` or `i64`; coefficients here
//! routinely exceed both, so they travel as strings.

use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

use crate::exactarith::Integer;

pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
    let raw = String::deserialize(d)?;
    raw.parse()
        .map_err(|_| D::Error::custom(format!("invalid decimal integer {raw:?}")))
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|raw| {
                raw.parse()
                    .map_err(|_| D::Error::custom(format!("invalid decimal integer {raw:?}")))
            })
            .collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Integer>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|raw| {
                raw.parse()
                    .map_err(|_| D::Error::custom(format!("invalid decimal integer {raw:?}")))
            })
            .transpose()
    }
}
