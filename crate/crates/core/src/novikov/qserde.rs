//! Rationals travel as strings `"p/q"` (or `"p"`) in every JSON format.

use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serializer};

use super::Q;

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    Q::from_str(s.trim()).map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}")))
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| Q::from_str(s.trim()).map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

pub mod exponent {
    use super::*;
    use crate::novikov::Exponent;

    pub fn serialize<S: Serializer>(x: &Exponent, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exponent, D::Error> {
        let s = String::deserialize(d)?;
        Exponent::from_str(s.trim()).map_err(|_| serde::de::Error::custom(format!("bad exponent {s:?}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[Exponent], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Exponent>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| Exponent::from_str(s.trim()).map_err(|_| serde::de::Error::custom(format!("bad exponent {s:?}"))))
                .collect()
        }
    }
}
