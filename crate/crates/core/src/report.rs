//! Serialization helpers: exact rationals are written as `"p/q"` strings.

use serde::ser::{SerializeSeq, Serializer};

use crate::arith::{rat_to_string, Rat};

pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(x))
}

pub fn ser_rat_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&rat_to_string(x))?;
    }
    seq.end()
}

pub fn ser_opt_rat_vec<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rat_vec(v, s),
        None => s.serialize_none(),
    }
}

pub fn ser_rat_vecs<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let strs: Vec<String> = row.iter().map(rat_to_string).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}
