//! Serde helpers: complex scalars travel as `[re, im]` pairs in every schema.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub fn c64_to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pair_to_c64(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn check_finite(p: [f64; 2]) -> Result<Complex64, String> {
    if p[0].is_finite() && p[1].is_finite() {
        Ok(pair_to_c64(p))
    } else {
        Err(format!("complex entry [{}, {}] must be finite", p[0], p[1]))
    }
}

pub mod c64 {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&c64_to_pair(*z), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = <[f64; 2]>::deserialize(d)?;
        check_finite(p).map_err(D::Error::custom)
    }
}

pub mod c64_opt {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&z.map(c64_to_pair), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        let p = <Option<[f64; 2]>>::deserialize(d)?;
        p.map(|p| check_finite(p).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod c64_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().copied().map(c64_to_pair).collect();
        serde::Serialize::serialize(&pairs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        pairs
            .into_iter()
            .map(|p| check_finite(p).map_err(D::Error::custom))
            .collect()
    }
}
