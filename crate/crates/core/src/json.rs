//! JSON-facing value types.
//!
//! Complex numbers are written as `{"re": .., "im": ..}` objects rather than
//! the `[re, im]` pairs `num-complex` would produce.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Serde adapter for a single `Complex64` field.
pub mod complex {
    use super::ComplexValue;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ComplexValue::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        ComplexValue::deserialize(d).map(Complex64::from)
    }
}

/// Serde adapter for `Vec<Complex64>`.
pub mod complex_vec {
    use super::ComplexValue;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<ComplexValue> = v.iter().copied().map(ComplexValue::from).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let v = Vec::<ComplexValue>::deserialize(d)?;
        Ok(v.into_iter().map(Complex64::from).collect())
    }
}

/// Serde adapter for `Option<Complex64>`.
pub mod complex_opt {
    use super::ComplexValue;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(ComplexValue::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<ComplexValue>::deserialize(d)?.map(Complex64::from))
    }
}
