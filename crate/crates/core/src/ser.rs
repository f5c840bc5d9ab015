//! Serialization helpers.

use num_complex::Complex64;
use serde::ser::SerializeTuple;
use serde::Serializer;

/// Complex numbers as `[re, im]`.
pub(crate) fn complex<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}
