//! Point sets in the unit cube, stored as flat coordinate arrays.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use rand::Rng;

/// `n` points in [0,1]^d, row-major: point `i` occupies
/// `coords[i*d .. (i+1)*d]`. Whether distances wrap around (torus) or not
/// (cube) is a property of the operations, not of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(d: usize, coords: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParam("dimension must be positive".into()));
        }
        if coords.len() % d != 0 {
            return Err(Error::InvalidParam(format!(
                "coordinate buffer length {} is not a multiple of d = {d}",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidParam("coordinates must lie in [0,1]".into()));
        }
        Ok(Self { d, coords })
    }

    pub fn from_rows(d: usize, rows: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Self::new(d, coords)
    }

    /// `n` i.i.d. uniform points in [0,1]^d.
    pub fn sample_uniform(d: usize, n: usize, rng: RngStream) -> Self {
        let mut r = rng.rng();
        let coords = (0..n * d).map(|_| r.random::<f64>()).collect();
        Self { d, coords }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d)
    }
}
