//! Per-tetrahedron coordinates that keep a shape near 1 or ∞ resolvable.
//!
//! Near the ideal point several shapes sit within rounding distance of 1 or
//! ∞, where `1 − z` or `1/z` carries all the information. Each tetrahedron is
//! therefore stored in whichever chart keeps the small quantity primary.

use num_complex::Complex64;

use super::eval::Pair;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Switch to the `1 − z` chart below this distance from 1.
const NEAR_ONE: f64 = 0.5;
/// Switch to the `1/z` chart beyond this modulus.
const NEAR_INFINITY: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Chart {
    /// `u = z`
    Direct,
    /// `u = 1 − z`
    NearOne,
    /// `u = 1/z`
    NearInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Coord {
    pub chart: Chart,
    pub u: Complex64,
}

impl Coord {
    pub fn from_pair(p: Pair) -> Coord {
        if p.w.norm() < NEAR_ONE {
            Coord { chart: Chart::NearOne, u: p.w }
        } else if p.z.norm() > NEAR_INFINITY {
            Coord { chart: Chart::NearInfinity, u: p.z.inv() }
        } else {
            Coord { chart: Chart::Direct, u: p.z }
        }
    }

    pub fn from_shape(z: Complex64) -> Coord {
        Coord::from_pair(Pair::of(z))
    }

    pub fn pair(&self) -> Pair {
        let u = self.u;
        match self.chart {
            Chart::Direct => Pair { z: u, w: ONE - u },
            Chart::NearOne => Pair { z: ONE - u, w: u },
            Chart::NearInfinity => Pair { z: u.inv(), w: (u - ONE) / u },
        }
    }

    pub fn z(&self) -> Complex64 {
        self.pair().z
    }

    pub fn dz_du(&self) -> Complex64 {
        match self.chart {
            Chart::Direct => ONE,
            Chart::NearOne => -ONE,
            Chart::NearInfinity => -(self.u * self.u).inv(),
        }
    }

    /// Move by `du` in the current chart, then pick the best chart for the
    /// result. `None` if the move lands on a non-finite point.
    pub fn step(&self, du: Complex64) -> Option<Coord> {
        let moved = Coord {
            chart: self.chart,
            u: self.u + du,
        };
        let p = moved.pair();
        if !(p.z.is_finite() && p.w.is_finite()) {
            return None;
        }
        Some(Coord::from_pair(p))
    }
}

pub(crate) fn coords(shapes: &[Complex64]) -> Vec<Coord> {
    shapes.iter().copied().map(Coord::from_shape).collect()
}

pub(crate) fn shapes(coords: &[Coord]) -> Vec<Complex64> {
    coords.iter().map(Coord::z).collect()
}

pub(crate) fn pairs(coords: &[Coord]) -> Vec<Pair> {
    coords.iter().map(Coord::pair).collect()
}
