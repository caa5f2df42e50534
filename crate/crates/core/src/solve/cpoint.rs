use serde::{Serialize, Serializer};

use super::cpoly::C64;
use crate::poly::rat::to_f64;
use crate::poly::Rat;

/// Coordinates below this modulus are treated as zero when choosing the
/// coordinate rotated onto the positive real axis.
const PHASE_EPS: f64 = 1e-8;

/// A complex point. Projective representatives are scaled to unit norm
/// with the first non-negligible coordinate real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoint {
    coords: Vec<C64>,
}

impl CPoint {
    pub fn new(coords: Vec<C64>) -> Self {
        CPoint { coords }
    }

    pub fn from_rats(p: &[Rat]) -> Self {
        CPoint::new(p.iter().map(|v| C64::new(to_f64(v), 0.0)).collect()).normalized()
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> CPoint {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        let scaled: Vec<C64> = self.coords.iter().map(|c| c / n).collect();
        let phase = scaled
            .iter()
            .find(|c| c.norm() > PHASE_EPS)
            .map(|c| c.conj() / c.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        CPoint::new(scaled.into_iter().map(|c| c * phase).collect())
    }

    /// `sqrt(1 - |<p, q>|²)` for the unit representatives; the sine of the
    /// angle between the two lines. Computed as the norm of the component
    /// of `p` orthogonal to `q`, which keeps precision for close points.
    pub fn sine_distance(&self, other: &CPoint) -> f64 {
        let (a, b) = (self.normalized(), other.normalized());
        let inner: C64 = b.coords.iter().zip(&a.coords).map(|(x, y)| x.conj() * y).sum();
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x - inner * y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Sort key on a 1e-6 grid.
    pub(crate) fn sort_key(&self) -> Vec<(i64, i64)> {
        self.coords
            .iter()
            .map(|c| ((c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64))
            .collect()
    }
}

impl Serialize for CPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;

    #[test]
    fn normalization_fixes_phase() {
        let p = CPoint::new(vec![C64::new(0.0, 0.0), C64::new(0.0, 2.0), C64::new(2.0, 0.0)]);
        let n = p.normalized();
        assert!((n.norm() - 1.0).abs() < 1e-15);
        assert!(n.coords()[1].im.abs() < 1e-15 && n.coords()[1].re > 0.0);
        let q = CPoint::new(p.coords().iter().map(|c| c * C64::new(-3.0, 1.0)).collect());
        assert!(q.sine_distance(&p) < 1e-12);
        assert!((q.normalized().coords()[2] - n.coords()[2]).norm() < 1e-12);
    }

    #[test]
    fn distance_between_coordinate_points() {
        let a = CPoint::from_rats(&ints(&[1, 0]));
        let b = CPoint::from_rats(&ints(&[0, 1]));
        assert!((a.sine_distance(&b) - 1.0).abs() < 1e-15);
    }
}
