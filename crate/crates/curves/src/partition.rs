use crate::curve::Curve;
use crate::error::CurveError;

/// A finite partition `a = t_0 < t_1 < ... < t_k = b` of a parameter
/// interval. The strict ordering is enforced at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    pub fn new(points: Vec<f64>) -> Result<Partition, CurveError> {
        if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(CurveError::BadPartition(points));
        }
        Ok(Partition { points })
    }

    /// `n` equal gaps over `[a, b]` (so `n + 1` points).
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Partition, CurveError> {
        if !(a < b) || n == 0 {
            return Err(CurveError::BadPartition(vec![a, b]));
        }
        let mut points: Vec<f64> = (0..=n)
            .map(|i| a + (b - a) * i as f64 / n as f64)
            .collect();
        points[0] = a;
        points[n] = b;
        Partition::new(points)
    }

    /// The trivial partition `{a, b}` of the curve's domain.
    pub fn trivial(curve: &Curve) -> Partition {
        Partition {
            points: vec![curve.a, curve.b],
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    /// Largest gap.
    pub fn modulus(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Splits every gap at its midpoint: the dyadic refinement step. Every
    /// existing point (any forced split point included) is preserved.
    pub fn refine_half(&self) -> Partition {
        let mut points = Vec::with_capacity(self.points.len() * 2 - 1);
        for w in self.points.windows(2) {
            points.push(w[0]);
            points.push(0.5 * (w[0] + w[1]));
        }
        points.push(*self.points.last().unwrap());
        Partition { points }
    }

    /// Union with another partition of the same interval.
    pub fn merge(&self, other: &Partition) -> Result<Partition, CurveError> {
        let mut points: Vec<f64> = self
            .points
            .iter()
            .chain(other.points.iter())
            .copied()
            .collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        Partition::new(points)
    }

    /// Checks that the partition spans the curve's domain.
    pub fn validate_for(&self, curve: &Curve) -> Result<(), CurveError> {
        let tol = 1e-9 * (curve.b - curve.a);
        let a = self.points[0];
        let b = *self.points.last().unwrap();
        if (a - curve.a).abs() > tol || (b - curve.b).abs() > tol {
            return Err(CurveError::PartitionMismatch {
                want_a: curve.a,
                want_b: curve.b,
                got_a: a,
                got_b: b,
            });
        }
        Ok(())
    }

    /// True when `other`'s points all appear in `self`.
    pub fn refines(&self, other: &Partition) -> bool {
        other
            .points
            .iter()
            .all(|p| self.points.binary_search_by(|q| q.total_cmp(p)).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_disorder() {
        assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Partition::new(vec![0.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.4, 1.0]).is_ok());
    }

    #[test]
    fn refine_half_keeps_forced_points() {
        let base = Partition::new(vec![0.0, 0.3, 1.0]).unwrap();
        let fine = base.refine_half();
        assert_eq!(fine.points(), &[0.0, 0.15, 0.3, 0.65, 1.0]);
        assert!(fine.refines(&base));
        assert!((fine.modulus() - 0.35).abs() < 1e-15);
    }

    #[test]
    fn uniform_hits_endpoints_exactly() {
        let p = Partition::uniform(0.1, 0.9, 7).unwrap();
        assert_eq!(p.points()[0], 0.1);
        assert_eq!(*p.points().last().unwrap(), 0.9);
        assert_eq!(p.segments(), 7);
    }
}
