use serde::Serialize;

/// A point of a named space, stored as ambient coordinates.
///
/// Coordinate 0 is the time coordinate on the 2-d catalog spaces; 1-d spaces
/// use a single coordinate. Points carry their space id so that mixing
/// points across spaces can be detected at module boundaries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Point {
    pub space_id: &'static str,
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(space_id: &'static str, coords: Vec<f64>) -> Point {
        Point { space_id, coords }
    }

    /// One-coordinate point.
    pub fn d1(space_id: &'static str, x: f64) -> Point {
        Point::new(space_id, vec![x])
    }

    /// Two-coordinate point, time first.
    pub fn d2(space_id: &'static str, t: f64, x: f64) -> Point {
        Point::new(space_id, vec![t, x])
    }

    /// Coordinate 0 (time on the 2-d catalog spaces, position on 1-d ones).
    pub fn t(&self) -> f64 {
        self.coords[0]
    }

    /// Coordinate 1. Precondition: the point has at least two coordinates.
    pub fn x(&self) -> f64 {
        self.coords[1]
    }
}
