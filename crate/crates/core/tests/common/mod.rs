#![allow(dead_code)]

use frechet_core::{Curve, Point, Segment};
use frechet_testkit::Pts;

pub fn curve(v: &Pts) -> Curve {
    Curve::new(&v.iter().map(|p| Point::new(p.clone()).unwrap()).collect::<Vec<_>>()).unwrap()
}

pub fn curve2(v: &[(f64, f64)]) -> Curve {
    curve(&v.iter().map(|&(x, y)| vec![x, y]).collect())
}

pub fn pts(c: &Curve) -> Pts {
    c.points().iter().map(|p| p.coords().to_vec()).collect()
}

pub fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
    Segment::new(Point::new(vec![a.0, a.1]).unwrap(), Point::new(vec![b.0, b.1]).unwrap()).unwrap()
}

pub fn p2(x: f64, y: f64) -> Point {
    Point::new(vec![x, y]).unwrap()
}
