//! Exact rational points and orientation predicates.
//!
//! Batch predicates go through [`Frame`], which rescales every point to a
//! common integer grid once. On that grid orientation is a plain integer
//! determinant: `i128` when coordinates are small, otherwise a floating
//! point filter with a rigorous error bound and an exact `BigInt` fallback.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn dist_sq(&self, o: &Point) -> Rational {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &dx * &dx + &dy * &dy
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Point {
        Point { x: &self.x + dx, y: &self.y + dy }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `Greater` for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let l = (&b.x - &a.x) * (&c.y - &a.y);
    let r = (&b.y - &a.y) * (&c.x - &a.x);
    l.cmp(&r)
}

const SMALL: i64 = 1 << 61;
const U: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone)]
enum Repr {
    Small(Vec<[i64; 2]>),
    Big { exact: Vec<[BigInt; 2]>, approx: Vec<[f64; 2]> },
}

/// Points rescaled by the lcm of all denominators.
#[derive(Debug, Clone)]
pub struct Frame {
    repr: Repr,
    scale: BigInt,
}

impl Frame {
    pub fn new(points: &[Point]) -> Frame {
        let mut scale = BigInt::one();
        for p in points {
            scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let exact: Vec<[BigInt; 2]> = points
            .iter()
            .map(|p| {
                [
                    p.x.numer() * (&scale / p.x.denom()),
                    p.y.numer() * (&scale / p.y.denom()),
                ]
            })
            .collect();
        let small = exact
            .iter()
            .flatten()
            .all(|v| v.to_i64().is_some_and(|s| s.abs() < SMALL));
        let repr = if small {
            Repr::Small(exact.iter().map(|[x, y]| [x.to_i64().unwrap(), y.to_i64().unwrap()]).collect())
        } else {
            let approx = exact
                .iter()
                .map(|[x, y]| [x.to_f64().unwrap_or(f64::INFINITY), y.to_f64().unwrap_or(f64::INFINITY)])
                .collect();
            Repr::Big { exact, approx }
        };
        Frame { repr, scale }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.len(),
            Repr::Big { exact, .. } => exact.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Common denominator used for the integer grid.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Integer coordinates of point `i` on the grid.
    pub fn coords(&self, i: usize) -> [BigInt; 2] {
        match &self.repr {
            Repr::Small(v) => [v[i][0].into(), v[i][1].into()],
            Repr::Big { exact, .. } => exact[i].clone(),
        }
    }

    pub fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        match &self.repr {
            Repr::Small(v) => {
                let (a, b, c) = (v[a], v[b], v[c]);
                let l = (b[0] - a[0]) as i128 * (c[1] - a[1]) as i128;
                let r = (b[1] - a[1]) as i128 * (c[0] - a[0]) as i128;
                l.cmp(&r)
            }
            Repr::Big { exact, approx } => {
                if let Some(s) = orient_filtered(approx[a], approx[b], approx[c]) {
                    return s;
                }
                let (a, b, c) = (&exact[a], &exact[b], &exact[c]);
                let l = (&b[0] - &a[0]) * (&c[1] - &a[1]);
                let r = (&b[1] - &a[1]) * (&c[0] - &a[0]);
                l.cmp(&r)
            }
        }
    }

    /// Compares coordinate `axis` (0 = x, 1 = y) of two points.
    pub fn cmp_axis(&self, a: usize, b: usize, axis: usize) -> Ordering {
        match &self.repr {
            Repr::Small(v) => v[a][axis].cmp(&v[b][axis]),
            Repr::Big { exact, .. } => exact[a][axis].cmp(&exact[b][axis]),
        }
    }

    pub fn same_point(&self, a: usize, b: usize) -> bool {
        self.cmp_axis(a, b, 0).is_eq() && self.cmp_axis(a, b, 1).is_eq()
    }

    /// Whether `p` lies in the closed bounding box of `a` and `b`.
    pub fn in_box(&self, p: usize, a: usize, b: usize) -> bool {
        (0..2).all(|ax| {
            let lo_ok = self.cmp_axis(p, a, ax).is_ge() || self.cmp_axis(p, b, ax).is_ge();
            let hi_ok = self.cmp_axis(p, a, ax).is_le() || self.cmp_axis(p, b, ax).is_le();
            lo_ok && hi_ok
        })
    }

    /// Squared distance on the integer grid.
    pub fn dist_sq(&self, a: usize, b: usize) -> BigInt {
        match &self.repr {
            Repr::Small(v) => {
                let dx = (v[a][0] - v[b][0]) as i128;
                let dy = (v[a][1] - v[b][1]) as i128;
                // Each square is below 2^124, so the sum cannot overflow.
                BigInt::from(dx * dx + dy * dy)
            }
            Repr::Big { exact, .. } => {
                let dx = &exact[a][0] - &exact[b][0];
                let dy = &exact[a][1] - &exact[b][1];
                &dx * &dx + &dy * &dy
            }
        }
    }
}

/// Floating point orientation on integer inputs that were each rounded once.
/// Returns `None` when the result is too close to call.
fn orient_filtered(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<Ordering> {
    let l = (b[0] - a[0]) * (c[1] - a[1]);
    let r = (b[1] - a[1]) * (c[0] - a[0]);
    let det = l - r;
    let mag = (b[0].abs() + a[0].abs()) * (c[1].abs() + a[1].abs())
        + (b[1].abs() + a[1].abs()) * (c[0].abs() + a[0].abs());
    // Rounding of inputs, differences, products and the final subtraction
    // stays below 7u * mag; doubled for slack.
    let bound = 16.0 * U * mag;
    if !det.is_finite() || !bound.is_finite() {
        return None;
    }
    if det > bound {
        Some(Ordering::Greater)
    } else if -det > bound {
        Some(Ordering::Less)
    } else if mag == 0.0 {
        Some(Ordering::Equal)
    } else {
        None
    }
}

/// `floor(log2 |x|)` for nonzero `x`.
pub fn floor_log2(x: &BigInt) -> i64 {
    x.bits() as i64 - 1
}
