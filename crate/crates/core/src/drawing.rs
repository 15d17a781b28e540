use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{Point, Rational};
use crate::graph::Graph;

/// A graph with an exact rational position per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Drawing {
    graph: Graph,
    coords: Vec<Point>,
}

impl Drawing {
    pub fn new(graph: Graph, coords: Vec<Point>) -> Result<Self> {
        if graph.n() != coords.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                graph.n()
            )));
        }
        Ok(Drawing { graph, coords })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.coords[v]
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Same positions, different edge set on the same vertices.
    pub fn with_graph(&self, graph: Graph) -> Result<Drawing> {
        Drawing::new(graph, self.coords.clone())
    }

    pub fn into_parts(self) -> (Graph, Vec<Point>) {
        (self.graph, self.coords)
    }
}

/// Accuracy parameter together with `gamma = ceil(2 / eps)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Epsilon {
    value: Rational,
    gamma: u64,
}

impl Epsilon {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::InvalidInput("epsilon must be positive".into()));
        }
        let g = (Rational::from_integer(2.into()) / &value).ceil().to_integer();
        let gamma = g
            .to_u64()
            .ok_or_else(|| Error::InvalidInput("epsilon too small".into()))?
            .max(1);
        Ok(Epsilon { value, gamma })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Epsilon::new(Rational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// `(gamma + 2) / gamma`, the spanning ratio bound of the tree layouts.
    pub fn tree_bound(&self) -> Rational {
        Rational::new((self.gamma + 2).into(), self.gamma.into())
    }

    /// `1 + eps`.
    pub fn spanner_bound(&self) -> Rational {
        &self.value + Rational::one()
    }
}

/// Reduced `num/den` text for a rational, `num` alone for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b`, an integer, or a decimal such as `-1.25e3`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: num_bigint::BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: num_bigint::BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let e = exp - fp.len() as i64;
    let ten = num_bigint::BigInt::from(10);
    let mut r = if e >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: usize) -> u64 {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as u64
}
