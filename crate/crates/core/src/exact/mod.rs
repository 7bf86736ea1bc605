//! Exact rationals, lattice vectors and triangle geometry.
//!
//! A plane point `(p/r, q/r)` corresponds to the integer vector `(p, q, r)`.
//! Triangles are stored as three such vectors, i.e. the columns of a 3x3
//! integer matrix; the Farey sum of three points is the plain vector sum.

mod minkowski;

pub use minkowski::{minkowski_q, minkowski_q_interval};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Mat3;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        Ok(Rational::from_integer(n))
    }
}

/// Integer vector `(p, q, r)` standing for the plane point `(p/r, q/r)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeVec {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl LatticeVec {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>) -> Self {
        LatticeVec {
            p: p.into(),
            q: q.into(),
            r: r.into(),
        }
    }

    pub fn from_array(a: [BigInt; 3]) -> Self {
        let [p, q, r] = a;
        LatticeVec { p, q, r }
    }

    pub fn to_array(&self) -> [BigInt; 3] {
        [self.p.clone(), self.q.clone(), self.r.clone()]
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVec {
        LatticeVec::new(&self.p * k, &self.q * k, &self.r * k)
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec::new(&self.p + &other.p, &self.q + &other.q, &self.r + &other.r)
    }

    /// Divides out the gcd of the entries and makes `r` nonnegative.
    pub fn normalize(&self) -> LatticeVec {
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if g.is_zero() {
            return self.clone();
        }
        let g = if self.r.is_negative() { -g } else { g };
        LatticeVec::new(&self.p / &g, &self.q / &g, &self.r / &g)
    }

    pub fn is_normalized(&self) -> bool {
        self.p.gcd(&self.q).gcd(&self.r).is_one() && !self.r.is_negative()
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// Farey sum of three vertex vectors: the componentwise sum, left unreduced.
pub fn farey_sum(v1: &LatticeVec, v2: &LatticeVec, v3: &LatticeVec) -> LatticeVec {
    v1.add(v2).add(v3)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        PlanePoint { x, y }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        PlanePoint::new(rat(xn, xd), rat(yn, yd))
    }

    /// `1 >= x >= y >= 0`.
    pub fn in_base_triangle(&self) -> bool {
        self.x <= Rational::one() && self.x >= self.y && !self.y.is_negative()
    }

    /// Parses `x,y` where both coordinates are integers or `p/q` fractions.
    pub fn parse(s: &str) -> Result<Self> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected 'x,y', got '{s}'")))?;
        Ok(PlanePoint::new(parse_rational(x)?, parse_rational(y)?))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for PlanePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlanePoint::parse(s)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerator/denominator: drop low bits first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

pub fn vec_to_point(v: &LatticeVec) -> Result<PlanePoint> {
    if v.r.is_zero() {
        return Err(Error::DegenerateVector);
    }
    Ok(PlanePoint::new(
        Rational::new(v.p.clone(), v.r.clone()),
        Rational::new(v.q.clone(), v.r.clone()),
    ))
}

pub fn point_to_vec(pt: &PlanePoint) -> LatticeVec {
    let den = pt.x.denom().lcm(pt.y.denom());
    let p = pt.x.numer() * (&den / pt.x.denom());
    let q = pt.y.numer() * (&den / pt.y.denom());
    LatticeVec::new(p, q, den).normalize()
}

/// Ordered triple of vertex vectors; the columns of `M_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TriangleState {
    pub vertices: [LatticeVec; 3],
    pub depth: u64,
}

impl TriangleState {
    pub fn new(v1: LatticeVec, v2: LatticeVec, v3: LatticeVec) -> Self {
        TriangleState {
            vertices: [v1, v2, v3],
            depth: 0,
        }
    }

    /// The base triangle with vertices (0,0), (1,0), (1,1).
    pub fn base() -> Self {
        TriangleState::new(
            LatticeVec::new(0, 0, 1),
            LatticeVec::new(1, 0, 1),
            LatticeVec::new(1, 1, 1),
        )
    }

    pub fn from_matrix(m: &Mat3, depth: u64) -> Self {
        TriangleState {
            vertices: [
                LatticeVec::from_array(m.column(0)),
                LatticeVec::from_array(m.column(1)),
                LatticeVec::from_array(m.column(2)),
            ],
            depth,
        }
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3::from_columns([
            self.vertices[0].to_array(),
            self.vertices[1].to_array(),
            self.vertices[2].to_array(),
        ])
    }

    pub fn det(&self) -> BigInt {
        self.matrix().det()
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn radii(&self) -> [BigInt; 3] {
        [
            self.vertices[0].r.clone(),
            self.vertices[1].r.clone(),
            self.vertices[2].r.clone(),
        ]
    }

    pub fn radii_product(&self) -> BigInt {
        self.vertices.iter().map(|v| &v.r).product()
    }

    pub fn points(&self) -> Result<[PlanePoint; 3]> {
        Ok([
            vec_to_point(&self.vertices[0])?,
            vec_to_point(&self.vertices[1])?,
            vec_to_point(&self.vertices[2])?,
        ])
    }

    pub fn farey_center(&self) -> LatticeVec {
        farey_sum(&self.vertices[0], &self.vertices[1], &self.vertices[2])
    }

    /// Largest edge length in the taxicab norm, an upper bound for the
    /// Euclidean diameter.
    pub fn l1_diameter(&self) -> Result<Rational> {
        let pts = self.points()?;
        Ok(l1_diameter(&pts))
    }

    /// Same triangle regardless of vertex order and vector scaling.
    pub fn same_triangle(&self, other: &TriangleState) -> bool {
        let mut a: Vec<LatticeVec> = self.vertices.iter().map(|v| v.normalize()).collect();
        let mut b: Vec<LatticeVec> = other.vertices.iter().map(|v| v.normalize()).collect();
        let key = |v: &LatticeVec| (v.p.clone(), v.q.clone(), v.r.clone());
        a.sort_by_key(key);
        b.sort_by_key(key);
        a == b
    }
}

impl fmt::Display for TriangleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{},{},{}>",
            self.vertices[0], self.vertices[1], self.vertices[2]
        )
    }
}

pub fn l1_diameter(pts: &[PlanePoint; 3]) -> Rational {
    let d = |a: &PlanePoint, b: &PlanePoint| (&a.x - &b.x).abs() + (&a.y - &b.y).abs();
    let e01 = d(&pts[0], &pts[1]);
    let e02 = d(&pts[0], &pts[2]);
    let e12 = d(&pts[1], &pts[2]);
    e01.max(e02).max(e12)
}

/// `|det M| / (2 r1 r2 r3)`. Degenerate triangles give zero.
pub fn triangle_area(t: &TriangleState) -> Result<Rational> {
    let rp = t.radii_product();
    if rp.is_zero() {
        return Err(Error::DegenerateVector);
    }
    Ok(Rational::new(t.det().abs(), rp * 2))
}

/// Shoelace area of three plane points.
pub fn shoelace_area(pts: &[PlanePoint; 3]) -> Rational {
    let [a, b, c] = pts;
    let cross = (&b.x - &a.x) * (&c.y - &a.y) - (&c.x - &a.x) * (&b.y - &a.y);
    cross.abs() / Rational::from_integer(BigInt::from(2))
}

/// Projective coordinates of the homogeneous vector `u` in the basis formed by
/// the columns of `m`, scaled by `|det m|` so that they stay integral.
pub fn projective_coords(m: &Mat3, u: &[BigInt; 3]) -> Result<[BigInt; 3]> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    let c = m.adjugate().mul_vec(u);
    if det.is_negative() {
        Ok(c.map(|x| -x))
    } else {
        Ok(c)
    }
}

/// Integer homogeneous vector `(x, y, 1) * den` for a rational point.
pub fn homogeneous(p: &PlanePoint) -> [BigInt; 3] {
    let v = point_to_vec(p);
    [v.p, v.q, v.r]
}

/// Exact barycentric coordinates `(a, b, c)` with `p = a*v1 + b*v2 + c*v3`
/// and `a + b + c = 1`.
pub fn barycentric_coords(p: &PlanePoint, t: &TriangleState) -> Result<(Rational, Rational, Rational)> {
    let c = projective_coords(&t.matrix(), &homogeneous(p))?;
    let radii = t.radii();
    let w: Vec<BigInt> = c.iter().zip(radii.iter()).map(|(ci, ri)| ci * ri).collect();
    let total: BigInt = w.iter().sum();
    if total.is_zero() {
        return Err(Error::DegenerateTriangle);
    }
    Ok((
        Rational::new(w[0].clone(), total.clone()),
        Rational::new(w[1].clone(), total.clone()),
        Rational::new(w[2].clone(), total),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farey_sum_of_base_vertices_is_farey_center() {
        let t = TriangleState::base();
        let s = farey_sum(&t.vertices[0], &t.vertices[1], &t.vertices[2]);
        assert_eq!(s, LatticeVec::new(2, 1, 3));
        assert_eq!(vec_to_point(&s).unwrap(), PlanePoint::from_ratios(2, 3, 1, 3));
    }

    #[test]
    fn farey_sum_is_not_reduced() {
        let v = LatticeVec::new(1, 1, 2);
        assert_eq!(farey_sum(&v, &v, &v), LatticeVec::new(3, 3, 6));
        let s = farey_sum(
            &LatticeVec::new(1, 0, 2),
            &LatticeVec::new(0, 0, 1),
            &LatticeVec::new(1, 1, 1),
        );
        assert_eq!(s, LatticeVec::new(2, 1, 4));
    }

    #[test]
    fn point_vector_conversions() {
        assert_eq!(
            vec_to_point(&LatticeVec::new(0, 0, 1)).unwrap(),
            PlanePoint::from_ratios(0, 1, 0, 1)
        );
        assert_eq!(
            point_to_vec(&PlanePoint::from_ratios(3, 5, 1, 5)),
            LatticeVec::new(3, 1, 5)
        );
        assert_eq!(vec_to_point(&LatticeVec::new(1, 1, 0)), Err(Error::DegenerateVector));
        assert_eq!(point_to_vec(&vec_to_point(&LatticeVec::new(4, 2, 6)).unwrap()), LatticeVec::new(2, 1, 3));
    }

    #[test]
    fn areas() {
        assert_eq!(triangle_area(&TriangleState::base()).unwrap(), rat(1, 2));
        let big = TriangleState::new(
            LatticeVec::new(0, 0, 1),
            LatticeVec::new(2, 0, 1),
            LatticeVec::new(2, 2, 1),
        );
        assert_eq!(triangle_area(&big).unwrap(), rat(2, 1));
        let flat = TriangleState::new(
            LatticeVec::new(0, 0, 1),
            LatticeVec::new(1, 1, 2),
            LatticeVec::new(1, 1, 1),
        );
        assert!(flat.is_degenerate());
        assert!(triangle_area(&flat).unwrap().is_zero());
    }

    #[test]
    fn barycentric_examples() {
        let t = TriangleState::base();
        let (a, b, c) = barycentric_coords(&PlanePoint::from_ratios(0, 1, 0, 1), &t).unwrap();
        assert_eq!((a, b, c), (rat(1, 1), rat(0, 1), rat(0, 1)));
        let (a, b, c) = barycentric_coords(&PlanePoint::from_ratios(2, 3, 1, 3), &t).unwrap();
        assert_eq!((a, b, c), (rat(1, 3), rat(1, 3), rat(1, 3)));
        let child = TriangleState::new(
            LatticeVec::new(0, 0, 1),
            LatticeVec::new(1, 0, 1),
            LatticeVec::new(2, 1, 3),
        );
        let (a, b, c) = barycentric_coords(&PlanePoint::from_ratios(1, 2, 1, 6), &child).unwrap();
        assert_eq!((a, b, c), (rat(1, 3), rat(1, 6), rat(1, 2)));
    }

    #[test]
    fn barycentric_rejects_degenerate() {
        let flat = TriangleState::new(
            LatticeVec::new(0, 0, 1),
            LatticeVec::new(1, 1, 2),
            LatticeVec::new(1, 1, 1),
        );
        assert_eq!(
            barycentric_coords(&PlanePoint::from_ratios(1, 2, 1, 3), &flat),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(PlanePoint::parse("3/5, 1/5").unwrap(), PlanePoint::from_ratios(3, 5, 1, 5));
        assert_eq!(PlanePoint::parse("1,0").unwrap().to_string(), "1,0");
        assert!(PlanePoint::parse("0.5,0").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
