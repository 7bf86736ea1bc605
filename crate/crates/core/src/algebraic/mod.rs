//! Eventually periodic expansions: cubic points of the Farey partition and
//! rational points of the barycentric one.

pub mod field;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use field::{AlgebraicNumber, FieldElem, RealField};
pub use poly::IntPolynomial;

use crate::error::{Error, Result};
use crate::exact::{PlanePoint, Rational};
use crate::farey::{base_matrix, sequence_matrix};
use crate::matrix::{rational_rank, Mat3};
use crate::point::PointLike;
use crate::sequence::ExpansionSequence;
use poly::{char_poly, factor_small, real_root_intervals};

/// `preperiod` followed by `period` repeated forever.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicSpec {
    pub preperiod: ExpansionSequence,
    pub period: ExpansionSequence,
}

impl PeriodicSpec {
    pub fn new(preperiod: ExpansionSequence, period: ExpansionSequence) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(PeriodicSpec { preperiod, period })
    }

    pub fn parse(preperiod: &str, period: &str) -> Result<Self> {
        Self::new(ExpansionSequence::parse(preperiod)?, ExpansionSequence::parse(period)?)
    }

    /// The preperiod followed by `copies` periods.
    pub fn unrolled(&self, copies: usize) -> ExpansionSequence {
        (0..copies).fold(self.preperiod.clone(), |s, _| s.concat(&self.period))
    }
}

impl fmt::Display for PeriodicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() {
            write!(f, "[{}]^inf", self.period)
        } else {
            write!(f, "{}, [{}]^inf", self.preperiod, self.period)
        }
    }
}

/// Schur-Cohn test: every root of the monic polynomial with coefficients
/// `q` (lowest first, degree at most 2, leading 1 omitted) lies strictly
/// inside the disc of radius `rho > 0`.
fn roots_inside_disc(q: &[FieldElem], rho: &FieldElem) -> bool {
    let rho2 = rho.mul(rho);
    let pos = |e: FieldElem| e.sign() == Ordering::Greater;
    match q {
        [] => true,
        [c] => pos(rho2.sub(&c.mul(c))),
        [c, b] => {
            let s = rho2.add(c);
            let br = b.mul(rho);
            pos(rho2.sub(c)) && pos(s.sub(&br)) && pos(s.add(&br))
        }
        _ => false,
    }
}

/// A simple real root strictly larger in absolute value than every other
/// root, as an element of the field it generates.
#[derive(Clone, Debug)]
pub struct DominantRoot {
    pub field: Arc<RealField>,
    pub value: FieldElem,
}

impl DominantRoot {
    pub fn algebraic(&self) -> AlgebraicNumber {
        self.value.to_algebraic()
    }
}

/// Finds the dominant root of a polynomial of degree 1 to 3, or reports
/// [`Error::NotDominant`].
pub fn dominant_root(p: &IntPolynomial) -> Result<DominantRoot> {
    if p.degree() == 0 || p.degree() > 3 {
        return Err(Error::NotDominant);
    }
    let monic = poly::monic(&p.to_qpoly());
    let mut candidates: Vec<(Arc<RealField>, Rational)> = Vec::new();
    for (f, _) in factor_small(p) {
        if f.len() == 2 {
            let r = -f[0].clone();
            candidates.push((RealField::rational(r.clone()), r.abs()));
            continue;
        }
        for mut iv in real_root_intervals(&f) {
            iv.refine(&f, &Rational::new(BigInt::one(), BigInt::one() << 40));
            let mag = iv.midpoint().abs();
            candidates.push((RealField::new(&f, iv), mag));
        }
    }
    candidates.sort_by(|a, b| b.1.cmp(&a.1));
    for (field, _) in candidates {
        let lambda = field.generator();
        if lambda.is_zero() {
            continue;
        }
        // Synthetic division of the monic polynomial by (x - lambda).
        let n = monic.len() - 1;
        let mut quot = vec![field.zero(); n];
        let mut acc = field.zero();
        for i in (1..=n).rev() {
            acc = acc.mul(&lambda).add(&field.constant(monic[i].clone()));
            quot[i - 1] = acc.clone();
        }
        let lower = &quot[..n - 1];
        if roots_inside_disc(lower, &lambda.abs()) {
            return Ok(DominantRoot { field, value: lambda });
        }
    }
    Err(Error::NotDominant)
}

/// The dominant root as a standalone algebraic number.
pub fn isolate_dominant_root(p: &IntPolynomial) -> Result<AlgebraicNumber> {
    Ok(dominant_root(p)?.algebraic())
}

/// A point of the plane with coordinates in a real number field, stored as a
/// homogeneous vector `(u1, u2, u3)` with `u3 > 0`.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    u: [FieldElem; 3],
}

impl AlgebraicPoint {
    pub fn from_homogeneous(u: [FieldElem; 3]) -> Result<Self> {
        match u[2].sign() {
            Ordering::Equal => Err(Error::DegenerateVector),
            Ordering::Greater => Ok(AlgebraicPoint { u }),
            Ordering::Less => Ok(AlgebraicPoint {
                u: [u[0].neg(), u[1].neg(), u[2].neg()],
            }),
        }
    }

    pub fn field(&self) -> &Arc<RealField> {
        self.u[0].field()
    }

    pub fn homogeneous(&self) -> &[FieldElem; 3] {
        &self.u
    }

    pub fn x(&self) -> FieldElem {
        self.u[0].div(&self.u[2]).expect("u3 > 0")
    }

    pub fn y(&self) -> FieldElem {
        self.u[1].div(&self.u[2]).expect("u3 > 0")
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x().to_f64(), self.y().to_f64())
    }
}

impl PointLike for AlgebraicPoint {
    type Coord = FieldElem;

    fn coords_in(&self, m: &Mat3) -> Result<[FieldElem; 3]> {
        let det = m.det();
        if det.is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        let adj = m.adjugate();
        let sign = if det < BigInt::zero() { -1 } else { 1 };
        Ok(std::array::from_fn(|i| {
            (0..3).fold(self.field().zero(), |acc, j| {
                acc.add(&self.u[j].scale_int(&(adj.get(i, j) * sign)))
            })
        }))
    }

    fn describe(&self) -> String {
        let (x, y) = self.to_f64();
        format!("~({x}, {y})")
    }
}

/// The Farey limit point of an eventually periodic expansion.
#[derive(Clone, Debug)]
pub struct CubicPoint {
    pub char_poly: IntPolynomial,
    pub lambda: AlgebraicNumber,
    pub alpha: AlgebraicNumber,
    pub beta: AlgebraicNumber,
    /// Dimension of `Q(alpha, beta)` over Q.
    pub field_dimension: usize,
    pub point: AlgebraicPoint,
}

#[derive(Serialize)]
struct NumberJson {
    min_poly: String,
    approx: String,
    lo: String,
    hi: String,
}

impl From<&AlgebraicNumber> for NumberJson {
    fn from(a: &AlgebraicNumber) -> Self {
        let (lo, hi) = a.bounds(64);
        NumberJson {
            min_poly: a.min_poly().to_string(),
            approx: a.decimal(30),
            lo: lo.to_string(),
            hi: hi.to_string(),
        }
    }
}

impl CubicPoint {
    /// Rational box `[x_lo, x_hi] x [y_lo, y_hi]` around the point, each side
    /// at most `2^-bits` wide.
    pub fn point_box(&self, bits: u64) -> [(Rational, Rational); 2] {
        [self.alpha.bounds(bits), self.beta.bounds(bits)]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "char_poly": self.char_poly.to_string(),
            "lambda": NumberJson::from(&self.lambda),
            "alpha": NumberJson::from(&self.alpha),
            "beta": NumberJson::from(&self.beta),
            "field_dimension": self.field_dimension,
        })
    }
}

fn cross(a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn field_dimension(alpha: &FieldElem, beta: &FieldElem) -> usize {
    let d = alpha.field().degree() as u32;
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            rows.push(alpha.pow(i).mul(&beta.pow(j)).coefficients());
        }
    }
    rational_rank(&rows)
}

/// Solves for the Farey limit point of `spec`: the Perron eigenvector of the
/// period matrix, pushed through the preperiod.
pub fn periodic_to_cubic(spec: &PeriodicSpec) -> Result<CubicPoint> {
    let a = sequence_matrix(&spec.period);
    let b = &base_matrix() * &sequence_matrix(&spec.preperiod);
    let chi = char_poly(&a);
    let root = dominant_root(&chi)?;
    let k = &root.field;
    let lambda = &root.value;

    let rows: Vec<[FieldElem; 3]> = (0..3)
        .map(|i| {
            std::array::from_fn(|j| {
                let e = k.int(a.get(i, j).clone());
                if i == j {
                    e.sub(lambda)
                } else {
                    e
                }
            })
        })
        .collect();
    let w = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| cross(&rows[i], &rows[j]))
        .find(|v| v.iter().any(|e| !e.is_zero()))
        .ok_or_else(|| Error::DegenerateEigenspace("eigenspace is not a line".into()))?;
    let u: [FieldElem; 3] = std::array::from_fn(|i| {
        (0..3).fold(k.zero(), |acc, j| acc.add(&w[j].scale_int(b.get(i, j))))
    });
    let point = AlgebraicPoint::from_homogeneous(u)?;
    let (x, y) = (point.x(), point.y());
    Ok(CubicPoint {
        char_poly: chi,
        lambda: root.algebraic(),
        alpha: x.to_algebraic(),
        beta: y.to_algebraic(),
        field_dimension: field_dimension(&x, &y),
        point,
    })
}

/// The barycentric limit point of `spec`, always rational.
pub fn periodic_to_rational(spec: &PeriodicSpec) -> Result<PlanePoint> {
    crate::bary::periodic_fixed_point(&spec.preperiod, &spec.period)
}
