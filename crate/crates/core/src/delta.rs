//! The Farey-Bary map. `delta_n` sends a point with barycentric coordinates
//! `beta` in its depth-`n` Farey triangle to the point with the same
//! coordinates in the matching barycentric triangle; `delta` is the limit.
//!
//! `delta` and `delta_inverse` refine until both the Farey and the
//! barycentric triangle have taxicab diameter at most `tol`. Both directions
//! therefore stop at the same depth, and `delta_inverse(delta(p).value)`
//! returns `p` exactly for rational `p`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebraic::AlgebraicPoint;
use crate::bary::bary_step_matrix;
use crate::error::{Error, Result};
use crate::exact::{l1_diameter, PlanePoint, Rational, TriangleState};
use crate::farey::{base_matrix, step_matrix};
use crate::matrix::Mat3;
use crate::point::{Coord, Partition, PointLike, Walker};
use crate::sequence::{CaseTag, ExpansionSequence};

/// Refinement steps before giving up.
pub const MAX_STEPS: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaResult {
    pub value: PlanePoint,
    /// Taxicab distance bound between `value` and the true image.
    #[serde(serialize_with = "ser_display")]
    pub error_bound: Rational,
    pub depth_used: u64,
    pub exact: bool,
    /// The point met a shared edge of two children on the way down.
    pub boundary: bool,
    pub sequence: ExpansionSequence,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Matching Farey and barycentric triangles.
#[derive(Clone, Debug)]
struct Pair {
    farey: Mat3,
    bary: Mat3,
    depth: u64,
    seq: ExpansionSequence,
    boundary: bool,
}

fn diameter(m: &Mat3) -> Result<Rational> {
    Ok(l1_diameter(&TriangleState::from_matrix(m, 0).points()?))
}

impl Pair {
    fn base() -> Self {
        Pair {
            farey: base_matrix(),
            bary: base_matrix(),
            depth: 0,
            seq: ExpansionSequence::empty(),
            boundary: false,
        }
    }

    fn advanced(&self, case: CaseTag, count: u64) -> Result<Pair> {
        let mut seq = self.seq.clone();
        seq.push_run(case, count);
        Ok(Pair {
            farey: &self.farey * &step_matrix(case, count)?,
            bary: &self.bary * &bary_step_matrix(case, count)?,
            depth: self.depth + count,
            seq,
            boundary: self.boundary,
        })
    }

    fn within(&self, tol: &Rational) -> Result<bool> {
        Ok(diameter(&self.farey)? <= *tol && diameter(&self.bary)? <= *tol)
    }

    fn matrix(&self, side: Partition) -> &Mat3 {
        match side {
            Partition::Farey => &self.farey,
            Partition::Bary => &self.bary,
        }
    }

    fn error_bound(&self, side: Partition) -> Result<Rational> {
        diameter(self.matrix(opposite(side)))
    }
}

fn opposite(side: Partition) -> Partition {
    match side {
        Partition::Farey => Partition::Bary,
        Partition::Bary => Partition::Farey,
    }
}

enum Stop {
    Vertex(usize),
    Edge,
    Tolerance,
}

/// Walks `p` down partition `side`, dragging the other partition along.
fn walk<P: PointLike>(
    p: &P,
    side: Partition,
    tol: &Rational,
) -> Result<(Pair, [P::Coord; 3], Stop)> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let mut walker = Walker::start(p, &base_matrix(), side)?;
    let mut pair = Pair::base();
    for _ in 0..MAX_STEPS {
        if let Some(i) = walker.vertex() {
            return Ok((pair, walker.coords, Stop::Vertex(i)));
        }
        if walker.on_first_edge() {
            return Ok((pair, walker.coords, Stop::Edge));
        }
        if pair.within(tol)? {
            return Ok((pair, walker.coords, Stop::Tolerance));
        }
        let loc = walker.locate();
        pair.boundary |= loc.boundary;
        let run = if side == Partition::Farey && loc.case == CaseTag::I {
            P::Coord::farey_i_run(&walker.coords).max(1)
        } else {
            1
        };
        let steps = if run > 1 {
            let full = pair.advanced(CaseTag::I, run)?;
            if full.within(tol)? {
                first_within(&pair, run, tol)?
            } else {
                run
            }
        } else {
            1
        };
        pair = pair.advanced(loc.case, steps)?;
        if steps > 1 {
            walker.coords = P::Coord::farey_i_descend(&walker.coords, steps);
            walker.depth += steps;
        } else {
            walker.apply(loc.case);
        }
    }
    Err(Error::DepthExhausted(pair.depth))
}

/// Smallest `j` in `1..=run` whose case-I descendant meets `tol`, given that
/// `run` does. Diameters shrink monotonically along the run.
fn first_within(pair: &Pair, run: u64, tol: &Rational) -> Result<u64> {
    let (mut lo, mut hi) = (1u64, run);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pair.advanced(CaseTag::I, mid)?.within(tol)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Moves a point with projective coordinates `c` in the triangle `from` to
/// the point with the same barycentric coordinates in `to`.
fn transport(c: &[BigInt; 3], from: &Mat3, to: &Mat3) -> Result<PlanePoint> {
    let weights: Vec<BigInt> = (0..3).map(|i| &c[i] * from.get(2, i)).collect();
    let total: BigInt = weights.iter().sum();
    if Zero::is_zero(&total) {
        return Err(Error::DegenerateVector);
    }
    let mut x = Rational::zero();
    let mut y = Rational::zero();
    for (i, w) in weights.iter().enumerate() {
        let r = to.get(2, i);
        x += Rational::new(w * to.get(0, i), r * &total);
        y += Rational::new(w * to.get(1, i), r * &total);
    }
    Ok(PlanePoint::new(x, y))
}

fn finish_rational(
    (pair, coords, stop): (Pair, [BigInt; 3], Stop),
    side: Partition,
) -> Result<DeltaResult> {
    let to = pair.matrix(opposite(side));
    let value = transport(&coords, pair.matrix(side), to)?;
    let exact = !matches!(stop, Stop::Tolerance);
    let error_bound = if exact {
        Rational::zero()
    } else {
        pair.error_bound(side)?
    };
    if let Stop::Vertex(i) = stop {
        debug_assert_eq!(
            value,
            crate::exact::vec_to_point(&crate::exact::LatticeVec::from_array(to.column(i)))?
        );
    }
    Ok(DeltaResult {
        value,
        error_bound,
        depth_used: pair.depth,
        exact,
        boundary: pair.boundary,
        sequence: pair.seq,
    })
}

/// `delta(p)` to within taxicab distance `tol`. Exact when `p` becomes a
/// vertex or settles on the bottom edge of some Farey triangle.
pub fn delta(p: &PlanePoint, tol: &Rational) -> Result<DeltaResult> {
    finish_rational(walk(p, Partition::Farey, tol)?, Partition::Farey)
}

/// Inverse of [`delta`]: a Farey point for a point of the barycentric
/// partition.
pub fn delta_inverse(q: &PlanePoint, tol: &Rational) -> Result<DeltaResult> {
    finish_rational(walk(q, Partition::Bary, tol)?, Partition::Bary)
}

/// `delta` at an algebraic point. The value is the centroid of the final
/// barycentric triangle.
pub fn delta_algebraic(p: &AlgebraicPoint, tol: &Rational) -> Result<DeltaResult> {
    let (pair, _, stop) = walk(p, Partition::Farey, tol)?;
    let bary = TriangleState::from_matrix(&pair.bary, pair.depth);
    match stop {
        Stop::Vertex(i) => Ok(DeltaResult {
            value: bary.points()?[i].clone(),
            error_bound: Rational::zero(),
            depth_used: pair.depth,
            exact: true,
            boundary: pair.boundary,
            sequence: pair.seq,
        }),
        // The image lies on an edge at an irrational position; refining
        // never shrinks that edge.
        Stop::Edge => Err(Error::DepthExhausted(pair.depth)),
        Stop::Tolerance => {
            let pts = bary.points()?;
            let three = Rational::from_integer(BigInt::from(3));
            let value = PlanePoint::new(
                (&pts[0].x + &pts[1].x + &pts[2].x) / &three,
                (&pts[0].y + &pts[1].y + &pts[2].y) / &three,
            );
            Ok(DeltaResult {
                value,
                error_bound: l1_diameter(&pts),
                depth_used: pair.depth,
                exact: false,
                boundary: pair.boundary,
                sequence: pair.seq,
            })
        }
    }
}

fn fixed_depth(p: &PlanePoint, side: Partition, n: u64) -> Result<PlanePoint> {
    let mut walker = Walker::start(p, &base_matrix(), side)?;
    let mut pair = Pair::base();
    while pair.depth < n {
        let loc = walker.locate();
        let left = n - pair.depth;
        let run = if side == Partition::Farey && loc.case == CaseTag::I {
            BigInt::farey_i_run(&walker.coords).clamp(1, left)
        } else {
            1
        };
        pair = pair.advanced(loc.case, run)?;
        if run > 1 {
            walker.coords = BigInt::farey_i_descend(&walker.coords, run);
            walker.depth += run;
        } else {
            walker.apply(loc.case);
        }
    }
    transport(&walker.coords, pair.matrix(side), pair.matrix(opposite(side)))
}

/// `delta_n(p)`: same barycentric coordinates, depth-`n` triangles.
pub fn delta_n(p: &PlanePoint, n: u64) -> Result<PlanePoint> {
    fixed_depth(p, Partition::Farey, n)
}

/// Inverse of [`delta_n`].
pub fn delta_inverse_n(q: &PlanePoint, n: u64) -> Result<PlanePoint> {
    fixed_depth(q, Partition::Bary, n)
}
