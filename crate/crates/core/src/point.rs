//! Point location shared by both partitions.
//!
//! A point is tracked by its projective coordinates `c` in the basis of the
//! current triangle's vertex vectors, `u = c1*v1 + c2*v2 + c3*v3`. The point
//! is inside the triangle iff all `c_i >= 0`, and it lies in child I, II or
//! III iff `c3`, `c1` or `c2` is the smallest coordinate. Descending into a
//! child is a subtraction on `c`, so expansions never need the vertex
//! vectors themselves.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{homogeneous, projective_coords, PlanePoint};
use crate::matrix::Mat3;
use crate::sequence::{CaseTag, ExpansionSequence, Termination};

/// Coordinate arithmetic needed by the walker.
pub trait Coord: Clone {
    fn sign(&self) -> Ordering;
    fn sub(&self, other: &Self) -> Self;
    fn triple(&self) -> Self;

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn cmp_coord(&self, other: &Self) -> Ordering {
        self.sub(other).sign()
    }

    /// How many consecutive Farey case-I steps start from `c`. Implementors
    /// without cheap division report 1.
    fn farey_i_run(_c: &[Self; 3]) -> u64
    where
        Self: Sized,
    {
        1
    }

    /// Coordinates after `k` Farey case-I steps.
    fn farey_i_descend(c: &[Self; 3], k: u64) -> [Self; 3]
    where
        Self: Sized,
    {
        (0..k).fold(c.clone(), |c, _| descend(&c, CaseTag::I, Partition::Farey))
    }
}

impl Coord for BigInt {
    fn sign(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn triple(&self) -> Self {
        self * 3
    }

    fn cmp_coord(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn farey_i_run(c: &[Self; 3]) -> u64 {
        if Zero::is_zero(&c[2]) {
            return u64::MAX;
        }
        let m = (&c[0]).min(&c[1]) / &c[2];
        u64::try_from(m).unwrap_or(u64::MAX)
    }

    fn farey_i_descend(c: &[Self; 3], k: u64) -> [Self; 3] {
        let d = &c[2] * BigInt::from(k);
        [&c[0] - &d, &c[1] - &d, c[2].clone()]
    }
}

/// Anything that can be placed in a triangle given by lattice vectors.
pub trait PointLike {
    type Coord: Coord;

    /// Projective coordinates in the basis of the columns of `m`, up to a
    /// positive common factor.
    fn coords_in(&self, m: &Mat3) -> Result<[Self::Coord; 3]>;

    fn describe(&self) -> String;
}

impl PointLike for PlanePoint {
    type Coord = BigInt;

    fn coords_in(&self, m: &Mat3) -> Result<[BigInt; 3]> {
        projective_coords(m, &homogeneous(self))
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Partition {
    Farey,
    Bary,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Located {
    pub case: CaseTag,
    /// The point lies in the closure of more than one child.
    pub boundary: bool,
}

/// Picks the child holding a point with nonnegative coordinates `c`.
/// Ties go to I, then II, then III.
pub fn choose_child<C: Coord>(c: &[C; 3]) -> Located {
    let c3_le_c1 = c[2].cmp_coord(&c[0]) != Ordering::Greater;
    let c3_le_c2 = c[2].cmp_coord(&c[1]) != Ordering::Greater;
    let (case, min) = if c3_le_c1 && c3_le_c2 {
        (CaseTag::I, 2)
    } else if c[0].cmp_coord(&c[1]) != Ordering::Greater {
        (CaseTag::II, 0)
    } else {
        (CaseTag::III, 1)
    };
    let ties = (0..3)
        .filter(|&i| i != min && c[i].cmp_coord(&c[min]) == Ordering::Equal)
        .count();
    Located {
        case,
        boundary: ties > 0,
    }
}

pub fn all_nonnegative<C: Coord>(c: &[C; 3]) -> bool {
    c.iter().all(|x| x.sign() != Ordering::Less)
}

/// The point coincides with a vertex when two coordinates vanish.
pub fn vertex_index<C: Coord>(c: &[C; 3]) -> Option<usize> {
    let zeros: Vec<bool> = c.iter().map(Coord::is_zero).collect();
    match zeros.iter().filter(|&&z| z).count() {
        2 => zeros.iter().position(|&z| !z),
        _ => None,
    }
}

/// Coordinates after descending into child `case`.
pub fn descend<C: Coord>(c: &[C; 3], case: CaseTag, partition: Partition) -> [C; 3] {
    let [c1, c2, c3] = c;
    let (a, b, keep) = match case {
        CaseTag::I => (c1.sub(c3), c2.sub(c3), c3),
        CaseTag::II => (c2.sub(c1), c3.sub(c1), c1),
        CaseTag::III => (c1.sub(c2), c3.sub(c2), c2),
    };
    let keep = match partition {
        Partition::Farey => keep.clone(),
        Partition::Bary => keep.triple(),
    };
    [a, b, keep]
}

/// Follows a point down one partition.
#[derive(Clone, Debug)]
pub struct Walker<C> {
    pub coords: [C; 3],
    pub partition: Partition,
    pub depth: u64,
}

impl<C: Coord> Walker<C> {
    /// Starts at the triangle with vertex matrix `m`; the point must lie in it.
    pub fn start<P: PointLike<Coord = C>>(p: &P, m: &Mat3, partition: Partition) -> Result<Self> {
        let coords = p.coords_in(m)?;
        if !all_nonnegative(&coords) {
            return Err(Error::OutsideTriangle(p.describe()));
        }
        Ok(Walker {
            coords,
            partition,
            depth: 0,
        })
    }

    pub fn locate(&self) -> Located {
        choose_child(&self.coords)
    }

    pub fn vertex(&self) -> Option<usize> {
        vertex_index(&self.coords)
    }

    /// The point sits on the edge v1-v2, so every later step is case I.
    pub fn on_first_edge(&self) -> bool {
        self.coords[2].is_zero()
    }

    pub fn apply(&mut self, case: CaseTag) {
        self.coords = descend(&self.coords, case, self.partition);
        self.depth += 1;
    }

    pub fn step(&mut self) -> Located {
        let loc = self.locate();
        self.apply(loc.case);
        loc
    }
}

/// Expands a point of the base triangle in either partition.
pub fn expand_point<P: PointLike>(
    p: &P,
    partition: Partition,
    max_raw_depth: u64,
) -> Result<ExpansionSequence> {
    let mut walker = Walker::start(p, &crate::farey::base_matrix(), partition)?;
    let mut seq = ExpansionSequence::empty();
    loop {
        if walker.vertex().is_some() {
            return Ok(seq.with_termination(Termination::VertexHit(walker.depth)));
        }
        if walker.depth >= max_raw_depth {
            return Ok(seq.with_termination(Termination::DepthLimit));
        }
        let loc = walker.step();
        seq.push_raw(loc.case);
    }
}

