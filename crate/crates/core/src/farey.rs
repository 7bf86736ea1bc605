//! The Farey partition of the base triangle and its continued-fraction-like
//! expansion.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::TriangleState;
use crate::matrix::Mat3;
use crate::point::{expand_point, Located, Partition, PointLike, Walker};
use crate::sequence::{CaseTag, ExpansionSequence};

/// Columns (0,0,1), (1,0,1), (1,1,1): the base triangle's vertex vectors.
pub fn base_matrix() -> Mat3 {
    Mat3::from_i64([[0, 1, 1], [0, 0, 1], [1, 1, 1]])
}

/// Matrix of one compressed step `a(case)`: one `case` step then `a - 1`
/// case-I steps.
pub fn step_matrix(case: CaseTag, a: u64) -> Result<Mat3> {
    if a < 1 {
        return Err(Error::ZeroStep);
    }
    Ok(step_matrix_big(case, &BigInt::from(a)))
}

fn step_matrix_big(case: CaseTag, a: &BigInt) -> Mat3 {
    let (o, z) = (BigInt::from(1), BigInt::from(0));
    let a = a.clone();
    let rows = match case {
        CaseTag::I => [
            [o.clone(), z.clone(), a.clone()],
            [z.clone(), o.clone(), a],
            [z.clone(), z, o],
        ],
        CaseTag::II => [
            [z.clone(), z.clone(), o.clone()],
            [o.clone(), z.clone(), a.clone()],
            [z, o, a],
        ],
        CaseTag::III => [
            [o.clone(), z.clone(), a.clone()],
            [z.clone(), z.clone(), o.clone()],
            [z, o, a],
        ],
    };
    Mat3::new(rows)
}

/// Product of the step matrices of `seq`, without the base matrix.
pub fn sequence_matrix(seq: &ExpansionSequence) -> Mat3 {
    seq.steps().iter().fold(Mat3::identity(), |acc, s| {
        &acc * &step_matrix_big(s.case, &BigInt::from(s.count))
    })
}

/// The child triangle for a single step of `case`.
pub fn child(t: &TriangleState, case: CaseTag) -> TriangleState {
    let [v1, v2, v3] = &t.vertices;
    let c = t.farey_center();
    let vs = match case {
        CaseTag::I => [v1.clone(), v2.clone(), c],
        CaseTag::II => [v2.clone(), v3.clone(), c],
        CaseTag::III => [v1.clone(), v3.clone(), c],
    };
    TriangleState {
        vertices: vs,
        depth: t.depth + 1,
    }
}

/// The three children of `t`, in case order I, II, III.
pub fn subdivide(t: &TriangleState) -> [TriangleState; 3] {
    CaseTag::ALL.map(|c| child(t, c))
}

/// Which child of `t` holds `p`.
pub fn locate<P: PointLike>(p: &P, t: &TriangleState) -> Result<Located> {
    let walker = Walker::start(p, &t.matrix(), Partition::Farey)?;
    Ok(walker.locate())
}

/// Farey expansion of a point of the closed base triangle.
pub fn expand<P: PointLike>(p: &P, max_raw_depth: u64) -> Result<ExpansionSequence> {
    expand_point(p, Partition::Farey, max_raw_depth)
}

/// The Farey triangle reached by following `seq` from the base triangle.
pub fn replay(seq: &ExpansionSequence) -> TriangleState {
    let m = &base_matrix() * &sequence_matrix(seq);
    TriangleState::from_matrix(&m, seq.raw_len())
}

/// Triangles after each compressed prefix, starting with the base triangle.
pub fn replay_prefixes(seq: &ExpansionSequence) -> Vec<TriangleState> {
    let mut out = Vec::with_capacity(seq.len() + 1);
    let mut m = base_matrix();
    let mut depth = 0;
    out.push(TriangleState::from_matrix(&m, 0));
    for s in seq.steps() {
        m = &m * &step_matrix_big(s.case, &BigInt::from(s.count));
        depth += s.count;
        out.push(TriangleState::from_matrix(&m, depth));
    }
    out
}

/// All `3^depth` triangles of the partition at a raw depth, in lexicographic
/// case order.
pub fn partition_triangles(depth: u32) -> Vec<TriangleState> {
    let mut level = vec![TriangleState::base()];
    for _ in 0..depth {
        level = level.iter().flat_map(subdivide).collect();
    }
    level
}

/// `r1 <= r2 <= r3` for the vertex denominators.
pub fn radii_ordered(t: &TriangleState) -> bool {
    let [a, b, c] = t.radii();
    a <= b && b <= c
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, triangle_area, LatticeVec, PlanePoint};
    use crate::sequence::{CompressedStep, Termination};
    use num_traits::{One, Signed};
    use CaseTag::*;

    #[test]
    fn step_matrices_match_case_recursions() {
        assert_eq!(step_matrix(I, 1).unwrap(), Mat3::from_i64([[1, 0, 1], [0, 1, 1], [0, 0, 1]]));
        assert_eq!(step_matrix(II, 2).unwrap(), Mat3::from_i64([[0, 0, 1], [1, 0, 2], [0, 1, 2]]));
        assert_eq!(step_matrix(III, 3).unwrap(), Mat3::from_i64([[1, 0, 3], [0, 0, 1], [0, 1, 3]]));
        assert_eq!(step_matrix(I, 0), Err(Error::ZeroStep));
        for case in CaseTag::ALL {
            for a in 1..=10 {
                assert!(step_matrix(case, a).unwrap().det().abs().is_one());
            }
        }
    }

    #[test]
    fn compressed_step_is_case_then_case_i_run() {
        for case in CaseTag::ALL {
            let one = step_matrix(case, 1).unwrap();
            let i1 = step_matrix(I, 1).unwrap();
            assert_eq!(step_matrix(case, 4).unwrap(), &one * &i1.pow(3));
        }
    }

    #[test]
    fn first_subdivision() {
        let [c1, c2, c3] = subdivide(&TriangleState::base());
        assert_eq!(
            c1.vertices,
            [LatticeVec::new(0, 0, 1), LatticeVec::new(1, 0, 1), LatticeVec::new(2, 1, 3)]
        );
        assert_eq!(
            c2.vertices,
            [LatticeVec::new(1, 0, 1), LatticeVec::new(1, 1, 1), LatticeVec::new(2, 1, 3)]
        );
        assert_eq!(
            c3.vertices,
            [LatticeVec::new(0, 0, 1), LatticeVec::new(1, 1, 1), LatticeVec::new(2, 1, 3)]
        );
        let total = triangle_area(&c1).unwrap() + triangle_area(&c2).unwrap() + triangle_area(&c3).unwrap();
        assert_eq!(total, triangle_area(&TriangleState::base()).unwrap());
    }

    #[test]
    fn children_are_parent_times_step_matrix() {
        let t = replay(&ExpansionSequence::parse("2(III),1(II)").unwrap());
        for case in CaseTag::ALL {
            let expect = TriangleState::from_matrix(&(&t.matrix() * &step_matrix(case, 1).unwrap()), t.depth + 1);
            assert_eq!(child(&t, case), expect);
        }
    }

    #[test]
    fn locate_examples() {
        let base = TriangleState::base();
        let loc = locate(&PlanePoint::from_ratios(1, 2, 1, 6), &base).unwrap();
        assert_eq!(loc, Located { case: I, boundary: false });
        let loc = locate(&PlanePoint::from_ratios(2, 3, 1, 3), &base).unwrap();
        assert_eq!(loc, Located { case: I, boundary: true });
        // On the internal edge from (1,1) to the center: shared by II and III.
        let loc = locate(&PlanePoint::from_ratios(5, 6, 2, 3), &base).unwrap();
        assert_eq!(loc, Located { case: II, boundary: true });
        assert!(matches!(
            locate(&PlanePoint::from_ratios(1, 2, 3, 4), &base),
            Err(Error::OutsideTriangle(_))
        ));
    }

    #[test]
    fn expand_examples() {
        let s = expand(&PlanePoint::from_ratios(2, 3, 1, 3), 10).unwrap();
        assert_eq!(s.termination, Termination::VertexHit(1));
        assert_eq!(s.to_raw(), vec![I]);
        let s = expand(&PlanePoint::from_ratios(1, 2, 1, 6), 1).unwrap();
        assert_eq!(s.to_raw(), vec![I]);
        assert_eq!(s.termination, Termination::DepthLimit);
        let s = expand(&PlanePoint::from_ratios(0, 1, 0, 1), 10).unwrap();
        assert_eq!(s.termination, Termination::VertexHit(0));
        assert!(expand(&PlanePoint::from_ratios(1, 3, 1, 2), 5).is_err());
    }

    #[test]
    fn replay_examples() {
        assert_eq!(replay(&ExpansionSequence::empty()).matrix(), base_matrix());
        let t = replay(&ExpansionSequence::new(vec![CompressedStep::new(1, I)]).unwrap());
        assert_eq!(
            t.vertices,
            [LatticeVec::new(0, 0, 1), LatticeVec::new(1, 0, 1), LatticeVec::new(2, 1, 3)]
        );
        let s = ExpansionSequence::parse("2(III),2(II)").unwrap();
        let t = replay(&s);
        assert_eq!(t.depth, 4);
        assert!(t.det().abs().is_one());
        assert!(radii_ordered(&t));
        assert_eq!(triangle_area(&t).unwrap(), rat(1, 2) / crate::exact::Rational::from_integer(t.radii_product()));
    }

    #[test]
    fn depth_two_vertices() {
        let mut pts: Vec<PlanePoint> = partition_triangles(2)
            .iter()
            .flat_map(|t| t.points().unwrap())
            .collect();
        pts.sort_by_key(|p| (p.x.clone(), p.y.clone()));
        pts.dedup();
        for p in [(3, 5, 1, 5), (4, 5, 2, 5), (3, 5, 2, 5), (2, 3, 1, 3)] {
            assert!(pts.contains(&PlanePoint::from_ratios(p.0, p.1, p.2, p.3)));
        }
        assert_eq!(pts.len(), 7);
    }
}
