//! The barycentric partition: every triangle is cut into three by joining
//! its centroid to the vertices. At raw depth `n` all vertex vectors have
//! last coordinate `3^n` and every triangle has area `1 / (2 * 3^n)`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebraic::poly::{self, char_poly, QPoly};
use crate::error::{Error, Result};
use crate::exact::{PlanePoint, Rational, TriangleState};
use crate::farey::base_matrix;
use crate::matrix::{rational_rank, to_rational_rows, Mat3};
use crate::point::{expand_point, Located, Partition, PointLike, Walker};
use crate::sequence::{CaseTag, ExpansionSequence};

/// A triangle of the barycentric partition. The vertex vectors are kept
/// unreduced so that all three share the denominator `3^depth`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaryState(pub TriangleState);

impl BaryState {
    pub fn base() -> Self {
        BaryState(TriangleState::base())
    }

    pub fn triangle(&self) -> &TriangleState {
        &self.0
    }

    pub fn depth(&self) -> u64 {
        self.0.depth
    }

    pub fn matrix(&self) -> Mat3 {
        self.0.matrix()
    }

    pub fn points(&self) -> Result<[PlanePoint; 3]> {
        self.0.points()
    }

    pub fn l1_diameter(&self) -> Result<Rational> {
        self.0.l1_diameter()
    }

    /// Centroid of the triangle.
    pub fn centroid(&self) -> Result<PlanePoint> {
        let pts = self.points()?;
        let three = Rational::from_integer(BigInt::from(3));
        Ok(PlanePoint::new(
            (&pts[0].x + &pts[1].x + &pts[2].x) / &three,
            (&pts[0].y + &pts[1].y + &pts[2].y) / &three,
        ))
    }
}

/// `C(I)^k` in closed form.
fn power_of_case_one(k: u64) -> Mat3 {
    let p: BigInt = Pow::pow(BigInt::from(3), k);
    let h: BigInt = (&p - 1) / 2;
    let (o, z) = (BigInt::one(), BigInt::zero());
    Mat3::new([
        [p.clone(), z.clone(), h.clone()],
        [z.clone(), p, h],
        [z.clone(), z, o],
    ])
}

fn case_matrix(case: CaseTag) -> Mat3 {
    match case {
        CaseTag::I => Mat3::from_i64([[3, 0, 1], [0, 3, 1], [0, 0, 1]]),
        CaseTag::II => Mat3::from_i64([[0, 0, 1], [3, 0, 1], [0, 3, 1]]),
        CaseTag::III => Mat3::from_i64([[3, 0, 1], [0, 0, 1], [0, 3, 1]]),
    }
}

/// Matrix of the compressed step `a(case)`: `C(case) * C(I)^(a-1)`.
pub fn bary_step_matrix(case: CaseTag, a: u64) -> Result<Mat3> {
    if a < 1 {
        return Err(Error::ZeroStep);
    }
    Ok(&case_matrix(case) * &power_of_case_one(a - 1))
}

pub fn bary_sequence_matrix(seq: &ExpansionSequence) -> Mat3 {
    seq.steps().iter().fold(Mat3::identity(), |acc, s| {
        &acc * &(&case_matrix(s.case) * &power_of_case_one(s.count - 1))
    })
}

pub fn bary_replay(seq: &ExpansionSequence) -> BaryState {
    let m = &base_matrix() * &bary_sequence_matrix(seq);
    BaryState(TriangleState::from_matrix(&m, seq.raw_len()))
}

pub fn bary_child(t: &BaryState, case: CaseTag) -> BaryState {
    let m = &t.matrix() * &case_matrix(case);
    BaryState(TriangleState::from_matrix(&m, t.depth() + 1))
}

pub fn bary_subdivide(t: &BaryState) -> [BaryState; 3] {
    CaseTag::ALL.map(|c| bary_child(t, c))
}

/// All `3^depth` triangles at a raw depth, in lexicographic case order.
pub fn bary_partition_triangles(depth: u32) -> Vec<BaryState> {
    let mut level = vec![BaryState::base()];
    for _ in 0..depth {
        level = level.iter().flat_map(bary_subdivide).collect();
    }
    level
}

/// Area of every triangle at raw depth `n`.
pub fn bary_area_at_depth(depth: u64) -> Rational {
    Rational::new(BigInt::one(), 2 * Pow::pow(BigInt::from(3), depth))
}

/// Area of the triangle reached by `seq`: `1 / (2 * 3^s)` with `s` the raw
/// length.
pub fn bary_area(seq: &ExpansionSequence) -> Rational {
    bary_area_at_depth(seq.raw_len())
}

pub fn bary_locate<P: PointLike>(p: &P, t: &BaryState) -> Result<Located> {
    Ok(Walker::start(p, &t.matrix(), Partition::Bary)?.locate())
}

pub fn bary_expand<P: PointLike>(p: &P, max_raw_depth: u64) -> Result<ExpansionSequence> {
    expand_point(p, Partition::Bary, max_raw_depth)
}

/// Whether every root of the monic rational polynomial `rest` (degree at
/// most 2) has absolute value below `rho > 0`.
fn roots_inside(rest: &QPoly, rho: &Rational) -> bool {
    match poly::degree(rest) {
        None | Some(0) => true,
        Some(1) => rest[0].abs() < *rho,
        Some(2) => {
            let (c, b) = (&rest[0], &rest[1]);
            let rho2 = rho * rho;
            c.abs() < rho2 && b.abs() * rho < &rho2 + c
        }
        _ => false,
    }
}

/// The limit point of the barycentric triangles for `pre` followed by
/// `period` repeated forever. The answer is always rational.
pub fn periodic_fixed_point(pre: &ExpansionSequence, period: &ExpansionSequence) -> Result<PlanePoint> {
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let a = bary_sequence_matrix(period);
    let rho_int = Pow::pow(BigInt::from(3), period.raw_len());
    let rho = Rational::from_integer(rho_int.clone());
    let chi = char_poly(&a).to_qpoly();

    let lin = vec![-rho.clone(), Rational::one()];
    let mut rest = chi;
    let mut mult = 0;
    loop {
        let (q, r) = poly::divrem(&rest, &lin);
        if !r.is_empty() {
            break;
        }
        rest = q;
        mult += 1;
    }
    if mult == 0 || !roots_inside(&rest, &rho) {
        return Err(Error::NotDominant);
    }
    let mut shifted = to_rational_rows(&a);
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= &rho;
    }
    if rational_rank(&shifted) != 3 - mult {
        return Err(Error::DegenerateEigenspace(format!(
            "eigenvalue {rho_int} is not semisimple"
        )));
    }

    // Spectral projection of the interior point (1,1,1) onto the
    // rho-eigenspace: rest(A) kills every other generalized eigenspace.
    let rest_int = poly::IntPolynomial::from_qpoly(&rest);
    let mut v = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for c in rest_int.coeffs().iter().rev() {
        let av = a.mul_vec(&v);
        v = [&av[0] + c, &av[1] + c, &av[2] + c];
    }
    let u = (&base_matrix() * &bary_sequence_matrix(pre)).mul_vec(&v);
    if u[2].is_zero() {
        return Err(Error::DegenerateEigenspace("projection vanishes".into()));
    }
    let x = Rational::new(u[0].clone(), u[2].clone());
    let y = Rational::new(u[1].clone(), u[2].clone());
    Ok(PlanePoint::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, shoelace_area};
    use crate::sequence::CompressedStep;
    use CaseTag::*;

    fn seq(s: &str) -> ExpansionSequence {
        ExpansionSequence::parse(s).unwrap()
    }

    #[test]
    fn compressed_matrix_matches_repeated_steps() {
        for case in CaseTag::ALL {
            for a in 1..6 {
                let direct = (1..a).fold(case_matrix(case), |m, _| &m * &case_matrix(I));
                assert_eq!(bary_step_matrix(case, a).unwrap(), direct);
            }
        }
        assert_eq!(bary_step_matrix(II, 0), Err(Error::ZeroStep));
    }

    #[test]
    fn first_subdivision_uses_centroid() {
        let kids = bary_subdivide(&BaryState::base());
        let c = PlanePoint::from_ratios(2, 3, 1, 3);
        for k in &kids {
            assert_eq!(k.points().unwrap()[2], c);
        }
        assert_eq!(kids[0].points().unwrap()[0], PlanePoint::from_ratios(0, 1, 0, 1));
        assert_eq!(kids[1].points().unwrap()[1], PlanePoint::from_ratios(1, 1, 1, 1));
    }

    #[test]
    fn tiling_up_to_depth_four() {
        for depth in 0..=4u32 {
            let tris = bary_partition_triangles(depth);
            assert_eq!(tris.len(), 3usize.pow(depth));
            let expected = bary_area_at_depth(depth as u64);
            let mut total = Rational::zero();
            for t in &tris {
                let r = Pow::pow(BigInt::from(3), depth);
                assert!(t.triangle().radii().iter().all(|x| *x == r));
                let area = shoelace_area(&t.points().unwrap()).abs();
                assert_eq!(area, expected);
                total += area;
            }
            assert_eq!(total, rat(1, 2));
        }
    }

    #[test]
    fn replay_matches_child_walk() {
        let s = seq("2(III),1(II),3(I)");
        let mut t = BaryState::base();
        for c in s.raw_cases() {
            t = bary_child(&t, c);
        }
        assert_eq!(bary_replay(&s), t);
    }

    #[test]
    fn expansion_of_rational_points() {
        let s = bary_expand(&PlanePoint::from_ratios(5, 9, 1, 9), 50).unwrap();
        // The centroid of child I is a vertex of its own child I.
        assert_eq!(s.to_raw(), [I, I]);
        assert_eq!(s.termination, crate::sequence::Termination::VertexHit(2));
        let back = bary_replay(&s);
        assert!(back.points().unwrap().contains(&PlanePoint::from_ratios(5, 9, 1, 9)));
    }

    #[test]
    fn periodic_points() {
        let one_two = seq("1(II)");
        assert_eq!(
            periodic_fixed_point(&ExpansionSequence::empty(), &one_two).unwrap(),
            PlanePoint::from_ratios(5, 6, 1, 2)
        );
        let pre = ExpansionSequence::from_raw(&[I]);
        assert_eq!(
            periodic_fixed_point(&pre, &one_two).unwrap(),
            PlanePoint::from_ratios(2, 3, 1, 6)
        );
        // Case I forever has a two-dimensional eigenspace; the limit is
        // the midpoint of the bottom edge.
        let ones = ExpansionSequence::from_raw(&[I]);
        assert_eq!(
            periodic_fixed_point(&ExpansionSequence::empty(), &ones).unwrap(),
            PlanePoint::from_ratios(1, 2, 0, 1)
        );
        assert_eq!(
            periodic_fixed_point(&pre, &ExpansionSequence::empty()),
            Err(Error::EmptyPeriod)
        );
    }

    #[test]
    fn areas_by_sequence() {
        assert_eq!(bary_area(&ExpansionSequence::empty()), rat(1, 2));
        assert_eq!(bary_area(&seq("1(III)")), rat(1, 6));
        let s = seq("2(III),2(II)");
        assert_eq!(bary_area(&s), rat(1, 162));
        assert_eq!(shoelace_area(&bary_replay(&s).points().unwrap()).abs(), rat(1, 162));
    }

    #[test]
    fn expansions_of_fixed_points() {
        let s = bary_expand(&PlanePoint::from_ratios(5, 6, 1, 2), 12).unwrap();
        assert_eq!(s.to_raw(), vec![II; 12]);
        let s = bary_expand(&PlanePoint::from_ratios(1, 2, 0, 1), 12).unwrap();
        assert_eq!(s.to_raw(), vec![I; 12]);
        let s = bary_expand(&PlanePoint::from_ratios(2, 3, 1, 3), 12).unwrap();
        assert_eq!(s.termination, crate::sequence::Termination::VertexHit(1));
    }

    #[test]
    fn fixed_points_reexpand_to_their_sequences() {
        let cases = [("", "1(II)"), ("raw:I", "1(II)"), ("1(III)", "1(II),2(III)"), ("2(II)", "1(III),1(II)")];
        for (pre, period) in cases {
            let pre = ExpansionSequence::parse(pre).unwrap();
            let period = seq(period);
            let p = periodic_fixed_point(&pre, &period).unwrap();
            let want = (0..3).fold(pre.clone(), |s, _| s.concat(&period)).to_raw();
            let got = bary_expand(&p, want.len() as u64).unwrap().to_raw();
            assert_eq!(got, want, "{p}");
        }
    }

    #[test]
    fn periodic_point_lies_in_every_triangle() {
        let period = ExpansionSequence::new(vec![
            CompressedStep::new(1, II),
            CompressedStep::new(2, III),
        ])
        .unwrap();
        let pre = seq("1(III)");
        let p = periodic_fixed_point(&pre, &period).unwrap();
        let mut s = pre.clone();
        for _ in 0..4 {
            s = s.concat(&period);
            let t = bary_replay(&s);
            assert!(bary_locate(&p, &t).is_ok(), "{p} not in {}", t.triangle());
        }
    }
}
