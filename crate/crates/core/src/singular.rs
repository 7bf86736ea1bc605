//! How the Farey and barycentric triangles shrink relative to each other:
//! area ratios along a sequence, the corner-triangle lemma behind the
//! measure-zero results, and seeded Monte Carlo statistics.

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{triangle_area, LatticeVec, PlanePoint, Rational, TriangleState};
use crate::farey::{base_matrix, replay_prefixes, step_matrix};
use crate::point::{Partition, Walker};
use crate::sequence::{CaseTag, ExpansionSequence};

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Bary area over Farey area after `n` compressed steps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRecord {
    pub n: usize,
    pub s_n: u64,
    #[serde(serialize_with = "ser_display")]
    pub radii_product: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub ratio: Rational,
}

/// One record per compressed prefix, starting with the empty one.
pub fn ratio_series(seq: &ExpansionSequence) -> Vec<RatioRecord> {
    replay_prefixes(seq)
        .into_iter()
        .enumerate()
        .map(|(n, t)| {
            let prod = t.radii_product();
            let ratio = Rational::new(prod.clone(), Pow::pow(BigInt::from(3), t.depth));
            RatioRecord {
                n,
                s_n: t.depth,
                radii_product: prod,
                ratio,
            }
        })
        .collect()
}

/// `log3` of a positive integer, accurate for arbitrarily large inputs.
fn log3_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    (top.ln() + shift as f64 * std::f64::consts::LN_2) / 3f64.ln()
}

pub fn log3_ratio(r: &RatioRecord) -> f64 {
    log3_big(&r.radii_product) - r.s_n as f64
}

/// Corner triangles cut from `t` by the lines through `L`-weighted Farey
/// sums, and the area left in the middle.
#[derive(Clone, Debug)]
pub struct TlSplit {
    pub corners: [TriangleState; 3],
    pub residual_area: Rational,
}

pub fn build_tl(t: &TriangleState, l: u64) -> Result<TlSplit> {
    if l < 1 {
        return Err(Error::LBelowOne);
    }
    if t.is_degenerate() {
        return Err(Error::DegenerateTriangle);
    }
    let l = BigInt::from(l);
    let [v1, v2, v3] = &t.vertices;
    let w = |a: &LatticeVec, b: &LatticeVec, c: &LatticeVec| a.scale(&l).add(&b.scale(&l)).add(c);
    let corners = [
        TriangleState::new(v1.clone(), v2.clone(), w(v1, v2, v3)),
        TriangleState::new(v2.clone(), w(v2, v3, v1), v3.clone()),
        TriangleState::new(v1.clone(), w(v1, v3, v2), v3.clone()),
    ];
    let mut residual = triangle_area(t)?;
    for c in &corners {
        residual -= triangle_area(c)?;
    }
    Ok(TlSplit {
        corners,
        residual_area: residual,
    })
}

/// The polynomial inequality
/// `2Lxyz <= alpha + L^2 (x^3 + y^3 + z^3) + L^2 xyz + xyz`,
/// `alpha = x^2 y + x^2 z + x y^2 + x z^2 + y^2 z + y z^2`, together with the
/// area bound it encodes:
/// `2 area(T_L) <= (L - 1)/L * 1/(xyz)` for a unimodular triangle with
/// radii `x, y, z`.
pub fn lemma_inequality_check(x: &BigInt, y: &BigInt, z: &BigInt, l: &Rational) -> bool {
    let one = BigInt::one();
    if *x < one || *y < one || *z < one || *l < Rational::one() {
        return false;
    }
    let q = |n: &BigInt| Rational::from_integer(n.clone());
    let (xq, yq, zq) = (q(x), q(y), q(z));
    let xyz = &xq * &yq * &zq;
    let alpha = q(&(x * x * y + x * x * z + x * y * y + x * z * z + y * y * z + y * z * z));
    let cubes = q(&(x * x * x + y * y * y + z * z * z));
    let l2 = l * l;
    let lhs = Rational::from_integer(BigInt::from(2)) * l * &xyz;
    let rhs = alpha + &l2 * cubes + &l2 * &xyz + &xyz;
    let poly_ok = lhs <= rhs;

    let one = Rational::one();
    let t1 = &xq * (l * &xq + &yq + l * &zq) * &zq;
    let t2 = &xq * &yq * (l * &xq + l * &yq + &zq);
    let t3 = (&xq + l * &yq + l * &zq) * &yq * &zq;
    let twice_area = &one / &xyz - &one / t1 - &one / t2 - &one / t3;
    let area_ok = twice_area <= (l - &one) / l * (&one / &xyz);
    poly_ok && area_ok
}

/// One Monte Carlo observation at a fixed raw depth.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub point: PlanePoint,
    /// Compressed steps in the first `s_n` raw steps.
    pub n: usize,
    pub s_n: u64,
    pub sn_over_n: f64,
    pub log3_ratio: f64,
}

/// Expands `p` for exactly `raw_depth` steps.
pub fn sample_record(p: &PlanePoint, raw_depth: u64) -> Result<SampleRecord> {
    let mut m = base_matrix();
    let mut walker = Walker::start(p, &m, Partition::Farey)?;
    let mut seq = ExpansionSequence::empty();
    for _ in 0..raw_depth {
        let case = walker.step().case;
        seq.push_raw(case);
        m = &m * &step_matrix(case, 1)?;
    }
    let t = TriangleState::from_matrix(&m, raw_depth);
    let n = seq.len();
    let record = RatioRecord {
        n,
        s_n: raw_depth,
        radii_product: t.radii_product(),
        ratio: Rational::one(),
    };
    Ok(SampleRecord {
        point: p.clone(),
        n,
        s_n: raw_depth,
        sn_over_n: if n == 0 { 0.0 } else { raw_depth as f64 / n as f64 },
        log3_ratio: log3_ratio(&record),
    })
}

/// Uniform point of the base triangle with coordinates in `2^-64 Z`.
/// Sample `i` draws from its own ChaCha stream, so results do not depend on
/// scheduling.
pub fn sample_point(seed: u64, i: u64) -> PlanePoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let den: BigInt = BigInt::one() << 64;
    loop {
        let x: u64 = rng.random();
        let y: u64 = rng.random();
        if y <= x {
            return PlanePoint::new(
                Rational::new(BigInt::from(x), den.clone()),
                Rational::new(BigInt::from(y), den),
            );
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub q10: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub q90: f64,
    pub max: f64,
}

impl Quantiles {
    /// Linearly interpolated sample quantiles; `values` must be nonempty.
    pub fn of(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let at = |q: f64| {
            let pos = q * (v.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Quantiles {
            min: v[0],
            q10: at(0.10),
            q25: at(0.25),
            median: at(0.5),
            q75: at(0.75),
            q90: at(0.90),
            max: v[v.len() - 1],
        }
    }

    pub fn is_monotone(&self) -> bool {
        let q = [self.min, self.q10, self.q25, self.median, self.q75, self.q90, self.max];
        q.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatSummary {
    pub samples: u64,
    pub depth: u64,
    pub seed: u64,
    pub sn_over_n: Quantiles,
    pub log3_ratio: Quantiles,
}

pub fn monte_carlo(samples: u64, raw_depth: u64, seed: u64) -> Result<StatSummary> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let records: Vec<SampleRecord> = (0..samples)
        .into_par_iter()
        .map(|i| sample_record(&sample_point(seed, i), raw_depth))
        .collect::<Result<_>>()?;
    let sn: Vec<f64> = records.iter().map(|r| r.sn_over_n).collect();
    let lr: Vec<f64> = records.iter().map(|r| r.log3_ratio).collect();
    Ok(StatSummary {
        samples,
        depth: raw_depth,
        seed,
        sn_over_n: Quantiles::of(&sn),
        log3_ratio: Quantiles::of(&lr),
    })
}

/// `prod (2 a_j + 1)` over the compressed steps, the bound on the largest
/// vertex radius.
pub fn radius_bound(seq: &ExpansionSequence) -> BigInt {
    seq.steps()
        .iter()
        .map(|s| BigInt::from(2 * s.count + 1))
        .product()
}

/// Whether a compressed sequence starts with a case-I run, which the
/// radius bound does not cover.
pub fn leads_with_case_one(seq: &ExpansionSequence) -> bool {
    seq.steps().first().is_some_and(|s| s.case == CaseTag::I)
}
