//! SVG pictures of the two partitions. Output is byte-for-byte
//! deterministic: coordinates are rounded from exact rationals.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::bary::bary_partition_triangles;
use crate::error::{Error, Result};
use crate::exact::{PlanePoint, Rational, TriangleState};
use crate::farey::partition_triangles;

pub const DEFAULT_MAX_RENDER_DEPTH: u32 = 7;
/// Environment variable overriding [`DEFAULT_MAX_RENDER_DEPTH`].
pub const MAX_DEPTH_ENV: &str = "FAREY_BARY_MAX_RENDER_DEPTH";
pub const DEFAULT_SCALE: u32 = 600;
const MARGIN: u32 = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionKind {
    Farey,
    Bary,
}

impl PartitionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PartitionKind::Farey => "farey",
            PartitionKind::Bary => "bary",
        }
    }
}

impl FromStr for PartitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "farey" => Ok(PartitionKind::Farey),
            "bary" | "barycentric" => Ok(PartitionKind::Bary),
            other => Err(Error::Parse(format!("unknown partition kind {other:?}"))),
        }
    }
}

pub fn max_render_depth() -> u32 {
    std::env::var(MAX_DEPTH_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_RENDER_DEPTH)
}

pub fn triangles(kind: PartitionKind, depth: u32) -> Vec<TriangleState> {
    match kind {
        PartitionKind::Farey => partition_triangles(depth),
        PartitionKind::Bary => bary_partition_triangles(depth)
            .into_iter()
            .map(|b| b.0)
            .collect(),
    }
}

/// `r` rounded half away from zero to three decimals.
fn fixed3(r: &Rational) -> String {
    let scaled = r * Rational::from_integer(BigInt::from(1000));
    let n = scaled.round().to_integer();
    let (q, m) = n.abs().div_rem(&BigInt::from(1000));
    let sign = if n.is_negative() { "-" } else { "" };
    format!("{sign}{q}.{m:0>3}")
}

fn pixel(p: &PlanePoint, scale: u32) -> (String, String) {
    let s = Rational::from_integer(BigInt::from(scale));
    let m = Rational::from_integer(BigInt::from(MARGIN));
    let one = Rational::from_integer(BigInt::from(1));
    let x = &p.x * &s + &m;
    let y = (one - &p.y) * &s + &m;
    (fixed3(&x), fixed3(&y))
}

/// Renders the partition at `depth`, refusing depths above `max_depth`.
pub fn render_partition_with_max(
    kind: PartitionKind,
    depth: u32,
    scale: u32,
    max_depth: u32,
) -> Result<String> {
    if depth > max_depth {
        return Err(Error::DepthTooLarge {
            depth,
            max: max_depth,
        });
    }
    if scale == 0 {
        return Err(Error::InvalidArgument("scale must be positive".into()));
    }
    let size = scale + 2 * MARGIN;
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(svg, "<title>{} partition, depth {depth}</title>", kind.as_str());
    svg.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" stroke-linejoin=\"round\">\n");
    for t in triangles(kind, depth) {
        let pts = t.points()?;
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = pixel(p, scale);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(svg, "<polygon points=\"{}\"/>", coords.join(" "));
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Renders with the maximum depth taken from the environment.
pub fn render_partition(kind: PartitionKind, depth: u32, scale: u32) -> Result<String> {
    render_partition_with_max(kind, depth, scale, max_render_depth())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn polygon_counts() {
        for (kind, depth, n) in [
            (PartitionKind::Bary, 0, 1),
            (PartitionKind::Farey, 1, 3),
            (PartitionKind::Farey, 3, 27),
            (PartitionKind::Bary, 2, 9),
        ] {
            let svg = render_partition_with_max(kind, depth, 100, 7).unwrap();
            assert_eq!(svg.matches("<polygon").count(), n);
        }
    }

    #[test]
    fn first_farey_split_meets_at_center() {
        let svg = render_partition_with_max(PartitionKind::Farey, 1, 300, 7).unwrap();
        // (2/3, 1/3) at scale 300 plus the margin.
        assert_eq!(svg.matches("210.000,210.000").count(), 3);
    }

    #[test]
    fn deterministic_and_bounded() {
        let a = render_partition_with_max(PartitionKind::Bary, 4, 600, 7).unwrap();
        let b = render_partition_with_max(PartitionKind::Bary, 4, 600, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            render_partition_with_max(PartitionKind::Farey, 8, 600, 7),
            Err(Error::DepthTooLarge { depth: 8, max: 7 })
        );
    }

    #[test]
    fn rounding() {
        assert_eq!(fixed3(&rat(2, 3)), "0.667");
        assert_eq!(fixed3(&rat(-1, 8)), "-0.125");
        assert_eq!(fixed3(&rat(12, 1)), "12.000");
        assert!("farey".parse::<PartitionKind>().is_ok());
        assert!("hex".parse::<PartitionKind>().is_err());
    }
}
