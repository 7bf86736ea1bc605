//! Univariate polynomials over the integers and rationals, with Sturm-sequence
//! root isolation. Coefficients are stored lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;
use crate::matrix::Mat3;

pub type QPoly = Vec<Rational>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Primitive integer multiple of a rational polynomial with positive
    /// leading coefficient.
    pub fn from_qpoly(p: &[Rational]) -> Self {
        let p = trim(p.to_vec());
        let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut ints: Vec<BigInt> = if content.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &content).collect()
        };
        if ints.last().is_some_and(Signed::is_negative) {
            ints.iter_mut().for_each(|c| *c = -c.clone());
        }
        Self::new(ints)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    pub fn to_qpoly(&self) -> QPoly {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        eval(&self.to_qpoly(), x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str(if show_mag { "*x" } else { "x" })?,
                _ => write!(f, "{}x^{i}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Rational]) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn monic(p: &[Rational]) -> QPoly {
    let p = trim(p.to_vec());
    match p.last() {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / &lead).collect()
        }
        None => p,
    }
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let coef = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &coef * bc;
        }
        q[shift] = coef;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &[Rational]) -> QPoly {
    let g = gcd(p, &derivative(p));
    monic(&divrem(p, &g).0)
}

/// Negated-remainder Sturm chain of `p`.
pub fn sturm_chain(p: &[Rational]) -> Vec<QPoly> {
    let mut chain = vec![trim(p.to_vec())];
    let d = derivative(p);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = divrem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[QPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(a, b]`, for `a` not a root.
pub fn count_roots(chain: &[QPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

/// Every real root has absolute value below this bound.
pub fn cauchy_bound(p: &[Rational]) -> Rational {
    let p = trim(p.to_vec());
    let lead = p.last().expect("nonzero polynomial").abs();
    let m = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Open interval `(lo, hi)` holding exactly one root of a squarefree
/// polynomial, with nonzero values of opposite sign at the ends.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Halves the interval until its width is at most `width`. An exact
    /// rational root collapses it to a point.
    pub fn refine(&mut self, p: &[Rational], width: &Rational) {
        let mut flo = eval(p, &self.lo);
        while &self.width() > width {
            let mid = self.midpoint();
            let fm = eval(p, &mid);
            if fm.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if fm.is_positive() == flo.is_positive() {
                self.lo = mid;
                flo = fm;
            } else {
                self.hi = mid;
            }
        }
    }
}

fn nonroot_near(p: &[Rational], mid: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if !eval(p, mid).is_zero() {
        return mid.clone();
    }
    let mut step = (hi - lo) / Rational::from_integer(BigInt::from(4));
    loop {
        let cand = mid + &step;
        if !eval(p, &cand).is_zero() {
            return cand;
        }
        step /= Rational::from_integer(BigInt::from(2));
    }
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// increasing order.
pub fn real_root_intervals(p: &[Rational]) -> Vec<RootInterval> {
    let p = trim(p.to_vec());
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(&p);
    let b = cauchy_bound(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = nonroot_near(&p, &((&lo + &hi) / Rational::from_integer(BigInt::from(2))), &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Distinct rational roots of `p`.
pub fn rational_roots(p: &IntPolynomial) -> Vec<Rational> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let q = p.to_qpoly();
    let sf = squarefree_part(&q);
    let lead = p.leading().abs();
    let lead_q = Rational::from_integer(lead.clone());
    // Any rational root is k / lead for an integer k.
    let width = Rational::new(BigInt::one(), &lead * &lead * 4);
    let mut roots = Vec::new();
    for mut iv in real_root_intervals(&sf) {
        iv.refine(&sf, &width);
        let k_lo = (&iv.lo * &lead_q).floor().to_integer();
        let k_hi = (&iv.hi * &lead_q).ceil().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let cand = Rational::new(k.clone(), lead.clone());
            if eval(&q, &cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
            k += 1;
        }
    }
    roots.sort();
    roots
}

/// Irreducible factorization of a polynomial of degree at most 3:
/// monic factors with multiplicities.
pub fn factor_small(p: &IntPolynomial) -> Vec<(QPoly, usize)> {
    assert!(p.degree() <= 3, "factor_small handles degree <= 3");
    let mut rest = monic(&p.to_qpoly());
    let mut out = Vec::new();
    for r in rational_roots(p) {
        let lin = vec![-r.clone(), Rational::one()];
        let mut mult = 0;
        loop {
            let (q, rem) = divrem(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push((lin, mult));
    }
    if degree(&rest).unwrap_or(0) > 0 {
        out.push((rest, 1));
    }
    out
}

/// `det(xI - m)`.
pub fn char_poly(m: &Mat3) -> IntPolynomial {
    let r = m.rows();
    let minor = |i: usize, j: usize| &r[i][i] * &r[j][j] - &r[i][j] * &r[j][i];
    let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    IntPolynomial::new(vec![-m.det(), c1, -m.trace(), BigInt::one()])
}

/// Characteristic polynomial of a small square rational matrix
/// (Faddeev-LeVerrier), lowest degree first.
pub fn char_poly_rational(m: &[Vec<Rational>]) -> QPoly {
    let n = m.len();
    let ident = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let matmul = |a: &[Vec<Rational>], b: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        let shifted: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| &mk[i][j] + &prev * ident(i, j)).collect())
            .collect();
        mk = matmul(m, &shifted);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &mk[i][i]);
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}
