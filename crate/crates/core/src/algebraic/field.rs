//! Real number fields `Q(theta)` with a fixed real embedding, and real
//! algebraic numbers given by a minimal polynomial and isolating interval.
//!
//! An element is a polynomial in `theta` of degree below `[K:Q]`, so equality
//! is exact. Signs are decided by interval evaluation on a shrinking interval
//! around `theta`; a nonzero element always resolves after finite refinement.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, count_roots, sturm_chain, IntPolynomial, QPoly, RootInterval};
use crate::exact::{rational_to_f64, Rational};
use crate::point::Coord;

/// Bits of precision for the first sign attempt.
const START_BITS: u64 = 64;

fn dyadic(bits: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

#[derive(Debug)]
pub struct RealField {
    modulus: QPoly,
    root: RwLock<RootInterval>,
}

impl RealField {
    /// `modulus` must be irreducible over Q and `iv` must isolate the chosen
    /// real root.
    pub fn new(modulus: &[Rational], iv: RootInterval) -> Arc<Self> {
        let modulus = poly::monic(modulus);
        let iv = if modulus.len() == 2 {
            let r = -modulus[0].clone();
            RootInterval { lo: r.clone(), hi: r }
        } else {
            iv
        };
        Arc::new(RealField {
            modulus,
            root: RwLock::new(iv),
        })
    }

    /// The field Q itself, presented as `Q[x]/(x - r)`.
    pub fn rational(r: Rational) -> Arc<Self> {
        Self::new(
            &[-r.clone(), Rational::one()],
            RootInterval { lo: r.clone(), hi: r },
        )
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> IntPolynomial {
        IntPolynomial::from_qpoly(&self.modulus)
    }

    /// An interval around the generator no wider than `width`.
    pub fn root_interval(&self, width: &Rational) -> RootInterval {
        {
            let iv = self.root.read().expect("root lock");
            if iv.width() <= *width {
                return iv.clone();
            }
        }
        let mut iv = self.root.write().expect("root lock");
        if iv.width() > *width {
            iv.refine(&self.modulus, width);
        }
        iv.clone()
    }

    pub fn generator(self: &Arc<Self>) -> FieldElem {
        if self.degree() == 1 {
            return self.constant(-self.modulus[0].clone());
        }
        FieldElem::from_poly(self, vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(self: &Arc<Self>, r: Rational) -> FieldElem {
        FieldElem::from_poly(self, vec![r])
    }

    pub fn int(self: &Arc<Self>, n: impl Into<BigInt>) -> FieldElem {
        self.constant(Rational::from_integer(n.into()))
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem::from_poly(self, Vec::new())
    }
}

#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<RealField>,
    coeffs: QPoly,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl FieldElem {
    pub fn from_poly(field: &Arc<RealField>, p: QPoly) -> Self {
        let coeffs = if p.len() > field.degree() {
            poly::divrem(&p, &field.modulus).1
        } else {
            poly::trim(p)
        };
        FieldElem {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<RealField> {
        &self.field
    }

    /// Coefficients in the power basis, lowest first, padded to `[K:Q]`.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut c = self.coeffs.clone();
        c.resize(self.field.degree(), Rational::zero());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        let p = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        FieldElem::from_poly(&self.field, p)
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        FieldElem::from_poly(&self.field, poly::sub(&self.coeffs, &o.coeffs))
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::from_poly(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        FieldElem::from_poly(&self.field, poly::mul(&self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, k: &Rational) -> FieldElem {
        FieldElem::from_poly(&self.field, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn scale_int(&self, k: &BigInt) -> FieldElem {
        self.scale(&Rational::from_integer(k.clone()))
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        (0..e).fold(self.field.int(1), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(&r0, &r1);
            let s2 = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // The modulus is irreducible, so the gcd r0 is a nonzero constant.
        let g = r0[0].clone();
        Some(FieldElem::from_poly(
            &self.field,
            s0.into_iter().map(|c| c / &g).collect(),
        ))
    }

    pub fn div(&self, o: &FieldElem) -> Option<FieldElem> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Interval enclosure of the real value, evaluating at a generator
    /// interval of width `2^-bits`.
    pub fn enclosure(&self, bits: u64) -> (Rational, Rational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        let iv = self.field.root_interval(&dyadic(bits));
        let (xl, xh) = (&iv.lo, &iv.hi);
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for c in self.coeffs.iter().rev() {
            let prods = [&lo * xl, &lo * xh, &hi * xl, &hi * xh];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            lo = mn + c;
            hi = mx + c;
        }
        (lo, hi)
    }

    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn abs(&self) -> FieldElem {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(80);
        rational_to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2))))
    }

    /// Characteristic polynomial of multiplication by this element.
    pub fn char_poly(&self) -> QPoly {
        let d = self.field.degree();
        let x = self.field.generator();
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.field.int(1);
        for _ in 0..d {
            cols.push(self.mul(&basis).coefficients());
            basis = basis.mul(&x);
        }
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect();
        poly::char_poly_rational(&rows)
    }

    pub fn min_poly(&self) -> IntPolynomial {
        IntPolynomial::from_qpoly(&poly::squarefree_part(&self.char_poly()))
    }

    pub fn to_algebraic(&self) -> AlgebraicNumber {
        let min_poly = self.min_poly();
        if let Some(r) = self.as_rational() {
            return AlgebraicNumber::rational(r);
        }
        let q = min_poly.to_qpoly();
        if q.len() == 2 {
            return AlgebraicNumber::rational(-q[0].clone() / &q[1]);
        }
        let chain = sturm_chain(&q);
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclosure(bits);
            // Irreducible of degree >= 2: the endpoints are never roots.
            if count_roots(&chain, &lo, &hi) == 1 {
                return AlgebraicNumber {
                    min_poly,
                    interval: RootInterval { lo, hi },
                };
            }
            bits *= 2;
        }
    }
}

impl Coord for FieldElem {
    fn sign(&self) -> Ordering {
        FieldElem::sign(self)
    }

    fn sub(&self, other: &Self) -> Self {
        FieldElem::sub(self, other)
    }

    fn triple(&self) -> Self {
        self.scale_int(&BigInt::from(3))
    }

    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

/// A real algebraic number: primitive integer minimal polynomial plus an
/// interval containing exactly one of its roots (a single point when the
/// number is rational).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicNumber {
    min_poly: IntPolynomial,
    interval: RootInterval,
}

impl AlgebraicNumber {
    pub fn rational(r: Rational) -> Self {
        AlgebraicNumber {
            min_poly: IntPolynomial::from_qpoly(&[-r.clone(), Rational::one()]),
            interval: RootInterval { lo: r.clone(), hi: r },
        }
    }

    /// `p` must be squarefree and `iv` must isolate one of its roots.
    pub fn from_isolated(p: IntPolynomial, iv: RootInterval) -> Self {
        AlgebraicNumber {
            min_poly: p,
            interval: iv,
        }
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.interval.lo == self.interval.hi).then_some(&self.interval.lo)
    }

    pub fn refine(&mut self, width: &Rational) {
        if self.as_rational().is_none() {
            self.interval.refine(&self.min_poly.to_qpoly(), width);
        }
    }

    /// An interval of width at most `2^-bits` around the number.
    pub fn bounds(&self, bits: u64) -> (Rational, Rational) {
        let mut c = self.clone();
        c.refine(&dyadic(bits));
        (c.interval.lo, c.interval.hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds(80);
        rational_to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2))))
    }

    /// Decimal digits after the point, truncated toward zero; the last
    /// digit may be off by one.
    pub fn decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 8;
        let (lo, _) = self.bounds(bits);
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (lo * Rational::from_integer(scale.clone())).round().to_integer();
        let neg = scaled.is_negative();
        let mag = scaled.abs();
        let int_part = &mag / &scale;
        let frac = (&mag % &scale).to_string();
        let frac = format!("{}{}", "0".repeat(digits - frac.len().min(digits)), frac);
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
    }

    /// Sign-definite comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(r);
        }
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.bounds(bits);
            if lo > *r {
                return Ordering::Greater;
            }
            if hi < *r {
                return Ordering::Less;
            }
            if bits > 1 << 16 {
                // Irrational numbers never equal a rational; this only
                // guards against a malformed interval.
                return lo.cmp(r);
            }
            bits *= 2;
        }
    }

    pub fn value_f64_bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.bounds(60);
        (
            lo.to_f64().unwrap_or(f64::NAN),
            hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{} (root of {})", self.decimal(20), self.min_poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::poly::real_root_intervals;
    use crate::exact::rat;

    fn tribonacci() -> Arc<RealField> {
        let m: QPoly = [-1, -1, -1, 1].iter().map(|&c| rat(c, 1)).collect();
        let iv = real_root_intervals(&m).remove(0);
        RealField::new(&m, iv)
    }

    #[test]
    fn arithmetic_and_inverse() {
        let k = tribonacci();
        let t = k.generator();
        let t3 = t.pow(3);
        assert_eq!(t3, t.pow(2).add(&t).add(&k.int(1)));
        let inv = t.inv().unwrap();
        assert_eq!(inv.mul(&t), k.int(1));
        let e = t.pow(2).sub(&k.int(2));
        assert_eq!(e.mul(&e.inv().unwrap()), k.int(1));
        assert!(k.zero().inv().is_none());
    }

    #[test]
    fn signs_resolve() {
        let k = tribonacci();
        let t = k.generator();
        assert_eq!(t.sign(), Ordering::Greater);
        // 1.839286755... - 1839286755/10^9 > 0
        let c = k.constant(rat(1_839_286_755, 1_000_000_000));
        assert_eq!(t.sub(&c).sign(), Ordering::Greater);
        let c = k.constant(rat(1_839_286_756, 1_000_000_000));
        assert_eq!(t.sub(&c).sign(), Ordering::Less);
        // Large cancellation: t^60 - round(t^60) is tiny but nonzero.
        let big = t.pow(60);
        let approx = big.to_algebraic().bounds(8).0.floor();
        let diff = big.sub(&k.constant(approx));
        assert_ne!(diff.sign(), Ordering::Equal);
    }

    #[test]
    fn minimal_polynomials() {
        let k = tribonacci();
        let t = k.generator();
        assert_eq!(t.min_poly(), IntPolynomial::from_i64(&[-1, -1, -1, 1]));
        assert_eq!(k.int(5).min_poly(), IntPolynomial::from_i64(&[-5, 1]));
        let a = t.to_algebraic();
        assert!((a.to_f64() - 1.839_286_755_214_161).abs() < 1e-14);
        assert_eq!(a.decimal(12), "1.839286755214");
    }

    #[test]
    fn rational_field() {
        let q = RealField::rational(rat(3, 1));
        let g = q.generator();
        assert_eq!(g.as_rational(), Some(rat(3, 1)));
        assert_eq!(g.sub(&q.int(3)).sign(), Ordering::Equal);
        assert_eq!(g.inv().unwrap().as_rational(), Some(rat(1, 3)));
    }
}
