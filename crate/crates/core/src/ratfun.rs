//! Exact rational functions in one variable `s` (semantically `s = q^{1/2}`)
//! with integer coefficients, used as the ground field for module-level
//! linear algebra.  Representations are kept reduced: gcd(num, den) = 1,
//! integer contents coprime, and the denominator has positive leading
//! coefficient, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, `coeffs[i]` is the coefficient of `s^i`.
/// Trailing zeros are trimmed; the zero polynomial has empty coeffs.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> ZPoly {
        ZPoly::constant(1)
    }

    pub fn constant(n: i64) -> ZPoly {
        ZPoly::from_coeffs(vec![BigInt::from(n)])
    }

    /// `c · s^k`.
    pub fn monomial(c: i64, k: usize) -> ZPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        ZPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> ZPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    fn scale_int(&self, k: &BigInt) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn div_content(&self, k: &BigInt) -> ZPoly {
        if k.is_one() {
            return self.clone();
        }
        ZPoly::from_coeffs(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn add(&self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Exact division; panics if `d` does not divide `self`.
    fn div_exact(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - d.coeffs.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::div_rem(top, lead.clone());
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= c * &q;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        ZPoly::from_coeffs(quot)
    }

    /// Primitive gcd via a content-stripped pseudo-remainder sequence.
    fn gcd(&self, rhs: &ZPoly) -> ZPoly {
        let primitive = |p: &ZPoly| {
            let c = p.content();
            if c.is_zero() || c.is_one() {
                p.clone()
            } else {
                p.div_content(&c)
            }
        };
        let mut a = primitive(self);
        let mut b = primitive(rhs);
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            // pseudo-remainder of a by b
            let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap());
            if da < db {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let lead = b.leading().unwrap().clone();
            let shift = da - db + 1;
            let mut pow = BigInt::one();
            for _ in 0..shift {
                pow *= &lead;
            }
            let mut r = a.scale_int(&pow);
            // long division, keep the remainder
            let mut k = r.degree().unwrap_or(0) as i64 - db as i64;
            while k >= 0 && !r.is_zero() && r.degree().unwrap() >= db {
                let dr = r.degree().unwrap();
                let q = r.leading().unwrap() / &lead;
                let mut coeffs = r.coeffs.clone();
                for (i, c) in b.coeffs.iter().enumerate() {
                    coeffs[dr - db + i] -= c * &q;
                }
                // leading term cancels by construction of pow
                r = ZPoly::from_coeffs(coeffs);
                k -= 1;
            }
            a = b;
            b = primitive(&r);
        }
        // normalize sign
        if a.leading().map_or(false, |c| c.is_negative()) {
            a.neg()
        } else {
            a
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => format!("{c}"),
                1 if c.is_one() => "s".to_string(),
                1 => format!("{c}*s"),
                _ if c.is_one() => format!("s^{i}"),
                _ => format!("{c}*s^{i}"),
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if let Some(stripped) = body.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Reduced fraction of integer polynomials in `s = q^{1/2}`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFun {
    num: ZPoly,
    den: ZPoly,
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun {
            num: ZPoly::constant(n),
            den: ZPoly::one(),
        }
    }

    /// `c · s^k` for any integer `k` (negative powers go to the denominator).
    pub fn s_pow(c: i64, k: i64) -> RatFun {
        if k >= 0 {
            RatFun::new(ZPoly::monomial(c, k as usize), ZPoly::one())
        } else {
            RatFun::new(ZPoly::constant(c), ZPoly::monomial(1, (-k) as usize))
        }
    }

    /// `c · q^k = c · s^{2k}`.
    pub fn q_pow(c: i64, k: i64) -> RatFun {
        RatFun::s_pow(c, 2 * k)
    }

    pub fn new(num: ZPoly, den: ZPoly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = ZPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 || !g.leading().map_or(true, |c| c.is_one()) {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let cn = self.num.content();
        let cd = self.den.content();
        let c = num_integer::gcd(cn, cd);
        if !c.is_one() && !c.is_zero() {
            self.num = self.num.div_content(&c);
            self.den = self.den.div_content(&c);
        }
        if self.den.leading().map_or(false, |l| l.is_negative()) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }

    /// Exact evaluation at a rational point; `None` when the denominator
    /// vanishes there.
    pub fn eval(&self, s0: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(s0) / d)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ZPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_reduces() {
        let a = RatFun::s_pow(1, 3); // s³
        let b = RatFun::s_pow(1, -2); // s⁻²
        assert_eq!(&a * &b, RatFun::s_pow(1, 1));
        let sum = &RatFun::s_pow(1, 1) + &RatFun::s_pow(1, -1);
        // (s² + 1)/s
        assert_eq!(
            sum,
            RatFun::new(
                ZPoly::from_coeffs(vec![1.into(), 0.into(), 1.into()]),
                ZPoly::monomial(1, 1)
            )
        );
        assert_eq!(&sum - &sum, RatFun::zero());
    }

    #[test]
    fn gcd_cancellation() {
        // (s² − 1)/(s − 1) = s + 1
        let num = ZPoly::from_coeffs(vec![BigInt::from(-1), 0.into(), 1.into()]);
        let den = ZPoly::from_coeffs(vec![BigInt::from(-1), 1.into()]);
        let f = RatFun::new(num, den);
        assert_eq!(
            f,
            RatFun::new(ZPoly::from_coeffs(vec![1.into(), 1.into()]), ZPoly::one())
        );
    }

    #[test]
    fn field_ops() {
        let f = RatFun::new(
            ZPoly::from_coeffs(vec![2.into(), 3.into()]),
            ZPoly::from_coeffs(vec![5.into(), 0.into(), 1.into()]),
        );
        let g = f.inv().unwrap();
        assert_eq!(&f * &g, RatFun::one());
        assert!(RatFun::zero().inv().is_none());
    }

    #[test]
    fn evaluation() {
        let f = RatFun::new(
            ZPoly::from_coeffs(vec![0.into(), 1.into()]),
            ZPoly::from_coeffs(vec![BigInt::from(-1), 1.into()]),
        ); // s/(s−1)
        assert_eq!(f.eval(&brat(2, 1)).unwrap(), brat(2, 1));
        assert!(f.eval(&brat(1, 1)).is_none());
        assert_eq!(RatFun::q_pow(1, -1).eval(&brat(2, 1)).unwrap(), brat(1, 4));
    }
}
