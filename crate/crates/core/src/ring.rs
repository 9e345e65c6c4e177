//! The scalar ring `Z[zeta6][q^{±1/6}]`.
//!
//! A [`Scalar`] is a finite sum of terms `c · q^{k/6}` where the coefficient
//! `c = a + b·zeta6` lives in the ring of Eisenstein-like integers generated
//! by the primitive sixth root of unity `zeta6 = e^{iπ/3}` (minimal
//! polynomial `x² − x + 1`, so `zeta6² = zeta6 − 1`).  This single ring
//! houses plain quantum integers, the fractional `q`-powers produced by
//! crossing normalizations, and the homological phases `e^{iπr}` for
//! `r ∈ (1/3)Z`, so graded Euler characteristics can be assembled by plain
//! ring arithmetic.
//!
//! Exponents are stored as integer numerators of sixths.  Canonical form
//! (sorted term map, no zero coefficients) makes equality structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_rational::Rational64;
use thiserror::Error;

/// Coefficient in `Z[zeta6]`: `a + b·zeta6` with `zeta6² = zeta6 − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Zeta(pub i64, pub i64);

impl Zeta {
    pub const ZERO: Zeta = Zeta(0, 0);
    pub const ONE: Zeta = Zeta(1, 0);

    pub fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    /// `zeta6^k` for any integer `k` (period 6).
    pub fn zeta_pow(k: i64) -> Zeta {
        match k.rem_euclid(6) {
            0 => Zeta(1, 0),
            1 => Zeta(0, 1),
            2 => Zeta(-1, 1), // zeta² = zeta − 1
            3 => Zeta(-1, 0),
            4 => Zeta(0, -1),
            _ => Zeta(1, -1),
        }
    }

    fn mul(self, rhs: Zeta) -> Zeta {
        // (a + b z)(c + d z) = ac + (ad + bc) z + bd z², z² = z − 1
        let Zeta(a, b) = self;
        let Zeta(c, d) = rhs;
        Zeta(a * c - b * d, a * d + b * c + b * d)
    }

    /// Multiplicative inverse when `self` is a unit (the twelve units of
    /// `Z[zeta6]` are `±zeta6^k`).
    pub fn inv_unit(self) -> Option<Zeta> {
        for k in 0..6 {
            for sign in [1i64, -1] {
                let cand = Zeta::zeta_pow(k);
                let cand = Zeta(cand.0 * sign, cand.1 * sign);
                if cand.mul(self) == Zeta::ONE {
                    return Some(cand);
                }
            }
        }
        None
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum RingError {
    #[error("exponent denominator must divide 6: {0}")]
    BadExponent(Rational64),
    #[error("phase exponent denominator must divide 3: {0}")]
    BadPhase(Rational64),
    #[error("cannot evaluate fractional q-power q^({0}/6) at a rational point")]
    FractionalEvaluation(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element of `Z[zeta6][q^{±1/6}]`.  Keys of `terms` are exponents in
/// sixths of a `q`-power; values are the nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<i64, Zeta>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::term(Zeta(n, 0), 0)
    }

    /// Single term `c · q^{sixths/6}`.
    pub fn term(c: Zeta, sixths: i64) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(sixths, c);
        }
        Scalar { terms }
    }

    /// `q^n` for integer `n`.
    pub fn q_pow(n: i64) -> Scalar {
        Scalar::term(Zeta::ONE, 6 * n)
    }

    /// `q^{num/den}`; fails unless `den | 6` after reduction.
    pub fn q_pow_frac(r: Rational64) -> Result<Scalar, RingError> {
        let sixths = Rational64::from_integer(6) * r;
        if !sixths.is_integer() {
            return Err(RingError::BadExponent(r));
        }
        Ok(Scalar::term(Zeta::ONE, *sixths.numer()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Zeta)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every coefficient has no `zeta6` part and every exponent is
    /// an integer power of `q`.
    pub fn is_plain_laurent(&self) -> bool {
        self.terms.iter().all(|(e, c)| e.rem_euclid(6) == 0 && c.1 == 0)
    }

    /// True when nonzero coefficients are all non-negative integers
    /// (no `zeta6` part).
    pub fn has_nonneg_int_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.1 == 0 && c.0 >= 0)
    }

    /// Invariance under `q ↦ q^{−1}`.
    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    /// The image under `q^{1/6} ↦ q^{−1/6}` (coefficients untouched).
    pub fn bar(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect(),
        }
    }

    fn insert_term(terms: &mut BTreeMap<i64, Zeta>, e: i64, c: Zeta) {
        if c.is_zero() {
            return;
        }
        let entry = terms.entry(e).or_insert(Zeta::ZERO);
        *entry = Zeta(entry.0 + c.0, entry.1 + c.1);
        if entry.is_zero() {
            terms.remove(&e);
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division, `None` when `self` is not a multiple of `d`.
    /// Long division on the leading term; requires the leading coefficient
    /// of `d` to be a unit of `Z[zeta6]` (true for all divisors we use).
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if d.is_zero() {
            return None;
        }
        let (lead_e, lead_c) = d.terms.iter().next_back().map(|(e, c)| (*e, *c))?;
        let lead_inv = lead_c.inv_unit()?;
        // in a Laurent ring the exponents are unbounded below, so bound the
        // quotient: an exact quotient has lowest exponent
        // min(self) − min(d)
        let low_limit = self.terms.keys().next().unwrap() - d.terms.keys().next().unwrap();
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (*e, *c)).unwrap();
            let qe = re - lead_e;
            if qe < low_limit {
                return None;
            }
            let qc = rc.mul(lead_inv);
            let t = Scalar::term(qc, qe);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Exact specialization at a rational `q0`: returns the pair
    /// (rational part, zeta6 part).  All exponents must be integers.
    pub fn evaluate_at(&self, q0: Rational64) -> Result<(Rational64, Rational64), RingError> {
        if q0 == Rational64::from_integer(0) {
            return Err(RingError::DivisionByZero);
        }
        let mut plain = Rational64::from_integer(0);
        let mut zeta = Rational64::from_integer(0);
        for (e, c) in &self.terms {
            if e.rem_euclid(6) != 0 {
                return Err(RingError::FractionalEvaluation(*e));
            }
            let k = e / 6;
            let p = rat_pow(q0, k);
            plain += p * Rational64::from_integer(c.0);
            zeta += p * Rational64::from_integer(c.1);
        }
        Ok((plain, zeta))
    }

    /// Canonical string form, e.g. `q^2 + 1 + q^-2` or `(-1+z)*q^{1/3}`.
    pub fn render(&self) -> String {
        format!("{self}")
    }
}

fn rat_pow(b: Rational64, k: i64) -> Rational64 {
    let mut acc = Rational64::from_integer(1);
    for _ in 0..k.unsigned_abs() {
        acc *= b;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Scalar::insert_term(&mut terms, *e, *c);
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, Zeta(-c.0, -c.1))).collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                Scalar::insert_term(&mut terms, e1 + e2, c1.mul(*c2));
            }
        }
        Scalar { terms }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            Scalar::insert_term(&mut self.terms, *e, *c);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Quantum integer `[n] = (q^n − q^{−n})/(q − q^{−1})`, so
/// `[n] = q^{n−1} + q^{n−3} + … + q^{1−n}`; `[0] = 0`.
pub fn qint(n: i64) -> Scalar {
    assert!(n >= 0, "qint requires n >= 0");
    let mut s = Scalar::zero();
    let mut e = n - 1;
    while e >= -(n - 1) && n > 0 {
        s += &Scalar::q_pow(e);
        e -= 2;
    }
    s
}

/// Trinomial coefficient `n!/(a! b! (n−a−b)!)`, and 0 whenever any of the
/// three lower slots is negative.
pub fn trinomial(n: i64, a: i64, b: i64) -> i64 {
    let c = n - a - b;
    if a < 0 || b < 0 || c < 0 {
        return 0;
    }
    // n choose a, then (n-a) choose b, multiplied out in i128.
    let mut acc: i128 = 1;
    let mut pick = |top: i64, k: i64| {
        for i in 0..k {
            acc = acc * (top - i) as i128;
            acc /= (i + 1) as i128;
        }
    };
    pick(n, a);
    pick(n - a, b);
    i64::try_from(acc).expect("trinomial overflow")
}

/// The monomial `e^{iπr} · q^r` for `r` with denominator dividing 3.
///
/// Multiplicative: `phase_monomial(r) * phase_monomial(r') =
/// phase_monomial(r + r')`.  Phases with denominator exactly 6 would need
/// the twelfth root `e^{iπ/6}`, which lies outside `Z[zeta6]`, so they are
/// rejected.
pub fn phase_monomial(r: Rational64) -> Result<Scalar, RingError> {
    let sixths = Rational64::from_integer(6) * r;
    if !sixths.is_integer() {
        return Err(RingError::BadPhase(r));
    }
    let sixths = *sixths.numer();
    if sixths.rem_euclid(2) != 0 {
        // phase e^{iπ k/6} with odd k is not in Z[zeta6]
        return Err(RingError::BadPhase(r));
    }
    // e^{iπr} = zeta6^{3r·2/2}: with r = k/3, e^{iπ k/3} = zeta6^k.
    let thirds = sixths / 2;
    Ok(Scalar::term(Zeta::zeta_pow(thirds), sixths))
}

/// `phase_monomial` for `r` given in thirds (the homological lattice).
pub fn phase_thirds(thirds: i64) -> Scalar {
    Scalar::term(Zeta::zeta_pow(thirds), 2 * thirds)
}

/// The pure phase `e^{iπ k/3}` with no `q`-power.
pub fn pure_phase_thirds(thirds: i64) -> Scalar {
    Scalar::term(Zeta::zeta_pow(thirds), 0)
}

// ---------------------------------------------------------------------------
// rendering and parsing
// ---------------------------------------------------------------------------

fn render_exp(e: i64) -> String {
    if e == 6 {
        "q".into()
    } else if e.rem_euclid(6) == 0 {
        format!("q^{}", e / 6)
    } else {
        let g = gcd(e.abs(), 6);
        format!("q^{{{}/{}}}", e / g, 6 / g)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn render_coeff(c: &Zeta) -> String {
    let Zeta(a, b) = c;
    if *b == 0 {
        format!("{a}")
    } else {
        let mut s = String::from("(");
        if *a != 0 {
            s.push_str(&format!("{a}"));
        }
        if *b == 1 {
            s.push_str(if *a == 0 { "z" } else { "+z" });
        } else if *b == -1 {
            s.push_str("-z");
        } else if *b > 0 && *a != 0 {
            s.push_str(&format!("+{b}*z"));
        } else {
            s.push_str(&format!("{b}*z"));
        }
        s.push(')');
        s
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest exponent first
        for (e, c) in self.terms.iter().rev() {
            let coeff = render_coeff(c);
            let body = if *e == 0 {
                coeff
            } else if coeff == "1" {
                render_exp(*e)
            } else if coeff == "-1" {
                format!("-{}", render_exp(*e))
            } else {
                format!("{}*{}", coeff, render_exp(*e))
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

/// Parser for the canonical rendering grammar.
pub fn parse_scalar(input: &str) -> Result<Scalar, RingError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let s = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(RingError::Parse(format!("trailing input at {}", p.pos)));
    }
    Ok(s)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_sum(&mut self) -> Result<Scalar, RingError> {
        let mut acc = Scalar::zero();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            self.bump();
            sign = -1;
        } else if self.peek() == Some('+') {
            self.bump();
        }
        loop {
            let t = self.parse_term()?;
            let t = if sign < 0 { -&t } else { t };
            acc += &t;
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Scalar, RingError> {
        let coeff = match self.peek() {
            Some('(') => {
                self.bump();
                let c = self.parse_zeta_coeff()?;
                if self.bump() != Some(')') {
                    return Err(RingError::Parse("expected )".into()));
                }
                Some(c)
            }
            Some(c) if c.is_ascii_digit() => Some(Zeta(self.parse_int()?, 0)),
            Some('z') => {
                self.bump();
                Some(Zeta(0, 1))
            }
            _ => None,
        };
        let mut result = match coeff {
            Some(c) => Scalar::term(c, 0),
            None => Scalar::one(),
        };
        if self.peek() == Some('*') {
            self.bump();
        }
        if self.peek() == Some('q') {
            self.bump();
            let sixths = if self.peek() == Some('^') {
                self.bump();
                if self.peek() == Some('{') {
                    self.bump();
                    let num = self.parse_int()?;
                    if self.bump() != Some('/') {
                        return Err(RingError::Parse("expected /".into()));
                    }
                    let den = self.parse_int()?;
                    if self.bump() != Some('}') {
                        return Err(RingError::Parse("expected }".into()));
                    }
                    if den == 0 || 6 % den != 0 {
                        return Err(RingError::Parse(format!("bad exponent denominator {den}")));
                    }
                    num * (6 / den)
                } else {
                    6 * self.parse_int()?
                }
            } else {
                6
            };
            result = &result * &Scalar::term(Zeta::ONE, sixths);
        }
        Ok(result)
    }

    fn parse_zeta_coeff(&mut self) -> Result<Zeta, RingError> {
        // forms: a, a+z, a-z, a+b*z, b*z, z, -z ...
        let mut a = 0i64;
        let mut b = 0i64;
        loop {
            let sign = match self.peek() {
                Some('-') => {
                    self.bump();
                    -1
                }
                Some('+') => {
                    self.bump();
                    1
                }
                _ => 1,
            };
            if self.peek() == Some('z') {
                self.bump();
                b += sign;
            } else {
                let n = self.parse_int()?;
                if self.peek() == Some('*') {
                    self.bump();
                    if self.bump() != Some('z') {
                        return Err(RingError::Parse("expected z".into()));
                    }
                    b += sign * n;
                } else if self.peek() == Some('z') {
                    self.bump();
                    b += sign * n;
                } else {
                    a += sign * n;
                }
            }
            match self.peek() {
                Some('+') | Some('-') => continue,
                _ => break,
            }
        }
        Ok(Zeta(a, b))
    }

    fn parse_int(&mut self) -> Result<i64, RingError> {
        self.skip_ws();
        let mut sign = 1i64;
        if self.chars.get(self.pos) == Some(&'-') {
            sign = -1;
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(RingError::Parse(format!("expected integer at {}", self.pos)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>()
            .map(|n| sign * n)
            .map_err(|e| RingError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn qint_small() {
        assert_eq!(qint(0), Scalar::zero());
        assert_eq!(qint(1), Scalar::one());
        assert_eq!(qint(2), &Scalar::q_pow(1) + &Scalar::q_pow(-1));
        let three = &(&Scalar::q_pow(2) + &Scalar::one()) + &Scalar::q_pow(-2);
        assert_eq!(qint(3), three);
    }

    #[test]
    fn qint_palindromic_nonneg() {
        for n in 1..12 {
            let q = qint(n);
            assert!(q.is_palindromic());
            assert!(q.has_nonneg_int_coeffs());
        }
    }

    #[test]
    fn clebsch_gordan_ladder() {
        // [2][n] = [n+1] + [n−1]
        for n in 1..10 {
            let lhs = &qint(2) * &qint(n);
            let rhs = &qint(n + 1) + &qint(n - 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trinomial_values() {
        assert_eq!(trinomial(3, 1, 1), 6);
        assert_eq!(trinomial(2, 3, 0), 0); // third slot negative
        assert_eq!(trinomial(4, 2, 1), 12);
        assert_eq!(trinomial(0, 0, 0), 1);
        assert_eq!(trinomial(-1, 0, 0), 0);
        // symmetries
        for n in -2..7 {
            for a in -2..7 {
                for b in -2..7 {
                    assert_eq!(trinomial(n, a, b), trinomial(n, b, a));
                    assert_eq!(trinomial(n, a, b), trinomial(n, a, n - a - b));
                }
            }
        }
    }

    #[test]
    fn phase_monomial_basics() {
        assert_eq!(phase_monomial(r(0, 1)).unwrap(), Scalar::one());
        // e^{iπ} q = −q
        assert_eq!(phase_monomial(r(1, 1)).unwrap(), -&Scalar::q_pow(1));
        // (e^{iπ/3} q^{1/3})³ = −q
        let third = phase_monomial(r(1, 3)).unwrap();
        assert_eq!(third.pow(3), -&Scalar::q_pow(1));
        // group law and inverses
        for a in -6..6 {
            for b in -6..6 {
                let pa = phase_thirds(a);
                let pb = phase_thirds(b);
                assert_eq!(&pa * &pb, phase_thirds(a + b));
            }
            assert_eq!(&phase_thirds(a) * &phase_thirds(-a), Scalar::one());
        }
        // denominator 6 is rejected: e^{iπ/6} is not in Z[zeta6]
        assert!(phase_monomial(r(1, 6)).is_err());
        assert!(phase_monomial(r(1, 4)).is_err());
    }

    #[test]
    fn evaluate_at_points() {
        assert_eq!(
            qint(3).evaluate_at(r(1, 1)).unwrap(),
            (r(3, 1), r(0, 1))
        );
        assert_eq!(
            qint(2).evaluate_at(r(2, 1)).unwrap(),
            (r(5, 2), r(0, 1))
        );
        let minus_q = phase_monomial(r(1, 1)).unwrap();
        assert_eq!(minus_q.evaluate_at(r(1, 1)).unwrap(), (r(-1, 1), r(0, 1)));
        // fractional exponents refuse rational evaluation
        assert!(phase_thirds(1).evaluate_at(r(1, 1)).is_err());
        assert!(Scalar::one().evaluate_at(r(0, 1)).is_err());
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = &qint(3) * &phase_thirds(-8);
        assert_eq!(a.div_exact(&qint(3)).unwrap(), phase_thirds(-8));
        assert_eq!(qint(2).div_exact(&qint(3)), None);
        let prod = &qint(2) * &qint(3);
        assert_eq!(prod.div_exact(&qint(2)).unwrap(), qint(3));
    }

    #[test]
    fn render_and_parse() {
        let cases = [
            qint(3),
            Scalar::zero(),
            Scalar::from_int(-4),
            phase_thirds(1),
            phase_thirds(-8),
            &qint(2) * &phase_thirds(2),
            &(&qint(5) * &Scalar::from_int(-3)) + &phase_thirds(7),
            Scalar::term(Zeta(2, -3), -5),
        ];
        for c in &cases {
            let s = c.render();
            let back = parse_scalar(&s).unwrap_or_else(|e| panic!("parse {s:?}: {e}"));
            assert_eq!(&back, c, "roundtrip through {s:?}");
        }
        assert_eq!(qint(3).render(), "q^2 + 1 + q^-2");
        assert_eq!(parse_scalar("q^2 + 1 + q^-2").unwrap(), qint(3));
        // zeta coefficient with fractional power
        let x = Scalar::term(Zeta(-1, 1), 2);
        assert_eq!(x.render(), "(-1+z)*q^{1/3}");
        assert_eq!(parse_scalar("(-1+z)*q^{1/3}").unwrap(), x);
    }

    #[test]
    fn plain_laurent_subring_closed() {
        let a = qint(4);
        let b = &qint(2) * &qint(7);
        assert!(a.is_plain_laurent() && b.is_plain_laurent());
        assert!((&a + &b).is_plain_laurent());
        assert!((&a * &b).is_plain_laurent());
        assert!(!phase_thirds(1).is_plain_laurent());
    }
}
