//! The Grothendieck ring of finite dimensional type-1 Uq(sl3)-modules,
//! at the level of formal sums of highest weights `V(m,n)`: tensoring by a
//! fundamental module, decomposition of tensor words, quantum dimensions,
//! and the signed trinomial expansion of `V(m,n)` into tensor words.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::ring::{qint, trinomial, Scalar};

/// Sign of a fundamental module: `+` for `V(1,0)`, `−` for `V(0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Parse a word over `{+,-}`.
pub fn word(s: &str) -> Vec<Sign> {
    s.chars()
        .map(|c| match c {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            _ => panic!("bad sign character {c:?}"),
        })
        .collect()
}

/// Formal integer combination of the classes `[V(m,n)]`.  Multiplicities
/// may be negative (virtual modules); zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RepElem {
    mult: BTreeMap<(u32, u32), i64>,
}

impl RepElem {
    pub fn zero() -> RepElem {
        RepElem::default()
    }

    /// The class of a single irreducible `V(m,n)`.
    pub fn irreducible(m: u32, n: u32) -> RepElem {
        let mut mult = BTreeMap::new();
        mult.insert((m, n), 1);
        RepElem { mult }
    }

    pub fn trivial() -> RepElem {
        RepElem::irreducible(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn multiplicity(&self, m: u32, n: u32) -> i64 {
        self.mult.get(&(m, n)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &i64)> {
        self.mult.iter()
    }

    fn add_term(&mut self, key: (u32, u32), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.mult.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.mult.remove(&key);
        }
    }

    pub fn add(&self, rhs: &RepElem) -> RepElem {
        let mut out = self.clone();
        for (k, c) in &rhs.mult {
            out.add_term(*k, *c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> RepElem {
        let mut out = RepElem::zero();
        for (k, m) in &self.mult {
            out.add_term(*k, m * c);
        }
        out
    }

    pub fn sub(&self, rhs: &RepElem) -> RepElem {
        self.add(&rhs.scale(-1))
    }

    /// Image under duality, `V(m,n) ↦ V(n,m)`.
    pub fn dual(&self) -> RepElem {
        let mut out = RepElem::zero();
        for (&(m, n), c) in &self.mult {
            out.add_term((n, m), *c);
        }
        out
    }
}

impl fmt::Display for RepElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(m, n), &c) in self.mult.iter().rev() {
            let body = if c == 1 {
                format!("V({m},{n})")
            } else if c == -1 {
                format!("-V({m},{n})")
            } else {
                format!("{c}*V({m},{n})")
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

/// Tensor by a fundamental module, extended linearly:
/// `V+ ⊗ V(m,n) = V(m+1,n) + V(m−1,n+1) + V(m,n−1)` and the mirror rule
/// for `V−`; terms with a negative index are dropped.
pub fn tensor_fundamental(x: &RepElem, sign: Sign) -> RepElem {
    let mut out = RepElem::zero();
    for (&(m, n), &c) in x.iter() {
        let (m, n) = (m as i64, n as i64);
        let targets = match sign {
            Sign::Plus => [(m + 1, n), (m - 1, n + 1), (m, n - 1)],
            Sign::Minus => [(m, n + 1), (m + 1, n - 1), (m - 1, n)],
        };
        for (a, b) in targets {
            if a >= 0 && b >= 0 {
                out.add_term((a as u32, b as u32), c);
            }
        }
    }
    out
}

/// Decompose the tensor word `V_{s1} ⊗ … ⊗ V_{sk}` into irreducibles,
/// strictly left to right.
pub fn decompose_word(w: &[Sign]) -> RepElem {
    let mut acc = RepElem::trivial();
    for &s in w {
        acc = tensor_fundamental(&acc, s);
    }
    acc
}

/// Quantum dimension, by the fundamental-tensoring recursion grounded at
/// `qdim V(0,0) = 1` and `qdim V(1,0) = qdim V(0,1) = [3]`.
pub fn qdim(x: &RepElem) -> Scalar {
    let mut out = Scalar::zero();
    for (&(m, n), &c) in x.iter() {
        out += &(&qdim_irr(m, n) * &Scalar::from_int(c));
    }
    out
}

fn qdim_irr(m: u32, n: u32) -> Scalar {
    fn rec(m: i64, n: i64, memo: &mut BTreeMap<(i64, i64), Scalar>) -> Scalar {
        if m < 0 || n < 0 {
            return Scalar::zero();
        }
        if let Some(v) = memo.get(&(m, n)) {
            return v.clone();
        }
        let v = match (m, n) {
            (0, 0) => Scalar::one(),
            (1, 0) | (0, 1) => qint(3),
            _ => {
                if m >= 1 {
                    // [3]·qdim(m−1,n) = qdim(m,n) + qdim(m−2,n+1) + qdim(m−1,n−1)
                    let a = &qint(3) * &rec(m - 1, n, memo);
                    let b = rec(m - 2, n + 1, memo);
                    let c = rec(m - 1, n - 1, memo);
                    &(&a - &b) - &c
                } else {
                    let a = &qint(3) * &rec(m, n - 1, memo);
                    let b = rec(m + 1, n - 2, memo);
                    let c = rec(m - 1, n - 1, memo);
                    &(&a - &b) - &c
                }
            }
        };
        memo.insert((m, n), v.clone());
        v
    }
    let mut memo = BTreeMap::new();
    rec(m as i64, n as i64, &mut memo)
}

/// Classical dimension, `qdim` evaluated at `q = 1`.
pub fn dim(x: &RepElem) -> i64 {
    let (plain, zeta) = qdim(x)
        .evaluate_at(Rational64::from_integer(1))
        .expect("qdim is a plain Laurent polynomial");
    assert!(zeta == Rational64::from_integer(0));
    assert!(plain.is_integer());
    *plain.numer()
}

/// The signed sum of tensor words expanding `[V(m,n)]`:
/// sum over `(i,j,k,l,δ)` of
/// `(−1)^{δ+i+k} · T(m−δ−i−2j; i,j) · T(n−δ−k−2l; k,l) · [word(+^a −^b)]`
/// with `a = m−2i+k−3j−δ`, `b = n+i−2k−3l−δ`.
pub fn explicit_formula_rhs(m: u32, n: u32) -> RepElem {
    let (m, n) = (m as i64, n as i64);
    let mut acc = RepElem::zero();
    for delta in 0..=1i64 {
        for i in 0..=m {
            for j in 0..=m / 2 {
                let t1 = trinomial(m - delta - i - 2 * j, i, j);
                if t1 == 0 {
                    continue;
                }
                for k in 0..=n {
                    for l in 0..=n / 2 {
                        let t2 = trinomial(n - delta - k - 2 * l, k, l);
                        if t2 == 0 {
                            continue;
                        }
                        let a = m - 2 * i + k - 3 * j - delta;
                        let b = n + i - 2 * k - 3 * l - delta;
                        assert!(a >= 0 && b >= 0, "word exponents must be non-negative");
                        let mut w = vec![Sign::Plus; a as usize];
                        w.extend(vec![Sign::Minus; b as usize]);
                        let sgn = if (delta + i + k) % 2 == 0 { 1 } else { -1 };
                        acc = acc.add(&decompose_word(&w).scale(sgn * t1 * t2));
                    }
                }
            }
        }
    }
    acc
}

/// The parameter tuples of `explicit_formula_rhs` with their signs,
/// trinomial weights and word exponents `(a, b)`; this is what the cabling
/// formula sums over.
pub fn cabling_tuples(m: u32, n: u32) -> Vec<(i64, u32, u32)> {
    let (m, n) = (m as i64, n as i64);
    let mut out = Vec::new();
    for delta in 0..=1i64 {
        for i in 0..=m {
            for j in 0..=m / 2 {
                let t1 = trinomial(m - delta - i - 2 * j, i, j);
                if t1 == 0 {
                    continue;
                }
                for k in 0..=n {
                    for l in 0..=n / 2 {
                        let t2 = trinomial(n - delta - k - 2 * l, k, l);
                        if t2 == 0 {
                            continue;
                        }
                        let a = m - 2 * i + k - 3 * j - delta;
                        let b = n + i - 2 * k - 3 * l - delta;
                        let sgn = if (delta + i + k) % 2 == 0 { 1 } else { -1 };
                        out.push((sgn * t1 * t2, a as u32, b as u32));
                    }
                }
            }
        }
    }
    out
}

/// Weyl-type closed form `[m+1][n+1][m+n+2]/[2]`, used as an independent
/// oracle for `qdim` in tests.
pub fn qdim_closed_form(m: u32, n: u32) -> Scalar {
    let num = &(&qint(m as i64 + 1) * &qint(n as i64 + 1)) * &qint((m + n) as i64 + 2);
    num.div_exact(&qint(2)).expect("[2] divides the Weyl numerator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_fundamental_rules() {
        let x = tensor_fundamental(&RepElem::irreducible(1, 0), Sign::Plus);
        assert_eq!(
            x,
            RepElem::irreducible(2, 0).add(&RepElem::irreducible(0, 1))
        );
        let y = tensor_fundamental(&RepElem::trivial(), Sign::Minus);
        assert_eq!(y, RepElem::irreducible(0, 1));
        let z = tensor_fundamental(&RepElem::irreducible(1, 1), Sign::Plus);
        let want = RepElem::irreducible(2, 1)
            .add(&RepElem::irreducible(0, 2))
            .add(&RepElem::irreducible(1, 0));
        assert_eq!(z, want);
    }

    #[test]
    fn decompose_words() {
        assert_eq!(
            decompose_word(&word("+-")),
            RepElem::irreducible(1, 1).add(&RepElem::trivial())
        );
        assert_eq!(decompose_word(&[]), RepElem::trivial());
        let www = decompose_word(&word("+++"));
        let want = RepElem::irreducible(3, 0)
            .add(&RepElem::irreducible(1, 1).scale(2))
            .add(&RepElem::trivial());
        assert_eq!(www, want);
    }

    #[test]
    fn decompose_reverse_and_dual() {
        for w in ["+", "+-", "++-", "+--+", "-++-", "++++"] {
            let w = word(w);
            let fwd = decompose_word(&w);
            let mut rev = w.clone();
            rev.reverse();
            // multiplicities are insensitive to the order of association
            assert_eq!(fwd, decompose_word(&rev));
            // flipping all signs gives the dual decomposition
            let flipped: Vec<Sign> = w.iter().map(|s| s.flip()).collect();
            assert_eq!(decompose_word(&flipped), fwd.dual());
        }
    }

    #[test]
    fn qdim_values() {
        assert_eq!(qdim(&RepElem::trivial()), Scalar::one());
        assert_eq!(qdim(&RepElem::irreducible(1, 0)), qint(3));
        // qdim V(1,1) = [3]² − 1
        let want = &(&qint(3) * &qint(3)) - &Scalar::one();
        assert_eq!(qdim(&RepElem::irreducible(1, 1)), want);
    }

    #[test]
    fn qdim_conservation() {
        for w in ["", "+", "-", "+-", "++", "+-+", "--+-", "+++--"] {
            let w = word(w);
            let total = qdim(&decompose_word(&w));
            assert_eq!(total, qint(3).pow(w.len() as u32));
        }
    }

    #[test]
    fn qdim_matches_weyl_form() {
        for m in 0..6u32 {
            for n in 0..6u32 {
                assert_eq!(
                    qdim(&RepElem::irreducible(m, n)),
                    qdim_closed_form(m, n),
                    "qdim mismatch at ({m},{n})"
                );
            }
        }
    }

    #[test]
    fn dims() {
        assert_eq!(dim(&RepElem::irreducible(1, 1)), 8);
        assert_eq!(dim(&RepElem::irreducible(2, 0)), 6);
        assert_eq!(dim(&RepElem::trivial()), 1);
        for m in 0..6u32 {
            for n in 0..6u32 {
                let d = dim(&RepElem::irreducible(m, n));
                let closed = ((m + 1) * (n + 1) * (m + n + 2) / 2) as i64;
                assert_eq!(d, closed);
            }
        }
    }

    #[test]
    fn explicit_formula_small() {
        assert_eq!(explicit_formula_rhs(0, 0), RepElem::trivial());
        assert_eq!(explicit_formula_rhs(1, 1), RepElem::irreducible(1, 1));
        assert_eq!(explicit_formula_rhs(3, 2), RepElem::irreducible(3, 2));
    }

    #[test]
    fn explicit_formula_identity() {
        for m in 0..=6u32 {
            for n in 0..=6u32 {
                assert_eq!(
                    explicit_formula_rhs(m, n),
                    RepElem::irreducible(m, n),
                    "explicit formula fails at ({m},{n})"
                );
            }
        }
    }

    /// Product of two irreducible classes, computed by expanding both
    /// factors into signed word sums and concatenating words.
    fn product(m1: u32, n1: u32, m2: u32, n2: u32) -> RepElem {
        let mut out = RepElem::zero();
        for (c1, a1, b1) in cabling_tuples(m1, n1) {
            for (c2, a2, b2) in cabling_tuples(m2, n2) {
                let mut w = vec![Sign::Plus; a1 as usize];
                w.extend(vec![Sign::Minus; b1 as usize]);
                w.extend(vec![Sign::Plus; a2 as usize]);
                w.extend(vec![Sign::Minus; b2 as usize]);
                out = out.add(&decompose_word(&w).scale(c1 * c2));
            }
        }
        out
    }

    /// The remaining relations of the simple Littlewood-Richardson rules,
    /// checked as identities between signed word sums.
    #[test]
    fn extra_tensor_relations() {
        // V(m,n) ⊕ (V(m−1,0) ⊗ V(0,n−1)) = V(m,0) ⊗ V(0,n)
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                let lhs = product(m, 0, 0, n);
                let rhs = RepElem::irreducible(m, n).add(&product(m - 1, 0, 0, n - 1));
                assert_eq!(lhs, rhs, "relation fails at ({m},{n})");
            }
        }
        // V(m,0) ⊕ (V(0,1) ⊗ V(m−2,0)) = V+ ⊗ V(m−1,0) ⊕ V(m−3,0), m ≥ 3
        for m in 3..=6u32 {
            let lhs = RepElem::irreducible(m, 0).add(&product(0, 1, m - 2, 0));
            let rhs = tensor_fundamental(&RepElem::irreducible(m - 1, 0), Sign::Plus)
                .add(&RepElem::irreducible(m - 3, 0));
            assert_eq!(lhs, rhs, "relation fails at m={m}");
        }
        // mirror: V(0,n) ⊕ (V(1,0) ⊗ V(0,n−2)) = V− ⊗ V(0,n−1) ⊕ V(0,n−3)
        for n in 3..=6u32 {
            let lhs = RepElem::irreducible(0, n).add(&product(1, 0, 0, n - 2));
            let rhs = tensor_fundamental(&RepElem::irreducible(0, n - 1), Sign::Minus)
                .add(&RepElem::irreducible(0, n - 3));
            assert_eq!(lhs, rhs, "relation fails at n={n}");
        }
    }

    #[test]
    fn render() {
        let x = RepElem::irreducible(3, 0)
            .add(&RepElem::irreducible(1, 1).scale(2))
            .add(&RepElem::trivial());
        assert_eq!(x.to_string(), "V(3,0) + 2*V(1,1) + V(0,0)");
    }
}
