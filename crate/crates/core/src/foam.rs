//! The algebraic shadow of the foam category: the rank-3 Frobenius algebra
//! `Z[X]/X³` with counit picking the `X²` coefficient, dotted sphere and
//! theta evaluations, closed dotted surfaces via surgery, and the scalars
//! extracted from the digon and torus composites.

/// Element `c0 + c1·X + c2·X²` of `Z[X]/X³`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct FrobElement(pub i64, pub i64, pub i64);

impl FrobElement {
    pub const ZERO: FrobElement = FrobElement(0, 0, 0);
    pub const ONE: FrobElement = FrobElement(1, 0, 0);
    pub const X: FrobElement = FrobElement(0, 1, 0);
    pub const X2: FrobElement = FrobElement(0, 0, 1);

    pub fn add(self, rhs: FrobElement) -> FrobElement {
        FrobElement(self.0 + rhs.0, self.1 + rhs.1, self.2 + rhs.2)
    }

    pub fn scale(self, c: i64) -> FrobElement {
        FrobElement(c * self.0, c * self.1, c * self.2)
    }

    /// Multiplication truncated at `X³ = 0`.
    pub fn mul(self, rhs: FrobElement) -> FrobElement {
        let FrobElement(a0, a1, a2) = self;
        let FrobElement(b0, b1, b2) = rhs;
        FrobElement(
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a1 * b1 + a2 * b0,
        )
    }

    pub fn pow(self, k: u32) -> FrobElement {
        let mut acc = FrobElement::ONE;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Counit: the dotted-sphere evaluation, 1 on `X²` and 0 otherwise.
pub fn counit(a: FrobElement) -> i64 {
    a.2
}

/// Comultiplication from the surgery relation (neck cutting):
/// `Δ(1) = 1⊗X² + X⊗X + X²⊗1`, extended by `Δ(x) = (x⊗1)·Δ(1)`.
pub fn comult(a: FrobElement) -> Vec<(FrobElement, FrobElement)> {
    let base = [
        (FrobElement::ONE, FrobElement::X2),
        (FrobElement::X, FrobElement::X),
        (FrobElement::X2, FrobElement::ONE),
    ];
    base.iter()
        .map(|(l, r)| (a.mul(*l), *r))
        .filter(|(l, _)| *l != FrobElement::ZERO)
        .collect()
}

/// The handle element `m ∘ Δ (1) = 3X²`.
pub fn handle() -> FrobElement {
    comult(FrobElement::ONE)
        .into_iter()
        .fold(FrobElement::ZERO, |acc, (l, r)| acc.add(l.mul(r)))
}

/// Closed genus-g surface with `dots` dots, evaluated by iterated surgery
/// down to dotted spheres: `ε(handle^g · X^dots)`.
pub fn closed_surface_eval(genus: u32, dots: u32) -> i64 {
    counit(handle().pow(genus).mul(FrobElement::X.pow(dots)))
}

/// Theta foam with `k`, `l`, `m` dots on its three facets.
pub fn theta_eval(k: u32, l: u32, m: u32) -> i64 {
    match (k, l, m) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Scalar of the digon create-then-kill composite: by the digon relation it
/// splits into two theta-shaped terms with complementary dot placements,
/// `+θ(0,1,2) − θ(0,2,1) = 2`.
pub fn digon_identity_scalar() -> i64 {
    theta_eval(0, 1, 2) - theta_eval(0, 2, 1)
}

/// Scalar of the tube (knotted torus) composite: a disjoint torus evaluates
/// by one surgery to 3.
pub fn tube_identity_scalar() -> i64 {
    closed_surface_eval(1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_table() {
        assert_eq!(closed_surface_eval(0, 2), 1);
        assert_eq!(closed_surface_eval(0, 0), 0);
        assert_eq!(closed_surface_eval(0, 1), 0);
        assert_eq!(closed_surface_eval(0, 3), 0); // X³ = 0
        assert_eq!(counit(FrobElement::X2), 1);
        assert_eq!(counit(FrobElement::ONE), 0);
        assert_eq!(counit(FrobElement::X), 0);
    }

    #[test]
    fn torus_and_higher_genus() {
        assert_eq!(closed_surface_eval(1, 0), 3);
        assert_eq!(closed_surface_eval(1, 1), 0);
        assert_eq!(closed_surface_eval(1, 2), 0);
        for dots in 0..4 {
            assert_eq!(closed_surface_eval(2, dots), 0); // (3X²)² = 0
            assert_eq!(closed_surface_eval(3, dots), 0);
        }
    }

    #[test]
    fn theta_table() {
        assert_eq!(theta_eval(0, 1, 2), 1);
        assert_eq!(theta_eval(1, 2, 0), 1);
        assert_eq!(theta_eval(2, 0, 1), 1);
        assert_eq!(theta_eval(0, 2, 1), -1);
        assert_eq!(theta_eval(2, 1, 0), -1);
        assert_eq!(theta_eval(1, 0, 2), -1);
        assert_eq!(theta_eval(1, 1, 1), 0);
        assert_eq!(theta_eval(0, 0, 2), 0);
        // total antisymmetry, nonzero only on {0,1,2}
        for k in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    assert_eq!(theta_eval(k, l, m), -theta_eval(l, k, m));
                    assert_eq!(theta_eval(k, l, m), -theta_eval(k, m, l));
                    let mut set = [k, l, m];
                    set.sort_unstable();
                    if set != [0, 1, 2] {
                        assert_eq!(theta_eval(k, l, m), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_axioms() {
        let basis = [FrobElement::ONE, FrobElement::X, FrobElement::X2];
        // (counit ⊗ id) ∘ comult = id
        for a in basis {
            let out = comult(a)
                .into_iter()
                .fold(FrobElement::ZERO, |acc, (l, r)| acc.add(r.scale(counit(l))));
            assert_eq!(out, a);
        }
        // associativity and commutativity of the multiplication
        for a in basis {
            for b in basis {
                assert_eq!(a.mul(b), b.mul(a));
                for c in basis {
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                }
            }
        }
        // Δ(X) keeps two terms: (X, X²) and (X², X); the X·X² leg dies
        assert_eq!(comult(FrobElement::X).len(), 2);
        // m ∘ Δ = multiplication by the handle
        for a in basis {
            let md = comult(a)
                .into_iter()
                .fold(FrobElement::ZERO, |acc, (l, r)| acc.add(l.mul(r)));
            assert_eq!(md, handle().mul(a));
        }
        assert_eq!(handle(), FrobElement(0, 0, 3));
    }

    #[test]
    fn comult_of_one_has_three_terms() {
        assert_eq!(comult(FrobElement::ONE).len(), 3);
    }

    #[test]
    fn extracted_scalars() {
        assert_eq!(digon_identity_scalar(), 2);
        assert_eq!(tube_identity_scalar(), 3);
    }

    #[test]
    fn mult_truncates() {
        assert_eq!(FrobElement::X.mul(FrobElement::X2), FrobElement::ZERO);
        assert_eq!(FrobElement::X.mul(FrobElement::X), FrobElement::X2);
    }
}
