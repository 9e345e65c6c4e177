//! Explicit matrix models of Uq(sl3)-modules over the exact field of
//! rational functions in `s = q^{1/2}`: the two fundamental modules with
//! their action tables, tensor products through the coproduct, the six
//! elementary intertwiners, and checkers for the defining relations and
//! equivariance.

use std::fmt;

use thiserror::Error;

use crate::linalg::SpMat;
use crate::ratfun::RatFun;
use crate::repring::Sign;

/// Generators of the quantum group.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Gen {
    K1,
    K1Inv,
    K2,
    K2Inv,
    E1,
    E2,
    F1,
    F2,
}

pub const GENS: [Gen; 8] = [
    Gen::K1,
    Gen::K1Inv,
    Gen::K2,
    Gen::K2Inv,
    Gen::E1,
    Gen::E2,
    Gen::F1,
    Gen::F2,
];

#[derive(Error, Debug)]
pub enum UqError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("relation violated: {0:?}")]
    Relations(Vec<String>),
    #[error("not equivariant for generator {0:?}")]
    NotEquivariant(Gen),
}

/// A finite dimensional module given by its eight generator matrices.
#[derive(Clone, Debug)]
pub struct UqModule {
    pub labels: Vec<String>,
    act: [SpMat<RatFun>; 8],
}

fn gen_index(g: Gen) -> usize {
    GENS.iter().position(|&h| h == g).unwrap()
}

impl UqModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn action(&self, g: Gen) -> &SpMat<RatFun> {
        &self.act[gen_index(g)]
    }

    /// The one dimensional module: `K` acts by 1, `E` and `F` by 0.
    pub fn trivial() -> UqModule {
        let id = SpMat::identity(1);
        let z = SpMat::zeros(1, 1);
        UqModule {
            labels: vec!["1".into()],
            act: [
                id.clone(),
                id.clone(),
                id.clone(),
                id,
                z.clone(),
                z.clone(),
                z.clone(),
                z,
            ],
        }
    }

    /// The three dimensional fundamental modules, with basis
    /// `(v_{−1}, v_0, v_1)` and entries exactly from the action tables.
    /// `K` acts by `q`-powers, i.e. `s^{±2}`.
    pub fn fundamental(sign: Sign) -> UqModule {
        let q = |k: i64| RatFun::q_pow(1, k);
        let diag = |v: [i64; 3]| {
            let mut m = SpMat::zeros(3, 3);
            for (i, k) in v.into_iter().enumerate() {
                m.set(i, i, q(k));
            }
            m
        };
        // single off-diagonal 1: basis index −1,0,1 ↦ 0,1,2
        let step = |from: usize, to: usize| {
            let mut m = SpMat::zeros(3, 3);
            m.set(to, from, RatFun::one());
            m
        };
        let (tag, k1, k2, e1, e2, f1, f2) = match sign {
            Sign::Plus => (
                "v+",
                diag([0, -1, 1]),
                diag([-1, 1, 0]),
                step(1, 2), // E1 v0 = v1
                step(0, 1), // E2 v-1 = v0
                step(2, 1), // F1 v1 = v0
                step(1, 0), // F2 v0 = v-1
            ),
            Sign::Minus => (
                "v-",
                diag([-1, 1, 0]),
                diag([0, -1, 1]),
                step(0, 1), // E1 v-1 = v0
                step(1, 2), // E2 v0 = v1
                step(1, 0), // F1 v0 = v-1
                step(2, 1), // F2 v1 = v0
            ),
        };
        let k1inv = inv_diag(&k1);
        let k2inv = inv_diag(&k2);
        UqModule {
            labels: (-1..=1).map(|w| format!("{tag}_{w}")).collect(),
            act: [k1, k1inv, k2, k2inv, e1, e2, f1, f2],
        }
    }

    /// Tensor product through the coproduct: `Δ(K) = K ⊗ K`,
    /// `Δ(E) = E ⊗ 1 + K^{−1} ⊗ E`, `Δ(F) = F ⊗ K + 1 ⊗ F`.
    ///
    /// The `K`-power placement is pinned by the elementary intertwiners:
    /// the cup, cap and antisymmetrizer matrices commute with exactly this
    /// comultiplication on `V± ⊗ V±`, which `check_morphism` enforces.
    pub fn tensor(&self, rhs: &UqModule) -> UqModule {
        let idl: SpMat<RatFun> = SpMat::identity(self.dim());
        let idr: SpMat<RatFun> = SpMat::identity(rhs.dim());
        let e = |g: Gen, ki: Gen, kinv: Gen| {
            let eg = self
                .action(g)
                .kron(&idr)
                .add(&self.action(kinv).kron(rhs.action(g)));
            let fg = self
                .action(fgen(g))
                .kron(rhs.action(ki))
                .add(&idl.kron(rhs.action(fgen(g))));
            (eg, fg)
        };
        let (e1, f1) = e(Gen::E1, Gen::K1, Gen::K1Inv);
        let (e2, f2) = e(Gen::E2, Gen::K2, Gen::K2Inv);
        let labels = self
            .labels
            .iter()
            .flat_map(|a| rhs.labels.iter().map(move |b| format!("{a}x{b}")))
            .collect();
        UqModule {
            labels,
            act: [
                self.action(Gen::K1).kron(rhs.action(Gen::K1)),
                self.action(Gen::K1Inv).kron(rhs.action(Gen::K1Inv)),
                self.action(Gen::K2).kron(rhs.action(Gen::K2)),
                self.action(Gen::K2Inv).kron(rhs.action(Gen::K2Inv)),
                e1,
                e2,
                f1,
                f2,
            ],
        }
    }

    /// Tensor product of a list, left to right; empty product is trivial.
    pub fn tensor_word(word: &[Sign]) -> UqModule {
        let mut acc = UqModule::trivial();
        let mut first = true;
        for &s in word {
            let f = UqModule::fundamental(s);
            acc = if first { f } else { acc.tensor(&f) };
            first = false;
        }
        acc
    }

    /// Check all defining relations; returns the violated ones by name.
    pub fn check_module(&self) -> Result<(), UqError> {
        let mut bad = Vec::new();
        let id: SpMat<RatFun> = SpMat::identity(self.dim());
        let k = |g| self.action(g);
        let q2 = RatFun::q_pow(1, 2);
        let qm2 = RatFun::q_pow(1, -2);
        let q1 = RatFun::q_pow(1, 1);
        let qm1 = RatFun::q_pow(1, -1);

        let mut check = |name: &str, lhs: &SpMat<RatFun>, rhs: &SpMat<RatFun>| {
            if lhs != rhs {
                bad.push(name.to_string());
            }
        };

        check("K1 K1^-1 = 1", &k(Gen::K1).mul(k(Gen::K1Inv)), &id);
        check("K2 K2^-1 = 1", &k(Gen::K2).mul(k(Gen::K2Inv)), &id);
        check(
            "K1 K2 = K2 K1",
            &k(Gen::K1).mul(k(Gen::K2)),
            &k(Gen::K2).mul(k(Gen::K1)),
        );

        // Cartan pairing: K_i E_i K_i^-1 = q^2 E_i, K_i E_j K_i^-1 = q^-1 E_j,
        // and the inverse powers on the F side.
        let pairs = [
            (Gen::K1, Gen::K1Inv, Gen::E1, Gen::F1, true),
            (Gen::K1, Gen::K1Inv, Gen::E2, Gen::F2, false),
            (Gen::K2, Gen::K2Inv, Gen::E2, Gen::F2, true),
            (Gen::K2, Gen::K2Inv, Gen::E1, Gen::F1, false),
        ];
        for (kg, kginv, eg, fg, same) in pairs {
            let (ce, cf) = if same { (&q2, &qm2) } else { (&qm1, &q1) };
            check(
                &format!("{kg:?} {eg:?} {kg:?}^-1 = q^{} {eg:?}", if same { 2 } else { -1 }),
                &k(kg).mul(k(eg)).mul(k(kginv)),
                &k(eg).scale(ce),
            );
            check(
                &format!("{kg:?} {fg:?} {kg:?}^-1 = q^{} {fg:?}", if same { -2 } else { 1 }),
                &k(kg).mul(k(fg)).mul(k(kginv)),
                &k(fg).scale(cf),
            );
        }

        // (q − q^-1)(E_i F_i − F_i E_i) = K_i − K_i^-1
        let qdiff = &q1 - &qm1;
        for (e, f, kk, kinv) in [
            (Gen::E1, Gen::F1, Gen::K1, Gen::K1Inv),
            (Gen::E2, Gen::F2, Gen::K2, Gen::K2Inv),
        ] {
            let comm = k(e).mul(k(f)).add(&k(f).mul(k(e)).neg());
            check(
                &format!("(q-q^-1)({e:?}{f:?} - {f:?}{e:?}) = {kk:?} - {kk:?}^-1"),
                &comm.scale(&qdiff),
                &k(kk).add(&k(kinv).neg()),
            );
        }

        // E_i F_j = F_j E_i for i ≠ j
        for (e, f) in [(Gen::E1, Gen::F2), (Gen::E2, Gen::F1)] {
            check(
                &format!("{e:?} {f:?} = {f:?} {e:?}"),
                &k(e).mul(k(f)),
                &k(f).mul(k(e)),
            );
        }

        // Serre relations: X_i² X_j − [2] X_i X_j X_i + X_j X_i² = 0
        let two = &q1 + &qm1;
        for (a, b) in [
            (Gen::E1, Gen::E2),
            (Gen::E2, Gen::E1),
            (Gen::F1, Gen::F2),
            (Gen::F2, Gen::F1),
        ] {
            let aa = k(a).mul(k(a));
            let lhs = aa
                .mul(k(b))
                .add(&k(a).mul(k(b)).mul(k(a)).scale(&two).neg())
                .add(&k(b).mul(&aa));
            check(
                &format!("Serre {a:?}{a:?}{b:?}"),
                &lhs,
                &SpMat::zeros(self.dim(), self.dim()),
            );
        }

        if bad.is_empty() {
            Ok(())
        } else {
            Err(UqError::Relations(bad))
        }
    }

    /// Joint `(K1, K2)`-eigenspace dimensions, keyed by the integer weight
    /// `(a, b)` with eigenvalues `(q^a, q^b)`.  Only meaningful for modules
    /// whose `K`-actions are diagonal `q`-power matrices, which covers all
    /// tensor words of fundamentals.
    pub fn weight_space_dims(&self) -> std::collections::BTreeMap<(i64, i64), usize> {
        let mut out = std::collections::BTreeMap::new();
        for i in 0..self.dim() {
            let a = qpower_of(&self.action(Gen::K1).get(i, i));
            let b = qpower_of(&self.action(Gen::K2).get(i, i));
            *out.entry((a, b)).or_insert(0) += 1;
        }
        out
    }
}

fn qpower_of(r: &RatFun) -> i64 {
    for k in -40..=40 {
        if *r == RatFun::q_pow(1, k) {
            return k;
        }
    }
    panic!("not a q-power: {r}");
}

fn fgen(e: Gen) -> Gen {
    match e {
        Gen::E1 => Gen::F1,
        Gen::E2 => Gen::F2,
        _ => unreachable!(),
    }
}

fn inv_diag(m: &SpMat<RatFun>) -> SpMat<RatFun> {
    let n = m.rows;
    let mut out = SpMat::zeros(n, n);
    for i in 0..n {
        let v = m.get(i, i);
        out.set(i, i, v.inv().expect("diagonal entry must be invertible"));
    }
    out
}

/// A linear map between modules, with its matrix over `Q(s)`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: UqModule,
    pub target: UqModule,
    pub matrix: SpMat<RatFun>,
}

/// The six elementary intertwiners.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Elementary {
    /// `b_{−+}: V(0,0) → V− ⊗ V+`
    BMinusPlus,
    /// `b_{+−}: V(0,0) → V+ ⊗ V−`
    BPlusMinus,
    /// `d_{−+}: V− ⊗ V+ → V(0,0)`
    DMinusPlus,
    /// `d_{+−}: V+ ⊗ V− → V(0,0)`
    DPlusMinus,
    /// `h^−_{++}: V+ ⊗ V+ → V−`
    HPlusPlus,
    /// `h^+_{−−}: V− ⊗ V− → V+`
    HMinusMinus,
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Elementary::BMinusPlus => "b-+",
            Elementary::BPlusMinus => "b+-",
            Elementary::DMinusPlus => "d-+",
            Elementary::DPlusMinus => "d+-",
            Elementary::HPlusPlus => "h-++",
            Elementary::HMinusMinus => "h+--",
        };
        write!(f, "{s}")
    }
}

/// Matrices of the elementary morphisms, on the bases `(v_{−1}, v_0, v_1)`
/// with pair index `(i, j) ↦ 3i + j`.
pub fn elementary_morphism(kind: Elementary) -> ModuleMap {
    use Elementary::*;
    let vp = || UqModule::fundamental(Sign::Plus);
    let vm = || UqModule::fundamental(Sign::Minus);
    let triv = UqModule::trivial;
    let idx = |i: i64, j: i64| ((i + 1) * 3 + (j + 1)) as usize;
    // cup/cap coefficients: (−q^{−1}, 1, −q) on (∓1, 0, ±1) pairings
    let cup = [
        (-1i64, 1i64, RatFun::q_pow(-1, -1)),
        (0, 0, RatFun::one()),
        (1, -1, RatFun::q_pow(-1, 1)),
    ];
    // h coefficients: w ↦ q^{−1/2} on (lower, higher), −q^{1/2} on (higher, lower)
    let h = [
        (-1i64, 0i64, -1i64, RatFun::s_pow(1, -1)),
        (0, -1, -1, RatFun::s_pow(-1, 1)),
        (-1, 1, 0, RatFun::s_pow(1, -1)),
        (1, -1, 0, RatFun::s_pow(-1, 1)),
        (0, 1, 1, RatFun::s_pow(1, -1)),
        (1, 0, 1, RatFun::s_pow(-1, 1)),
    ];
    let (source, target, matrix) = match kind {
        BMinusPlus | BPlusMinus => {
            let mut m = SpMat::zeros(9, 1);
            for (i, j, c) in &cup {
                m.set(idx(*i, *j), 0, c.clone());
            }
            let target = match kind {
                BMinusPlus => vm().tensor(&vp()),
                _ => vp().tensor(&vm()),
            };
            (triv(), target, m)
        }
        DMinusPlus | DPlusMinus => {
            let mut m = SpMat::zeros(1, 9);
            for (i, j, c) in &cup {
                m.set(0, idx(*i, *j), c.clone());
            }
            let source = match kind {
                DMinusPlus => vm().tensor(&vp()),
                _ => vp().tensor(&vm()),
            };
            (source, triv(), m)
        }
        HPlusPlus | HMinusMinus => {
            let mut m = SpMat::zeros(3, 9);
            for (i, j, w, c) in &h {
                m.set((*w + 1) as usize, idx(*i, *j), c.clone());
            }
            match kind {
                HPlusPlus => (vp().tensor(&vp()), vm(), m),
                _ => (vm().tensor(&vm()), vp(), m),
            }
        }
    };
    ModuleMap {
        source,
        target,
        matrix,
    }
}

impl ModuleMap {
    pub fn identity(m: &UqModule) -> ModuleMap {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: SpMat::identity(m.dim()),
        }
    }

    /// `f ∘ g` (apply `g` first).
    pub fn compose(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(
            self.source.dim(),
            g.target.dim(),
            "composition dimension mismatch"
        );
        ModuleMap {
            source: g.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&g.matrix),
        }
    }

    /// `id_L ⊗ f ⊗ id_R` where `L` and `R` are tensor products of the given
    /// module lists.
    pub fn pad(&self, left: &[&UqModule], right: &[&UqModule]) -> ModuleMap {
        let mut src = self.matrix.clone();
        let mut left_mod: Option<UqModule> = None;
        for m in left.iter().rev() {
            left_mod = Some(match left_mod {
                None => (*m).clone(),
                Some(acc) => (*m).tensor(&acc),
            });
        }
        let mut right_mod: Option<UqModule> = None;
        for m in right {
            right_mod = Some(match right_mod {
                None => (*m).clone(),
                Some(acc) => acc.tensor(m),
            });
        }
        if let Some(l) = &left_mod {
            let idl: SpMat<RatFun> = SpMat::identity(l.dim());
            src = idl.kron(&src);
        }
        if let Some(r) = &right_mod {
            let idr: SpMat<RatFun> = SpMat::identity(r.dim());
            src = src.kron(&idr);
        }
        let glue = |mid: &UqModule| {
            let mut out = mid.clone();
            if let Some(l) = &left_mod {
                out = l.tensor(&out);
            }
            if let Some(r) = &right_mod {
                out = out.tensor(r);
            }
            out
        };
        ModuleMap {
            source: glue(&self.source),
            target: glue(&self.target),
            matrix: src,
        }
    }

    /// Equivariance: `f ρ_src(g) = ρ_tgt(g) f` for all eight generators.
    pub fn check_morphism(&self) -> Result<(), UqError> {
        if self.matrix.rows != self.target.dim() || self.matrix.ncols() != self.source.dim() {
            return Err(UqError::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                self.matrix.rows,
                self.matrix.ncols(),
                self.target.dim(),
                self.source.dim()
            )));
        }
        for g in GENS {
            let lhs = self.matrix.mul(self.source.action(g));
            let rhs = self.target.action(g).mul(&self.matrix);
            if lhs != rhs {
                return Err(UqError::NotEquivariant(g));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring;

    #[test]
    fn fundamentals_pass_relations() {
        UqModule::fundamental(Sign::Plus).check_module().unwrap();
        UqModule::fundamental(Sign::Minus).check_module().unwrap();
        UqModule::trivial().check_module().unwrap();
    }

    #[test]
    fn fundamental_table_entries() {
        let vp = UqModule::fundamental(Sign::Plus);
        // E1 v0 = v1, E1 v±1 = 0
        assert_eq!(vp.action(Gen::E1).get(2, 1), RatFun::one());
        assert!(vp.action(Gen::E1).col(0).is_empty());
        assert!(vp.action(Gen::E1).col(2).is_empty());
        let vm = UqModule::fundamental(Sign::Minus);
        // F2 v1 = v0
        assert_eq!(vm.action(Gen::F2).get(1, 2), RatFun::one());
        // weight spaces are all one dimensional
        for m in [&vp, &vm] {
            assert!(m.weight_space_dims().values().all(|&d| d == 1));
            assert_eq!(m.weight_space_dims().len(), 3);
        }
    }

    #[test]
    fn zeroed_generator_fails() {
        let mut vp = UqModule::fundamental(Sign::Plus);
        vp.act[4] = SpMat::zeros(3, 3); // kill E1
        let err = vp.check_module().unwrap_err();
        match err {
            UqError::Relations(names) => {
                assert!(names.iter().any(|n| n.contains("E1F1")));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tensor_products_pass_relations() {
        use repring::Sign::*;
        for w in [
            vec![Plus, Plus],
            vec![Plus, Minus],
            vec![Minus, Plus, Plus],
            vec![Minus, Minus, Plus, Minus],
        ] {
            UqModule::tensor_word(&w).check_module().unwrap();
        }
    }

    #[test]
    fn tensor_with_trivial_is_identity_like() {
        let vp = UqModule::fundamental(Sign::Plus);
        let t = UqModule::trivial().tensor(&vp);
        for g in GENS {
            assert_eq!(t.action(g), vp.action(g));
        }
        let t2 = vp.tensor(&UqModule::trivial());
        for g in GENS {
            assert_eq!(t2.action(g), vp.action(g));
        }
    }

    #[test]
    fn tensor_associativity() {
        let a = UqModule::fundamental(Sign::Plus);
        let b = UqModule::fundamental(Sign::Minus);
        let c = UqModule::fundamental(Sign::Plus);
        let left = a.tensor(&b).tensor(&c);
        let right = a.tensor(&b.tensor(&c));
        for g in GENS {
            assert_eq!(left.action(g), right.action(g));
        }
    }

    #[test]
    fn weight_zero_subspace_of_vp_vm() {
        let m = UqModule::fundamental(Sign::Plus).tensor(&UqModule::fundamental(Sign::Minus));
        assert_eq!(m.dim(), 9);
        assert_eq!(m.weight_space_dims().get(&(0, 0)), Some(&3));
    }

    #[test]
    fn elementary_are_morphisms() {
        use Elementary::*;
        for kind in [BMinusPlus, BPlusMinus, DMinusPlus, DPlusMinus, HPlusPlus, HMinusMinus] {
            let f = elementary_morphism(kind);
            f.check_morphism()
                .unwrap_or_else(|e| panic!("{kind} is not equivariant: {e}"));
        }
    }

    #[test]
    fn elementary_entries() {
        let d = elementary_morphism(Elementary::DPlusMinus);
        // d_{+-}(v0 ⊗ v0) = 1
        assert_eq!(d.matrix.get(0, 4), RatFun::one());
        let b = elementary_morphism(Elementary::BMinusPlus);
        assert_eq!(b.matrix.get(2, 0), RatFun::q_pow(-1, -1)); // −q^{-1} v_{-1}⊗v_1
        assert_eq!(b.matrix.get(4, 0), RatFun::one());
        assert_eq!(b.matrix.get(6, 0), RatFun::q_pow(-1, 1)); // −q v_1⊗v_{-1}
        let h = elementary_morphism(Elementary::HPlusPlus);
        // h(v_{-1} ⊗ v_0) = q^{-1/2} v_{-1}; pair (−1,0) has index 1
        assert_eq!(h.matrix.get(0, 1), RatFun::s_pow(1, -1));
        // h(v_1 ⊗ v_0) = −q^{1/2} v_1; pair (1,0) has index 7
        assert_eq!(h.matrix.get(2, 7), RatFun::s_pow(-1, 1));
    }

    #[test]
    fn random_matrix_fails_equivariance() {
        let vp = UqModule::fundamental(Sign::Plus);
        let mut m = SpMat::zeros(3, 3);
        m.set(0, 0, RatFun::one());
        m.set(1, 2, RatFun::s_pow(3, 1));
        let f = ModuleMap {
            source: vp.clone(),
            target: vp,
            matrix: m,
        };
        assert!(f.check_morphism().is_err());
    }

    #[test]
    fn zigzag_identities() {
        use Elementary::*;
        let vp = UqModule::fundamental(Sign::Plus);
        let vm = UqModule::fundamental(Sign::Minus);
        let id_p = ModuleMap::identity(&vp);
        let id_m = ModuleMap::identity(&vm);

        // (id_{V+} ⊗ d_{−+}) ∘ (b_{+−} ⊗ id_{V+}) = id_{V+}
        let lhs = elementary_morphism(DMinusPlus)
            .pad(&[&vp], &[])
            .compose(&elementary_morphism(BPlusMinus).pad(&[], &[&vp]));
        assert_eq!(lhs.matrix, id_p.matrix);
        // (d_{−+} ⊗ id_{V+}) ∘ (id_{V+} ⊗ b_{+−}) = id_{V+}
        let lhs = elementary_morphism(DMinusPlus)
            .pad(&[], &[&vp])
            .compose(&elementary_morphism(BPlusMinus).pad(&[&vp], &[]));
        assert_eq!(lhs.matrix, id_p.matrix);
        // (id_{V−} ⊗ d_{+−}) ∘ (b_{−+} ⊗ id_{V−}) = id_{V−}
        let lhs = elementary_morphism(DPlusMinus)
            .pad(&[&vm], &[])
            .compose(&elementary_morphism(BMinusPlus).pad(&[], &[&vm]));
        assert_eq!(lhs.matrix, id_m.matrix);
        // (d_{+−} ⊗ id_{V−}) ∘ (id_{V−} ⊗ b_{−+}) = id_{V−}
        let lhs = elementary_morphism(DPlusMinus)
            .pad(&[], &[&vm])
            .compose(&elementary_morphism(BMinusPlus).pad(&[&vm], &[]));
        assert_eq!(lhs.matrix, id_m.matrix);
    }

    #[test]
    fn h_compatibility_identities() {
        use Elementary::*;
        let vp = UqModule::fundamental(Sign::Plus);
        let vm = UqModule::fundamental(Sign::Minus);
        // d_{+−} ∘ (id ⊗ h^−_{++}) = d_{−+} ∘ (h^−_{++} ⊗ id)
        let lhs = elementary_morphism(DPlusMinus)
            .compose(&elementary_morphism(HPlusPlus).pad(&[&vp], &[]));
        let rhs = elementary_morphism(DMinusPlus)
            .compose(&elementary_morphism(HPlusPlus).pad(&[], &[&vp]));
        assert_eq!(lhs.matrix, rhs.matrix);
        // d_{−+} ∘ (id ⊗ h^+_{−−}) = d_{+−} ∘ (h^+_{−−} ⊗ id)
        let lhs = elementary_morphism(DMinusPlus)
            .compose(&elementary_morphism(HMinusMinus).pad(&[&vm], &[]));
        let rhs = elementary_morphism(DPlusMinus)
            .compose(&elementary_morphism(HMinusMinus).pad(&[], &[&vm]));
        assert_eq!(lhs.matrix, rhs.matrix);
    }

    #[test]
    fn pad_by_nothing_is_identity() {
        let f = elementary_morphism(Elementary::HPlusPlus);
        let g = f.pad(&[], &[]);
        assert_eq!(f.matrix, g.matrix);
    }

    #[test]
    fn weight_dims_match_rep_ring_at_q1() {
        use repring::Sign::*;
        // total dimension check through the Grothendieck ring
        for w in [vec![Plus, Minus], vec![Plus, Plus, Minus], vec![Minus, Minus, Plus, Plus]] {
            let m = UqModule::tensor_word(&w);
            let decomp = repring::decompose_word(&w);
            assert_eq!(m.dim() as i64, repring::dim(&decomp));
            // weight multiset agrees with the sum of irreducible weight diagrams
            let mut predicted = std::collections::BTreeMap::new();
            for (&(a, b), &c) in decomp.iter() {
                for (wt, d) in weight_diagram(a, b) {
                    *predicted.entry(wt).or_insert(0usize) += d * c as usize;
                }
            }
            assert_eq!(m.weight_space_dims(), predicted);
        }
    }

    /// Formal character of V(m,n) by the same fundamental-tensoring
    /// recursion used for quantum dimensions, as a weight multiset.
    fn weight_diagram(m: u32, n: u32) -> std::collections::BTreeMap<(i64, i64), usize> {
        type W = std::collections::BTreeMap<(i64, i64), i64>;
        fn add(acc: &mut W, other: &W, c: i64) {
            for (k, v) in other {
                let e = acc.entry(*k).or_insert(0);
                *e += c * v;
                if *e == 0 {
                    acc.remove(k);
                }
            }
        }
        fn mul_fund(x: &W, plus: bool) -> W {
            let fund: [(i64, i64); 3] = if plus {
                [(0, -1), (-1, 1), (1, 0)]
            } else {
                [(-1, 0), (1, -1), (0, 1)]
            };
            let mut out = W::new();
            for ((a, b), c) in x {
                for (da, db) in fund {
                    let e = out.entry((a + da, b + db)).or_insert(0);
                    *e += c;
                }
            }
            out
        }
        fn rec(m: i64, n: i64, memo: &mut std::collections::BTreeMap<(i64, i64), W>) -> W {
            if m < 0 || n < 0 {
                return W::new();
            }
            if let Some(w) = memo.get(&(m, n)) {
                return w.clone();
            }
            let w = match (m, n) {
                (0, 0) => [((0i64, 0i64), 1i64)].into_iter().collect(),
                _ => {
                    if m >= 1 {
                        let mut acc = mul_fund(&rec(m - 1, n, memo), true);
                        add(&mut acc, &rec(m - 2, n + 1, memo), -1);
                        add(&mut acc, &rec(m - 1, n - 1, memo), -1);
                        acc
                    } else {
                        let mut acc = mul_fund(&rec(m, n - 1, memo), false);
                        add(&mut acc, &rec(m + 1, n - 2, memo), -1);
                        add(&mut acc, &rec(m - 1, n - 1, memo), -1);
                        acc
                    }
                }
            };
            memo.insert((m, n), w.clone());
            w
        }
        let mut memo = std::collections::BTreeMap::new();
        rec(m as i64, n as i64, &mut memo)
            .into_iter()
            .map(|(k, v)| {
                assert!(v >= 0);
                (k, v as usize)
            })
            .filter(|(_, v)| *v > 0)
            .collect()
    }
}
