//! Cubical sets inside the n-dimensional cube, their F2 boundary operator
//! and homology, and the sign-assignment solver that twists a commuting
//! pre-complex into an anticommuting one.
//!
//! A face of the cube is a map `{1..n} → {0, *, 1}`; its dimension is the
//! number of stars.  Faces are ordered pointwise by `0 < * < 1`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// A face, packed as disjoint bitmasks of star and one coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Face {
    pub stars: u32,
    pub ones: u32,
}

impl Face {
    pub fn vertex(ones: u32) -> Face {
        Face { stars: 0, ones }
    }

    pub fn new(stars: u32, ones: u32) -> Face {
        assert_eq!(stars & ones, 0, "star and one coordinates must be disjoint");
        Face { stars, ones }
    }

    pub fn dim(&self) -> u32 {
        self.stars.count_ones()
    }

    pub fn is_vertex(&self) -> bool {
        self.stars == 0
    }

    /// Pointwise order with `0 < * < 1`.
    pub fn leq(&self, other: &Face) -> bool {
        // in each coordinate: self ∈ {0,*,1} ≤ other
        // 1 requires other = 1; * requires other ∈ {*,1}
        (self.ones & !other.ones) == 0 && (self.stars & !(other.stars | other.ones)) == 0
    }

    /// The `2·dim` boundary faces (each star set to 0 and to 1).
    pub fn boundary(&self) -> Vec<Face> {
        let mut out = Vec::with_capacity(2 * self.dim() as usize);
        let mut s = self.stars;
        while s != 0 {
            let bit = s & s.wrapping_neg();
            s &= s - 1;
            out.push(Face {
                stars: self.stars & !bit,
                ones: self.ones,
            });
            out.push(Face {
                stars: self.stars & !bit,
                ones: self.ones | bit,
            });
        }
        out
    }

    /// For an edge (dim 1): its two endpoint vertices `(at 0, at 1)`.
    pub fn endpoints(&self) -> (Face, Face) {
        assert_eq!(self.dim(), 1, "endpoints only for edges");
        (
            Face::vertex(self.ones),
            Face::vertex(self.ones | self.stars),
        )
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CubeError {
    #[error("cubical set is not consistent")]
    Inconsistent,
    #[error("cubical set is not strong-inductive")]
    NotStrongInductive,
    #[error("gamma is not a pre-complex cocycle (∂*γ ≠ 0)")]
    NotCocycle,
    #[error("no solution (internal error)")]
    NoSolution,
}

/// A set of faces of the n-cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalSet {
    pub n: u32,
    pub faces: BTreeSet<Face>,
}

impl CubicalSet {
    pub fn new(n: u32, faces: impl IntoIterator<Item = Face>) -> CubicalSet {
        CubicalSet {
            n,
            faces: faces.into_iter().collect(),
        }
    }

    /// The full cube `B_n`.
    pub fn full(n: u32) -> CubicalSet {
        let mut faces = BTreeSet::new();
        // every disjoint (stars, ones) pair
        for stars in 0u32..(1 << n) {
            let rest = !stars & ((1 << n) - 1);
            // iterate subsets of rest
            let mut ones = rest;
            loop {
                faces.insert(Face { stars, ones });
                if ones == 0 {
                    break;
                }
                ones = (ones - 1) & rest;
            }
        }
        CubicalSet { n, faces }
    }

    /// Downward closure of a vertex set: the union of the subcubes below
    /// each vertex.  Always strong-inductive.
    pub fn from_vertices(n: u32, vertices: impl IntoIterator<Item = u32>) -> CubicalSet {
        let mut faces = BTreeSet::new();
        for v in vertices {
            // faces below the vertex: coordinates with v = 1 range over
            // {0,*,1}, coordinates with v = 0 stay 0
            let mut stars = v;
            loop {
                let rest = v & !stars;
                let mut ones = rest;
                loop {
                    faces.insert(Face { stars, ones });
                    if ones == 0 {
                        break;
                    }
                    ones = (ones - 1) & rest;
                }
                if stars == 0 {
                    break;
                }
                stars = (stars - 1) & v;
            }
        }
        CubicalSet { n, faces }
    }

    pub fn faces_of_dim(&self, d: u32) -> Vec<Face> {
        self.faces.iter().filter(|f| f.dim() == d).copied().collect()
    }

    pub fn edges(&self) -> Vec<Face> {
        self.faces_of_dim(1)
    }

    pub fn squares(&self) -> Vec<Face> {
        self.faces_of_dim(2)
    }

    pub fn max_dim(&self) -> u32 {
        self.faces.iter().map(|f| f.dim()).max().unwrap_or(0)
    }

    /// `f ∈ S` (dim > 0) iff all faces of `∂f` are in `S`, checked in both
    /// directions over the ambient cube.
    pub fn is_consistent(&self) -> bool {
        // direction 1: boundaries of members stay inside
        for f in &self.faces {
            if f.dim() > 0 && !f.boundary().iter().all(|g| self.faces.contains(g)) {
                return false;
            }
        }
        // direction 2: a face of B_n whose whole boundary lies in S is in S
        let all = CubicalSet::full(self.n);
        for f in &all.faces {
            if f.dim() > 0
                && !self.faces.contains(f)
                && f.boundary().iter().all(|g| self.faces.contains(g))
            {
                return false;
            }
        }
        true
    }

    pub fn is_inductive(&self) -> bool {
        let all = CubicalSet::full(self.n);
        for f in &self.faces {
            for g in &all.faces {
                if g.leq(f) && !self.faces.contains(g) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_strong_inductive(&self) -> bool {
        if !self.is_inductive() {
            return false;
        }
        // maximal faces must all be vertices
        for f in &self.faces {
            let maximal = !self.faces.iter().any(|g| g != f && f.leq(g));
            if maximal && !f.is_vertex() {
                return false;
            }
        }
        true
    }

    /// F2 Betti numbers by dimension, for a consistent set.
    pub fn homology_f2(&self) -> Result<Vec<usize>, CubeError> {
        if !self.is_consistent() {
            return Err(CubeError::Inconsistent);
        }
        let maxd = self.max_dim();
        let mut betti = Vec::new();
        let mut ranks = vec![0usize; (maxd + 2) as usize]; // rank of ∂_d
        let mut dims = vec![0usize; (maxd + 1) as usize];
        dims[0] = self.faces_of_dim(0).len();
        for d in 1..=maxd {
            let rows = self.faces_of_dim(d - 1);
            let cols = self.faces_of_dim(d);
            dims[d as usize] = cols.len();
            let row_index: BTreeMap<Face, usize> =
                rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            let mut m = F2Matrix::zeros(rows.len(), cols.len());
            for (j, f) in cols.iter().enumerate() {
                for g in f.boundary() {
                    m.flip(row_index[&g], j);
                }
            }
            ranks[d as usize] = m.rank();
        }
        for d in 0..=maxd {
            let d = d as usize;
            let kernel = dims[d] - ranks[d];
            let image_above = ranks[d + 1];
            betti.push(kernel - image_above);
        }
        Ok(betti)
    }
}

/// A function from the edges of a cubical set to F2.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignAssignment {
    pub values: BTreeMap<Face, bool>,
}

impl SignAssignment {
    pub fn get(&self, edge: &Face) -> bool {
        *self.values.get(edge).unwrap_or(&false)
    }

    /// `∂*δ` evaluated on a square: the F2 sum of the four bounding edges.
    pub fn coboundary_on(&self, square: &Face) -> bool {
        square
            .boundary()
            .iter()
            .fold(false, |acc, e| acc ^ self.get(e))
    }
}

/// A vertex potential, `κ: vertices → F2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexPotential {
    pub values: BTreeMap<Face, bool>,
}

impl VertexPotential {
    pub fn get(&self, v: &Face) -> bool {
        *self.values.get(v).unwrap_or(&false)
    }

    pub fn coboundary_on(&self, edge: &Face) -> bool {
        let (a, b) = edge.endpoints();
        self.get(&a) ^ self.get(&b)
    }
}

/// Solve `∂*δ = γ` on a strong-inductive set; `γ` gives an F2 value per
/// square.  Returns the lexicographically least solution under the sorted
/// edge order.  Fails when `γ` is not a cocycle (checked on every cube of
/// `S`: the six bounding squares must sum to 0).
pub fn solve_sign_assignment(
    s: &CubicalSet,
    gamma: &dyn Fn(&Face) -> bool,
) -> Result<SignAssignment, CubeError> {
    if !s.is_strong_inductive() {
        return Err(CubeError::NotStrongInductive);
    }
    // pre-complex condition: ∂*γ = 0 on every 3-face
    for cube in s.faces_of_dim(3) {
        let total = cube
            .boundary()
            .iter()
            .fold(false, |acc, sq| acc ^ gamma(sq));
        if total {
            return Err(CubeError::NotCocycle);
        }
    }
    let edges = s.edges();
    let squares = s.squares();
    let edge_index: BTreeMap<Face, usize> =
        edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut m = F2Matrix::zeros(squares.len(), edges.len() + 1);
    for (r, sq) in squares.iter().enumerate() {
        for e in sq.boundary() {
            m.flip(r, edge_index[&e]);
        }
        if gamma(sq) {
            m.flip(r, edges.len());
        }
    }
    let sol = m
        .solve_lex_min(edges.len())
        .ok_or(CubeError::NoSolution)?;
    let values = edges
        .iter()
        .zip(&sol)
        .filter(|(_, &v)| v)
        .map(|(e, _)| (*e, true))
        .collect();
    let delta = SignAssignment { values };
    debug_assert!(squares.iter().all(|sq| delta.coboundary_on(sq) == gamma(sq)));
    Ok(delta)
}

/// Given two assignments with equal coboundary, find a vertex potential κ
/// with `∂*κ = δ1 + δ2`.
pub fn compare_assignments(
    s: &CubicalSet,
    d1: &SignAssignment,
    d2: &SignAssignment,
) -> Result<VertexPotential, CubeError> {
    for sq in s.squares() {
        if d1.coboundary_on(&sq) != d2.coboundary_on(&sq) {
            return Err(CubeError::NotCocycle);
        }
    }
    // BFS over the vertex graph, fixing the least vertex of each component to 0
    let vertices = s.faces_of_dim(0);
    let edges = s.edges();
    let mut adj: BTreeMap<Face, Vec<(Face, bool)>> = BTreeMap::new();
    for e in &edges {
        let (a, b) = e.endpoints();
        let val = d1.get(e) ^ d2.get(e);
        adj.entry(a).or_default().push((b, val));
        adj.entry(b).or_default().push((a, val));
    }
    let mut values: BTreeMap<Face, bool> = BTreeMap::new();
    for v in &vertices {
        if values.contains_key(v) {
            continue;
        }
        values.insert(*v, false);
        let mut queue = std::collections::VecDeque::from([*v]);
        while let Some(u) = queue.pop_front() {
            let ku = values[&u];
            for (w, val) in adj.get(&u).cloned().unwrap_or_default() {
                let kw = ku ^ val;
                match values.get(&w) {
                    None => {
                        values.insert(w, kw);
                        queue.push_back(w);
                    }
                    Some(&prev) => {
                        if prev != kw {
                            return Err(CubeError::NoSolution);
                        }
                    }
                }
            }
        }
    }
    let kappa = VertexPotential {
        values: values.into_iter().filter(|(_, v)| *v).collect(),
    };
    Ok(kappa)
}

/// The standard sign twist on the full cube under a coordinate order:
/// the edge at coordinate `x` from vertex `v` gets `#{y < x : v(y) = 1}`
/// mod 2.  Its coboundary is 1 on every square.
pub fn standard_cube_signs(n: u32) -> SignAssignment {
    let full = CubicalSet::full(n);
    let mut values = BTreeMap::new();
    for e in full.edges() {
        let x = e.stars.trailing_zeros();
        let below = e.ones & ((1u32 << x) - 1);
        if below.count_ones() % 2 == 1 {
            values.insert(e, true);
        }
    }
    SignAssignment { values }
}

/// Image of a partition graph in the cube `B_{m+n−1}`: a partition maps to
/// the vertex whose coordinate `i` is 1 iff dots `i` and `i+1` share a
/// block; the cubical set is the downward closure of the image.
pub fn graph_to_cube(graph: &crate::partitions::PartitionGraph) -> CubicalSet {
    let total = graph.m + graph.n;
    let n = total.saturating_sub(1);
    CubicalSet::from_vertices(
        n,
        graph.vertices.iter().map(|p| p.merge_mask()),
    )
}

/// Dense F2 matrix with u64-packed rows.
#[derive(Clone, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> F2Matrix {
        let words = cols.div_ceil(64);
        F2Matrix {
            rows,
            cols,
            data: vec![vec![0; words]; rows],
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r][c / 64] ^= 1u64 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r][c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize(m.cols).len()
    }

    /// Row reduce using only the first `ncols` columns as pivot candidates;
    /// returns pivot columns.
    fn echelonize(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.data.swap(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    let (head, tail) = self.data.split_at_mut(std::cmp::max(i, r));
                    let (src, dst) = if i < r {
                        (&tail[0], &mut head[i])
                    } else {
                        (&head[r], &mut tail[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Solve `A x = b` where the last column of `self` is `b`; returns the
    /// lexicographically least solution over the variable order, or `None`
    /// if inconsistent.  `nvars` is the number of variable columns.
    pub fn solve_lex_min(&self, nvars: usize) -> Option<Vec<bool>> {
        // feasibility of a partially-pinned system, by rank comparison
        let words = self.cols.div_ceil(64);
        let feasible = |pins: &[(usize, bool)]| -> Option<()> {
            let mut m = self.clone();
            for &(var, val) in pins {
                // add the row "x_var = val"
                let mut row = vec![0u64; words];
                row[var / 64] |= 1 << (var % 64);
                if val {
                    row[nvars / 64] |= 1 << (nvars % 64);
                }
                m.data.push(row);
                m.rows += 1;
            }
            let pivots = m.echelonize(nvars);
            // inconsistent iff some row is (0…0 | 1)
            let _ = pivots;
            for r in 0..m.rows {
                let lhs_zero = (0..nvars).all(|c| !m.get(r, c));
                if lhs_zero && m.get(r, nvars) {
                    return None;
                }
            }
            Some(())
        };
        feasible(&[])?;
        let mut pins: Vec<(usize, bool)> = Vec::new();
        for v in 0..nvars {
            pins.push((v, false));
            if feasible(&pins).is_none() {
                pins.last_mut().unwrap().1 = true;
            }
        }
        Some(pins.into_iter().map(|(_, val)| val).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn boundary_counts() {
        let v = Face::vertex(0b101);
        assert!(v.boundary().is_empty());
        let e = Face::new(0b010, 0b001);
        assert_eq!(e.boundary().len(), 2);
        let sq = Face::new(0b011, 0b100);
        assert_eq!(sq.boundary().len(), 4);
        // ∂² = 0 over F2 for every face of B_4
        for f in CubicalSet::full(4).faces {
            let mut count: BTreeMap<Face, usize> = BTreeMap::new();
            for g in f.boundary() {
                for h in g.boundary() {
                    *count.entry(h).or_insert(0) += 1;
                }
            }
            assert!(count.values().all(|c| c % 2 == 0));
        }
    }

    #[test]
    fn full_cube_homology() {
        for n in 0..=4 {
            let b = CubicalSet::full(n);
            assert!(b.is_consistent());
            assert!(b.is_strong_inductive());
            let h = b.homology_f2().unwrap();
            assert_eq!(h[0], 1);
            assert!(h[1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn two_distant_vertices() {
        // consistent but not strong-inductive (not even inductive for v≠0);
        // use vertices at Hamming distance ≥ 2 from each other and from 0
        let s = CubicalSet::new(3, [Face::vertex(0b000), Face::vertex(0b011)]);
        assert!(s.is_consistent());
        assert!(!s.is_strong_inductive());
        assert_eq!(s.homology_f2().unwrap()[0], 2);
    }

    #[test]
    fn square_without_interior_is_inconsistent() {
        let mut s = CubicalSet::full(2);
        let square = Face::new(0b11, 0);
        s.faces.remove(&square);
        assert!(!s.is_consistent());
        assert!(s.homology_f2().is_err());
        // the bare square without its boundary is also inconsistent
        let bare = CubicalSet::new(2, [square]);
        assert!(!bare.is_consistent());
        assert!(!bare.is_strong_inductive());
    }

    #[test]
    fn random_consistent_sets_boundary_squares() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6u32);
            let nverts = rng.gen_range(1..=1 << n.min(4));
            let s = CubicalSet::from_vertices(
                n,
                (0..nverts).map(|_| rng.gen_range(0..(1u32 << n))),
            );
            assert!(s.is_consistent());
            // ∂² = 0 within S: boundaries stay in S and cancel mod 2
            for f in &s.faces {
                let mut count: BTreeMap<Face, usize> = BTreeMap::new();
                for g in f.boundary() {
                    assert!(s.faces.contains(&g));
                    for h in g.boundary() {
                        *count.entry(h).or_insert(0) += 1;
                    }
                }
                assert!(count.values().all(|c| c % 2 == 0));
            }
        }
    }

    #[test]
    fn random_strong_inductive_homology() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6u32);
            let nverts = rng.gen_range(1..=10usize);
            let s = CubicalSet::from_vertices(
                n,
                (0..nverts).map(|_| rng.gen_range(0..(1u32 << n))),
            );
            assert!(s.is_strong_inductive());
            let h = s.homology_f2().unwrap();
            assert_eq!(h[0], 1, "H0 of a strong-inductive set");
            assert!(h[1..].iter().all(|&x| x == 0), "higher homology vanishes");
        }
    }

    #[test]
    fn solve_signs_on_squares() {
        // B_2 with γ(square) = 1
        let s = CubicalSet::full(2);
        let delta = solve_sign_assignment(&s, &|_| true).unwrap();
        for sq in s.squares() {
            assert!(delta.coboundary_on(&sq));
        }
        // γ ≡ 0 admits δ ≡ 0, which is also the lex-least solution
        let delta0 = solve_sign_assignment(&s, &|_| false).unwrap();
        assert!(delta0.values.is_empty());
        // B_3 with γ ≡ 1 on all six squares of each cube: solvable
        let s = CubicalSet::full(3);
        let delta = solve_sign_assignment(&s, &|_| true).unwrap();
        for sq in s.squares() {
            assert!(delta.coboundary_on(&sq));
        }
    }

    #[test]
    fn gamma_must_be_cocycle() {
        // on B_3, γ = 1 on exactly one square of the solid cube violates ∂*γ = 0
        let s = CubicalSet::full(3);
        let target = Face::new(0b011, 0b100);
        let res = solve_sign_assignment(&s, &|sq| *sq == target);
        assert_eq!(res.unwrap_err(), CubeError::NotCocycle);
    }

    #[test]
    fn compare_assignments_potential() {
        let s = CubicalSet::full(2);
        let d1 = solve_sign_assignment(&s, &|_| true).unwrap();
        // flip d1 along the coboundary of one vertex: same coboundary
        let v = Face::vertex(0b01);
        let mut d2 = d1.clone();
        for e in s.edges() {
            let (a, b) = e.endpoints();
            if a == v || b == v {
                let cur = d2.get(&e);
                if cur {
                    d2.values.remove(&e);
                } else {
                    d2.values.insert(e, true);
                }
            }
        }
        let kappa = compare_assignments(&s, &d1, &d2).unwrap();
        for e in s.edges() {
            assert_eq!(kappa.coboundary_on(&e), d1.get(&e) ^ d2.get(&e));
        }
        // identical assignments give the zero potential
        let kappa0 = compare_assignments(&s, &d1, &d1).unwrap();
        assert!(kappa0.values.is_empty());
    }

    #[test]
    fn standard_signs_anticommute_everywhere() {
        for n in 1..=5u32 {
            let delta = standard_cube_signs(n);
            let full = CubicalSet::full(n);
            for sq in full.squares() {
                assert!(delta.coboundary_on(&sq), "square {sq:?} of B_{n}");
            }
        }
        // n = 1: no squares, δ ≡ 0
        assert!(standard_cube_signs(1).values.is_empty());
        // n = 2: exactly the edge at coordinate 2 with first coordinate 1
        let d2 = standard_cube_signs(2);
        let marked: Vec<Face> = d2.values.keys().copied().collect();
        assert_eq!(marked, vec![Face::new(0b10, 0b01)]);
    }

    #[test]
    fn graph_to_cube_images() {
        use crate::partitions::PartitionGraph;
        // Γ_{2,0} fills B_1
        let s = graph_to_cube(&PartitionGraph::build(2, 0));
        assert_eq!(s, CubicalSet::full(1));
        // Γ_{2,1} omits the vertex (1,1) of B_2
        let s = graph_to_cube(&PartitionGraph::build(2, 1));
        assert!(!s.faces.contains(&Face::vertex(0b11)));
        assert!(s.is_strong_inductive());
        // canonical partition lands on the origin vertex
        assert!(s.faces.contains(&Face::vertex(0)));
        // strong-inductive for all m+n ≤ 7
        for m in 0..=7u32 {
            for n in 0..=(7 - m) {
                if m + n == 0 {
                    continue;
                }
                let s = graph_to_cube(&PartitionGraph::build(m, n));
                assert!(s.is_strong_inductive(), "Γ_{{{m},{n}}}");
            }
        }
    }

    #[test]
    fn lex_min_solution() {
        // x1 + x2 = 1 over F2: solutions (1,0) and (0,1); lex-min is (0,1)
        let mut m = F2Matrix::zeros(1, 3);
        m.flip(0, 0);
        m.flip(0, 1);
        m.flip(0, 2);
        let sol = m.solve_lex_min(2).unwrap();
        assert_eq!(sol, vec![false, true]);
    }
}
