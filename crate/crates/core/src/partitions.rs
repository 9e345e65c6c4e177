//! The graded directed graph of compatible partitions of the sign sequence
//! `ε(m,n)` (m plus-dots followed by n minus-dots): vertices are partitions
//! into consecutive blocks of size at most three with monochrome triples,
//! edges merge two adjacent blocks, and the degree of a partition with k
//! blocks is `m + n − k`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::repring::Sign;
use crate::uq::Elementary;

/// A compatible partition, stored as the consecutive block intervals
/// `(start, len)` over positions `0..m+n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct AdmissiblePartition {
    pub m: u32,
    pub n: u32,
    blocks: Vec<(u32, u32)>,
}

/// What a single block contributes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockType {
    /// singleton `+` (module `V+`, cable strand parallel)
    SingletonPlus,
    /// singleton `−` (module `V−`, cable strand reversed)
    SingletonMinus,
    /// pair `+−` (module `V(0,0)`, no strand)
    MixedPair,
    /// pair `++` (module `V−`, cable strand reversed)
    PlusPair,
    /// pair `−−` (module `V+`, cable strand parallel)
    MinusPair,
    /// triple `+++` or `−−−` (module `V(0,0)`, no strand)
    Triple,
}

impl AdmissiblePartition {
    /// The all-singletons partition.
    pub fn canonical(m: u32, n: u32) -> AdmissiblePartition {
        AdmissiblePartition {
            m,
            n,
            blocks: (0..m + n).map(|i| (i, 1)).collect(),
        }
    }

    pub fn from_block_lengths(m: u32, n: u32, lens: &[u32]) -> Option<AdmissiblePartition> {
        let mut blocks = Vec::with_capacity(lens.len());
        let mut pos = 0;
        for &l in lens {
            blocks.push((pos, l));
            pos += l;
        }
        if pos != m + n {
            return None;
        }
        let p = AdmissiblePartition { m, n, blocks };
        p.is_admissible().then_some(p)
    }

    fn sign_at(&self, pos: u32) -> Sign {
        if pos < self.m {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn is_admissible(&self) -> bool {
        self.blocks.iter().all(|&(start, len)| {
            len >= 1
                && len <= 3
                && (len < 3 || self.sign_at(start) == self.sign_at(start + len - 1))
        })
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn block_type(&self, idx: usize) -> BlockType {
        let (start, len) = self.blocks[idx];
        match len {
            1 => match self.sign_at(start) {
                Sign::Plus => BlockType::SingletonPlus,
                Sign::Minus => BlockType::SingletonMinus,
            },
            2 => match (self.sign_at(start), self.sign_at(start + 1)) {
                (Sign::Plus, Sign::Plus) => BlockType::PlusPair,
                (Sign::Minus, Sign::Minus) => BlockType::MinusPair,
                _ => BlockType::MixedPair,
            },
            _ => BlockType::Triple,
        }
    }

    pub fn block_types(&self) -> Vec<BlockType> {
        (0..self.blocks.len()).map(|i| self.block_type(i)).collect()
    }

    /// `m + n − #blocks`.
    pub fn degree(&self) -> u32 {
        self.m + self.n - self.blocks.len() as u32
    }

    /// Merge blocks `idx` and `idx+1`; `None` when inadmissible.
    pub fn merge(&self, idx: usize) -> Option<AdmissiblePartition> {
        if idx + 1 >= self.blocks.len() {
            return None;
        }
        let mut blocks = self.blocks.clone();
        let (s1, l1) = blocks[idx];
        let (_, l2) = blocks[idx + 1];
        blocks[idx] = (s1, l1 + l2);
        blocks.remove(idx + 1);
        let p = AdmissiblePartition {
            m: self.m,
            n: self.n,
            blocks,
        };
        p.is_admissible().then_some(p)
    }

    /// Bitmask over boundary positions `i = 0..m+n−1`: bit `i` set iff
    /// dots `i` and `i+1` belong to the same block.  This is the vertex of
    /// the ambient cube the partition corresponds to.
    pub fn merge_mask(&self) -> u32 {
        let mut mask = 0u32;
        for &(start, len) in &self.blocks {
            for k in 0..len.saturating_sub(1) {
                mask |= 1 << (start + k);
            }
        }
        mask
    }

    pub fn from_merge_mask(m: u32, n: u32, mask: u32) -> Option<AdmissiblePartition> {
        let total = m + n;
        let mut blocks = Vec::new();
        let mut start = 0u32;
        for i in 0..total {
            let last_of_block = i + 1 == total || (mask >> i) & 1 == 0;
            if last_of_block {
                blocks.push((start, i + 1 - start));
                start = i + 1;
            }
        }
        let p = AdmissiblePartition { m, n, blocks };
        p.is_admissible().then_some(p)
    }

    /// Strand-disjointness plus admissible superposition.
    pub fn pitchfork(&self, other: &AdmissiblePartition) -> bool {
        assert_eq!((self.m, self.n), (other.m, other.n), "mismatched shapes");
        let (a, b) = (self.merge_mask(), other.merge_mask());
        a & b == 0 && AdmissiblePartition::from_merge_mask(self.m, self.n, a | b).is_some()
    }

    /// Least upper bound (superposition); requires `pitchfork`.
    pub fn join(&self, other: &AdmissiblePartition) -> Option<AdmissiblePartition> {
        if !self.pitchfork(other) {
            return None;
        }
        let j = AdmissiblePartition::from_merge_mask(
            self.m,
            self.n,
            self.merge_mask() | other.merge_mask(),
        )
        .expect("pitchfork guarantees admissibility");
        Some(j)
    }

    /// Dots-and-strands rendering, e.g. `[+][+ +][-]`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, &(start, len)) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push('[');
            for k in 0..len {
                if k > 0 {
                    s.push(' ');
                }
                s.push(match self.sign_at(start + k) {
                    Sign::Plus => '+',
                    Sign::Minus => '-',
                });
            }
            s.push(']');
        }
        s
    }
}

/// A directed edge of the graph: merging blocks `block_idx` and
/// `block_idx + 1` of `vertices[src]` gives `vertices[tgt]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub block_idx: usize,
}

/// How an edge acts through the module dictionary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// `{+}{−} → {+−}`: pairing `d_{+−}`
    PairMixed,
    /// `{+}{+} → {++}`: antisymmetrizer `h^−_{++}`
    PairPlus,
    /// `{−}{−} → {−−}`: antisymmetrizer `h^+_{−−}`
    PairMinus,
    /// `{++}{+} → {+++}`: pairing `d_{−+}` on `V− ⊗ V+`
    TriplePlusPairLeft,
    /// `{+}{++} → {+++}`: pairing `d_{+−}` on `V+ ⊗ V−`
    TriplePlusPairRight,
    /// `{−−}{−} → {−−−}`: pairing `d_{+−}` on `V+ ⊗ V−`
    TripleMinusPairLeft,
    /// `{−}{−−} → {−−−}`: pairing `d_{−+}` on `V− ⊗ V+`
    TripleMinusPairRight,
}

impl EdgeKind {
    pub fn morphism(self) -> Elementary {
        match self {
            EdgeKind::PairMixed => Elementary::DPlusMinus,
            EdgeKind::PairPlus => Elementary::HPlusPlus,
            EdgeKind::PairMinus => Elementary::HMinusMinus,
            EdgeKind::TriplePlusPairLeft => Elementary::DMinusPlus,
            EdgeKind::TriplePlusPairRight => Elementary::DPlusMinus,
            EdgeKind::TripleMinusPairLeft => Elementary::DPlusMinus,
            EdgeKind::TripleMinusPairRight => Elementary::DMinusPlus,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PartitionGraph {
    pub m: u32,
    pub n: u32,
    pub vertices: Vec<AdmissiblePartition>,
    pub edges: Vec<Edge>,
    index: BTreeMap<AdmissiblePartition, usize>,
}

impl PartitionGraph {
    /// Complete enumeration of compatible partitions and single merges.
    pub fn build(m: u32, n: u32) -> PartitionGraph {
        let total = (m + n) as usize;
        let mut vertices: Vec<AdmissiblePartition> = Vec::new();
        if total == 0 {
            vertices.push(AdmissiblePartition {
                m,
                n,
                blocks: vec![],
            });
        } else {
            for mask in 0u32..(1 << (total - 1)) {
                if let Some(p) = AdmissiblePartition::from_merge_mask(m, n, mask) {
                    vertices.push(p);
                }
            }
        }
        vertices.sort_by_key(|p| (p.degree(), p.clone()));
        let index: BTreeMap<AdmissiblePartition, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for (src, p) in vertices.iter().enumerate() {
            for b in 0..p.blocks().len().saturating_sub(1) {
                if let Some(q) = p.merge(b) {
                    let tgt = index[&q];
                    edges.push(Edge {
                        src,
                        tgt,
                        block_idx: b,
                    });
                }
            }
        }
        PartitionGraph {
            m,
            n,
            vertices,
            edges,
            index,
        }
    }

    pub fn vertex_index(&self, p: &AdmissiblePartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn canonical_index(&self) -> usize {
        self.index[&AdmissiblePartition::canonical(self.m, self.n)]
    }

    pub fn max_degree(&self) -> u32 {
        self.vertices.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn vertices_of_degree(&self, d: u32) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].degree() == d)
            .collect()
    }

    /// The dictionary row the edge realizes.
    pub fn classify_edge(&self, e: &Edge) -> EdgeKind {
        let p = &self.vertices[e.src];
        let left = p.block_type(e.block_idx);
        let right = p.block_type(e.block_idx + 1);
        use BlockType::*;
        match (left, right) {
            (SingletonPlus, SingletonMinus) => EdgeKind::PairMixed,
            (SingletonPlus, SingletonPlus) => EdgeKind::PairPlus,
            (SingletonMinus, SingletonMinus) => EdgeKind::PairMinus,
            (PlusPair, SingletonPlus) => EdgeKind::TriplePlusPairLeft,
            (SingletonPlus, PlusPair) => EdgeKind::TriplePlusPairRight,
            (MinusPair, SingletonMinus) => EdgeKind::TripleMinusPairLeft,
            (SingletonMinus, MinusPair) => EdgeKind::TripleMinusPairRight,
            other => panic!("impossible merge {other:?}"),
        }
    }

    /// DOT rendering with vertices grouped by degree.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gamma {\n  rankdir=LR;\n  node [shape=box];\n");
        for d in 0..=self.max_degree() {
            let vs = self.vertices_of_degree(d);
            if vs.is_empty() {
                continue;
            }
            let _ = writeln!(s, "  {{ rank=same;");
            for i in vs {
                let _ = writeln!(s, "    v{} [label=\"{}\"];", i, self.vertices[i].render());
            }
            let _ = writeln!(s, "  }}");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{};", e.src, e.tgt);
        }
        s.push_str("}\n");
        s
    }
}

/// Cartesian product of partition graphs: vertices are tuples, edges change
/// exactly one coordinate, degrees add.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub factors: Vec<PartitionGraph>,
    /// tuples of vertex indices into the factors
    pub vertices: Vec<Vec<usize>>,
    /// (src tuple index, tgt tuple index, which factor moved, factor edge index)
    pub edges: Vec<(usize, usize, usize, usize)>,
}

impl ProductGraph {
    pub fn build(factors: Vec<PartitionGraph>) -> ProductGraph {
        let mut vertices: Vec<Vec<usize>> = vec![vec![]];
        for g in &factors {
            let mut next = Vec::new();
            for tuple in &vertices {
                for i in 0..g.vertices.len() {
                    let mut t = tuple.clone();
                    t.push(i);
                    next.push(t);
                }
            }
            vertices = next;
        }
        let index: BTreeMap<Vec<usize>, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for (src, tuple) in vertices.iter().enumerate() {
            for (f, g) in factors.iter().enumerate() {
                for (ei, e) in g.edges.iter().enumerate() {
                    if e.src == tuple[f] {
                        let mut t = tuple.clone();
                        t[f] = e.tgt;
                        edges.push((src, index[&t], f, ei));
                    }
                }
            }
        }
        ProductGraph {
            factors,
            vertices,
            edges,
        }
    }

    pub fn degree(&self, vertex: usize) -> u32 {
        self.vertices[vertex]
            .iter()
            .zip(&self.factors)
            .map(|(&i, g)| g.vertices[i].degree())
            .sum()
    }

    pub fn partitions(&self, vertex: usize) -> Vec<&AdmissiblePartition> {
        self.vertices[vertex]
            .iter()
            .zip(&self.factors)
            .map(|(&i, g)| &g.vertices[i])
            .collect()
    }
}
