//! Closed planar trivalent bipartite webs as combinatorial maps (half-edge
//! pairing plus rotation at each vertex), and their evaluation by the local
//! circle/digon/square reductions:
//!
//! * a vertex-less loop contributes `[3]`,
//! * a digon face collapses to a strand times `[2]`,
//! * a square face splits into the two planar reconnections.
//!
//! Planarity (checked per component through the Euler formula on the
//! rotation system) guarantees every non-empty web has one of the three.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{qint, Scalar};

/// Orientation role of a trivalent vertex: a source emits all three edges,
/// a sink absorbs them.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
}

/// Closed web.  Half-edges are arena indices; `pair` is the edge-gluing
/// involution and each vertex records its three half-edges in rotation
/// (counterclockwise) order.
#[derive(Clone, Debug, Default)]
pub struct Web {
    /// kind per vertex
    pub kinds: Vec<VertexKind>,
    /// three half-edges per vertex, counterclockwise
    pub rotation: Vec<[usize; 3]>,
    /// pairing involution over half-edge ids
    pub pair: Vec<usize>,
    /// owner vertex of each half-edge
    pub owner: Vec<usize>,
    /// vertex-less circles
    pub free_loops: u32,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum WebError {
    #[error("half-edge structure broken: {0}")]
    Structure(String),
    #[error("edge joins two vertices of the same kind (not bipartite)")]
    NotBipartite,
    #[error("component fails the sphere Euler formula (not planar)")]
    NotPlanar,
    #[error("no reducible face found in a non-empty web (internal error)")]
    Irreducible,
    #[error("bad web file: {0}")]
    Format(String),
}

/// Choice of reduction order, used to test confluence.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    FirstFound,
    Seeded(u64),
}

impl Web {
    pub fn empty() -> Web {
        Web::default()
    }

    pub fn circle() -> Web {
        Web {
            free_loops: 1,
            ..Web::default()
        }
    }

    /// Theta web: two vertices joined by three parallel edges.
    pub fn theta() -> Web {
        // source rotation (h0,h1,h2), sink rotation (h3,h5,h1's pair...)
        // edges: (0,3), (1,4), (2,5); sink rotation reversed for planarity
        Web {
            kinds: vec![VertexKind::Source, VertexKind::Sink],
            rotation: vec![[0, 1, 2], [5, 4, 3]],
            pair: vec![3, 4, 5, 0, 1, 2],
            owner: vec![0, 0, 0, 1, 1, 1],
            free_loops: 0,
        }
    }

    /// The square closure: a 4-cycle of trivalent vertices bounding a square
    /// face, with the externals of adjacent corners arced together outside.
    /// Evaluates to `[3]² + [3]`.
    pub fn square_closure() -> Web {
        // vertices: s1, t1, s2, t2 at the four corners; edges
        // e0: s1→t1 (top), e1: s2→t1 (right), e2: s2→t2 (bottom),
        // e3: s1→t2 (left), e4: s1→t1 (outer top arc), e5: s2→t2 (outer arc)
        // half-edges 2i at the source end, 2i+1 at the sink end
        Web {
            kinds: vec![
                VertexKind::Source,
                VertexKind::Sink,
                VertexKind::Source,
                VertexKind::Sink,
            ],
            rotation: vec![[0, 8, 6], [9, 1, 3], [2, 4, 10], [5, 7, 11]],
            pair: vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10],
            owner: vec![0, 1, 2, 1, 2, 3, 0, 3, 0, 1, 2, 3],
            free_loops: 0,
        }
    }

    /// The cube web: outer and inner oriented 4-cycles joined by spokes.
    /// Digon-free, so evaluation must go through the square relation.
    pub fn cube() -> Web {
        let mut w = Web::default();
        use VertexKind::*;
        // outer O0..O3 (even sources), inner I0..I3 (odd sources)
        w.kinds = vec![Source, Sink, Source, Sink, Sink, Source, Sink, Source];
        // edges: ring O0-O1, O1-O2, O2-O3, O3-O0; ring I0-I1, I1-I2, I2-I3,
        // I3-I0; spokes O0-I0, O1-I1, O2-I2, O3-I3
        let edges: [(usize, usize); 12] = [
            (0, 1),
            (2, 1),
            (2, 3),
            (0, 3),
            (5, 4),
            (5, 6),
            (7, 6),
            (7, 4),
            (0, 4),
            (5, 1),
            (2, 6),
            (7, 3),
        ];
        for (i, &(a, b)) in edges.iter().enumerate() {
            w.pair.push(2 * i + 1);
            w.pair.push(2 * i);
            w.owner.push(a);
            w.owner.push(b);
        }
        // counterclockwise rotations from the planar picture: inner square
        // nested inside the outer one
        let he = |edge: usize, vertex: usize| -> usize {
            if w.owner[2 * edge] == vertex {
                2 * edge
            } else {
                2 * edge + 1
            }
        };
        w.rotation = vec![
            [he(0, 0), he(8, 0), he(3, 0)],  // O0: toward O1, I0, O3
            [he(0, 1), he(1, 1), he(9, 1)],  // O1: toward O0, O2, I1
            [he(2, 2), he(10, 2), he(1, 2)], // O2: toward O3, I2, O1
            [he(3, 3), he(11, 3), he(2, 3)], // O3: toward O0, I3, O2
            [he(8, 4), he(4, 4), he(7, 4)],  // I0: toward O0, I1, I3
            [he(4, 5), he(9, 5), he(5, 5)],  // I1: toward I0, O1, I2
            [he(6, 6), he(5, 6), he(10, 6)], // I2: toward I3, I1, O2
            [he(7, 7), he(6, 7), he(11, 7)], // I3: toward I0, I2, O3
        ];
        w
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pair.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty() && self.free_loops == 0
    }

    fn next(&self, h: usize) -> usize {
        let v = self.owner[h];
        let rot = &self.rotation[v];
        let slot = rot.iter().position(|&x| x == h).expect("owner slot");
        rot[(slot + 1) % 3]
    }

    /// Walk the face containing half-edge `h`; the orbit of
    /// `h ↦ next(pair(h))`.
    fn face_of(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut cur = self.next(self.pair[h]);
        while cur != h {
            out.push(cur);
            cur = self.next(self.pair[cur]);
        }
        out
    }

    fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.pair.len()];
        let mut out = Vec::new();
        for h in 0..self.pair.len() {
            if seen[h] {
                continue;
            }
            let f = self.face_of(h);
            for &x in &f {
                seen[x] = true;
            }
            out.push(f);
        }
        out
    }

    /// Structural and planarity validation.
    pub fn validate(&self) -> Result<(), WebError> {
        let nh = self.pair.len();
        if nh != 3 * self.kinds.len() {
            return Err(WebError::Structure(format!(
                "{nh} half-edges for {} vertices",
                self.kinds.len()
            )));
        }
        if self.owner.len() != nh {
            return Err(WebError::Structure("owner table size".into()));
        }
        for h in 0..nh {
            if self.pair[h] >= nh || self.pair[self.pair[h]] != h || self.pair[h] == h {
                return Err(WebError::Structure(format!("pairing at {h}")));
            }
            if self.owner[h] >= self.kinds.len() {
                return Err(WebError::Structure(format!("owner of {h}")));
            }
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            for &h in rot {
                if h >= nh || self.owner[h] != v {
                    return Err(WebError::Structure(format!("rotation at vertex {v}")));
                }
            }
            let mut sorted = *rot;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(WebError::Structure(format!("repeated half-edge at {v}")));
            }
        }
        // bipartite: every edge joins a source to a sink
        for h in 0..nh {
            if self.kinds[self.owner[h]] == self.kinds[self.owner[self.pair[h]]] {
                return Err(WebError::NotBipartite);
            }
        }
        // per-component Euler formula V − E + F = 2
        let comps = self.components();
        let faces = self.faces();
        for comp in comps {
            let vs: usize = comp.len();
            let es: usize = comp
                .iter()
                .flat_map(|&v| self.rotation[v])
                .filter(|&h| h < self.pair[h])
                .count();
            let fs = faces
                .iter()
                .filter(|f| comp.contains(&self.owner[f[0]]))
                .count();
            if vs + fs != es + 2 {
                return Err(WebError::NotPlanar);
            }
        }
        Ok(())
    }

    /// Connected components as vertex sets.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.kinds.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &h in &self.rotation[v] {
                    let w = self.owner[self.pair[h]];
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Compact the arena after deletions described by keep-masks, applying
    /// the pending rewires in `pair`.
    fn rebuild(&self, keep_vertex: &[bool], keep_half: &[bool], pair: &[usize]) -> Web {
        let mut vmap = vec![usize::MAX; self.kinds.len()];
        let mut kinds = Vec::new();
        for (v, &keep) in keep_vertex.iter().enumerate() {
            if keep {
                vmap[v] = kinds.len();
                kinds.push(self.kinds[v]);
            }
        }
        let mut hmap = vec![usize::MAX; pair.len()];
        let mut owner = Vec::new();
        for (h, &keep) in keep_half.iter().enumerate() {
            if keep {
                hmap[h] = owner.len();
                owner.push(vmap[self.owner[h]]);
            }
        }
        let mut new_pair = vec![0; owner.len()];
        for (h, &keep) in keep_half.iter().enumerate() {
            if keep {
                new_pair[hmap[h]] = hmap[pair[h]];
            }
        }
        let mut rotation = Vec::new();
        for (v, &keep) in keep_vertex.iter().enumerate() {
            if keep {
                let r = self.rotation[v];
                rotation.push([hmap[r[0]], hmap[r[1]], hmap[r[2]]]);
            }
        }
        Web {
            kinds,
            rotation,
            pair: new_pair,
            owner,
            free_loops: self.free_loops,
        }
    }

    /// Collapse a digon face `(h1, h2)`: delete both vertices and splice the
    /// two external edges together (or close a loop).
    fn reduce_digon(&self, face: &[usize]) -> Web {
        let (h1, h2) = (face[0], face[1]);
        let u = self.owner[h1];
        let v = self.owner[h2];
        debug_assert_eq!(self.owner[self.pair[h1]], v);
        debug_assert_eq!(self.owner[self.pair[h2]], u);
        let third = |vertex: usize, a: usize, b: usize| {
            *self.rotation[vertex]
                .iter()
                .find(|&&h| h != a && h != b)
                .expect("third half-edge")
        };
        let tu = third(u, h1, self.pair[h2]);
        let tv = third(v, h2, self.pair[h1]);
        let mut pair = self.pair.clone();
        let mut keep_half = vec![true; pair.len()];
        let mut keep_vertex = vec![true; self.kinds.len()];
        keep_vertex[u] = false;
        keep_vertex[v] = false;
        for h in [h1, h2, self.pair[h1], self.pair[h2], tu, tv] {
            keep_half[h] = false;
        }
        if pair[tu] == tv {
            // the external edge ran directly between u and v: closing it
            // creates a free circle
            let mut w = self.rebuild(&keep_vertex, &keep_half, &pair);
            w.free_loops += 1;
            w
        } else {
            let (pu, pv) = (pair[tu], pair[tv]);
            pair[pu] = pv;
            pair[pv] = pu;
            self.rebuild(&keep_vertex, &keep_half, &pair)
        }
    }

    /// Split a square face into its two planar reconnections.
    fn reduce_square(&self, face: &[usize]) -> (Web, Web) {
        debug_assert_eq!(face.len(), 4);
        // corner vertices in face order
        let corners: Vec<usize> = face.iter().map(|&h| self.owner[h]).collect();
        // at corner i the face uses half-edges face[i] and pair(face[i-1])
        let mut externals = Vec::with_capacity(4);
        for i in 0..4 {
            let a = face[i];
            let b = self.pair[face[(i + 3) % 4]];
            let t = *self.rotation[corners[i]]
                .iter()
                .find(|&&h| h != a && h != b)
                .expect("external half-edge");
            externals.push(t);
        }
        let reconnect = |pairs: [(usize, usize); 2]| -> Web {
            let mut pair = self.pair.clone();
            let mut keep_half = vec![true; pair.len()];
            let mut keep_vertex = vec![true; self.kinds.len()];
            for &c in &corners {
                keep_vertex[c] = false;
            }
            for &h in face {
                keep_half[h] = false;
                keep_half[pair[h]] = false;
            }
            for &t in &externals {
                keep_half[t] = false;
            }
            let mut loops = 0;
            for (x, y) in pairs {
                if pair[x] == y {
                    loops += 1;
                } else {
                    let (px, py) = (pair[x], pair[y]);
                    pair[px] = py;
                    pair[py] = px;
                }
            }
            let mut w = self.rebuild(&keep_vertex, &keep_half, &pair);
            w.free_loops += loops;
            w
        };
        // reconnection along the (0,1)/(2,3) sides and along (1,2)/(3,0)
        let a = reconnect([(externals[0], externals[1]), (externals[2], externals[3])]);
        let b = reconnect([(externals[1], externals[2]), (externals[3], externals[0])]);
        (a, b)
    }

    /// Find a reducible feature: free loop, digon face or square face.
    pub fn find_reducible(&self, strategy: Strategy, step: u64) -> Reducible {
        if self.free_loops > 0 {
            return Reducible::FreeLoop;
        }
        if self.kinds.is_empty() {
            return Reducible::None;
        }
        let faces = self.faces();
        let digons: Vec<&Vec<usize>> = faces.iter().filter(|f| f.len() == 2).collect();
        let squares: Vec<&Vec<usize>> = faces.iter().filter(|f| f.len() == 4).collect();
        let pick = |list: &[&Vec<usize>]| -> usize {
            match strategy {
                Strategy::FirstFound => 0,
                Strategy::Seeded(seed) => {
                    // cheap deterministic mix of seed and step
                    let mut x = seed ^ (step.wrapping_mul(0x9e3779b97f4a7c15));
                    x ^= x >> 33;
                    x = x.wrapping_mul(0xff51afd7ed558ccd);
                    x ^= x >> 33;
                    (x as usize) % list.len()
                }
            }
        };
        if !digons.is_empty() {
            return Reducible::Digon(digons[pick(&digons)].clone());
        }
        if !squares.is_empty() {
            return Reducible::Square(squares[pick(&squares)].clone());
        }
        Reducible::None
    }

    /// Kuperberg evaluation with memoization on the canonical form.
    pub fn evaluate(&self) -> Scalar {
        self.evaluate_with(Strategy::FirstFound)
    }

    pub fn evaluate_with(&self, strategy: Strategy) -> Scalar {
        let mut memo = HashMap::new();
        self.eval_rec(strategy, 0, &mut memo)
    }

    fn eval_rec(
        &self,
        strategy: Strategy,
        step: u64,
        memo: &mut HashMap<Vec<u8>, Scalar>,
    ) -> Scalar {
        if self.free_loops > 0 {
            let mut base = self.clone();
            let loops = base.free_loops;
            base.free_loops = 0;
            return &qint(3).pow(loops) * &base.eval_rec(strategy, step, memo);
        }
        if self.kinds.is_empty() {
            return Scalar::one();
        }
        let key = self.canonical_form();
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let value = match self.find_reducible(strategy, step) {
            Reducible::FreeLoop => unreachable!("handled above"),
            Reducible::None => panic!("irreducible non-empty web: planarity violated"),
            Reducible::Digon(face) => {
                let reduced = self.reduce_digon(&face);
                &qint(2) * &reduced.eval_rec(strategy, step + 1, memo)
            }
            Reducible::Square(face) => {
                let (a, b) = self.reduce_square(&face);
                &a.eval_rec(strategy, step + 1, memo) + &b.eval_rec(strategy, step + 1, memo)
            }
        };
        memo.insert(key, value.clone());
        value
    }

    /// Canonical encoding: the lexicographically least BFS code over all
    /// starting half-edges, concatenated over components in sorted order.
    /// Two isomorphic rotation systems (same free-loop count) get equal
    /// codes.
    pub fn canonical_form(&self) -> Vec<u8> {
        let comps = self.components();
        let mut codes: Vec<Vec<u8>> = Vec::new();
        for comp in comps {
            let mut best: Option<Vec<u8>> = None;
            for &v in &comp {
                for &h in &self.rotation[v] {
                    let code = self.bfs_code(h);
                    if best.as_ref().map_or(true, |b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            codes.push(best.unwrap_or_default());
        }
        codes.sort();
        let mut out = vec![self.free_loops as u8];
        for c in codes {
            out.push(0xFF);
            out.extend(c);
        }
        out
    }

    /// Deterministic traversal code starting from half-edge `h`: follow the
    /// rotation order, numbering vertices on first visit.
    fn bfs_code(&self, h0: usize) -> Vec<u8> {
        let mut vnum: BTreeMap<usize, usize> = BTreeMap::new();
        let mut hqueue = std::collections::VecDeque::new();
        let mut code = Vec::new();
        let mut seen_h = std::collections::BTreeSet::new();
        hqueue.push_back(h0);
        while let Some(h) = hqueue.pop_front() {
            if !seen_h.insert(h) {
                continue;
            }
            let v = self.owner[h];
            let n = vnum.len();
            let id = *vnum.entry(v).or_insert(n);
            code.push(id as u8);
            code.push(match self.kinds[v] {
                VertexKind::Source => 0,
                VertexKind::Sink => 1,
            });
            // enqueue in rotation order starting from h
            let rot = self.rotation[v];
            let slot = rot.iter().position(|&x| x == h).unwrap();
            for k in 0..3 {
                let hh = rot[(slot + k) % 3];
                let p = self.pair[hh];
                let pv = self.owner[p];
                code.push(*vnum.get(&pv).map(|x| x).unwrap_or(&250) as u8);
                hqueue.push_back(p);
            }
        }
        code
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &Web) -> Web {
        let voff = self.kinds.len();
        let hoff = self.pair.len();
        let mut out = self.clone();
        out.kinds.extend_from_slice(&other.kinds);
        out.rotation.extend(
            other
                .rotation
                .iter()
                .map(|r| [r[0] + hoff, r[1] + hoff, r[2] + hoff]),
        );
        out.pair.extend(other.pair.iter().map(|&p| p + hoff));
        out.owner.extend(other.owner.iter().map(|&v| v + voff));
        out.free_loops += other.free_loops;
        out
    }
}

/// Result of a reducibility scan.
#[derive(Debug, Clone)]
pub enum Reducible {
    FreeLoop,
    Digon(Vec<usize>),
    Square(Vec<usize>),
    None,
}

/// Incremental construction helper: add vertices, then edges in the order
/// that becomes the rotation at each endpoint.
pub struct WebBuilder {
    kinds: Vec<VertexKind>,
    slots: Vec<Vec<usize>>,
    pair: Vec<usize>,
    owner: Vec<usize>,
    free_loops: u32,
}

impl WebBuilder {
    pub fn new() -> WebBuilder {
        WebBuilder {
            kinds: Vec::new(),
            slots: Vec::new(),
            pair: Vec::new(),
            owner: Vec::new(),
            free_loops: 0,
        }
    }

    pub fn source(&mut self) -> usize {
        self.kinds.push(VertexKind::Source);
        self.slots.push(Vec::new());
        self.kinds.len() - 1
    }

    pub fn sink(&mut self) -> usize {
        self.kinds.push(VertexKind::Sink);
        self.slots.push(Vec::new());
        self.kinds.len() - 1
    }

    pub fn vertex(&mut self, kind: VertexKind) -> usize {
        match kind {
            VertexKind::Source => self.source(),
            VertexKind::Sink => self.sink(),
        }
    }

    /// Add an edge; slots fill each vertex's rotation in call order.
    pub fn edge(&mut self, from: usize, to: usize) {
        let h1 = self.pair.len();
        let h2 = h1 + 1;
        self.pair.push(h2);
        self.pair.push(h1);
        self.owner.push(from);
        self.owner.push(to);
        self.slots[from].push(h1);
        self.slots[to].push(h2);
    }

    pub fn free_loops(&mut self, n: u32) {
        self.free_loops += n;
    }

    pub fn build(self) -> Web {
        let rotation = self
            .slots
            .iter()
            .map(|s| {
                assert_eq!(s.len(), 3, "vertex must have exactly 3 half-edges");
                [s[0], s[1], s[2]]
            })
            .collect();
        Web {
            kinds: self.kinds,
            rotation,
            pair: self.pair,
            owner: self.owner,
            free_loops: self.free_loops,
        }
    }
}

impl Default for WebBuilder {
    fn default() -> Self {
        WebBuilder::new()
    }
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct WebFile {
    schema: String,
    vertices: Vec<WebVertexDto>,
    edges: Vec<WebEdgeDto>,
    #[serde(default)]
    free_loops: u32,
    /// per-vertex rotation as ordered edge indices
    rotation: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct WebVertexDto {
    id: usize,
    kind: VertexKind,
}

#[derive(Serialize, Deserialize)]
struct WebEdgeDto {
    source: usize,
    sink: usize,
}

pub const WEB_SCHEMA: &str = "spider-web/1";

impl Web {
    pub fn to_json(&self) -> String {
        let vertices = self
            .kinds
            .iter()
            .enumerate()
            .map(|(id, &kind)| WebVertexDto { id, kind })
            .collect();
        let mut edges = Vec::new();
        let mut edge_id = BTreeMap::new();
        for h in 0..self.pair.len() {
            if h < self.pair[h] {
                let (a, b) = (self.owner[h], self.owner[self.pair[h]]);
                let (source, sink) = match self.kinds[a] {
                    VertexKind::Source => (a, b),
                    VertexKind::Sink => (b, a),
                };
                edge_id.insert(h, edges.len());
                edges.push(WebEdgeDto { source, sink });
            }
        }
        let rotation = self
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|&h| edge_id[&h.min(self.pair[h])])
                    .collect()
            })
            .collect();
        serde_json::to_string_pretty(&WebFile {
            schema: WEB_SCHEMA.into(),
            vertices,
            edges,
            free_loops: self.free_loops,
            rotation,
        })
        .expect("serialization")
    }

    pub fn from_json(text: &str) -> Result<Web, WebError> {
        let file: WebFile =
            serde_json::from_str(text).map_err(|e| WebError::Format(e.to_string()))?;
        if file.schema != WEB_SCHEMA {
            return Err(WebError::Format(format!("unknown schema {}", file.schema)));
        }
        let nv = file.vertices.len();
        for (i, v) in file.vertices.iter().enumerate() {
            if v.id != i {
                return Err(WebError::Format("vertex ids must be 0..n in order".into()));
            }
        }
        if file.rotation.len() != nv {
            return Err(WebError::Format("rotation table size".into()));
        }
        let kinds: Vec<VertexKind> = file.vertices.iter().map(|v| v.kind).collect();
        // half-edges: 2 per edge, even = at source, odd = at sink
        let mut pair = Vec::with_capacity(file.edges.len() * 2);
        let mut owner = Vec::with_capacity(file.edges.len() * 2);
        for (i, e) in file.edges.iter().enumerate() {
            if e.source >= nv || e.sink >= nv {
                return Err(WebError::Format(format!("edge {i} endpoint out of range")));
            }
            pair.push(2 * i + 1);
            pair.push(2 * i);
            owner.push(e.source);
            owner.push(e.sink);
        }
        let mut used = vec![false; pair.len()];
        let mut rotation = Vec::with_capacity(nv);
        for (v, rot) in file.rotation.iter().enumerate() {
            if rot.len() != 3 {
                return Err(WebError::Format(format!("vertex {v} rotation length")));
            }
            let mut hs = [0usize; 3];
            for (k, &eid) in rot.iter().enumerate() {
                if eid >= file.edges.len() {
                    return Err(WebError::Format(format!("vertex {v} rotation edge id")));
                }
                let e = &file.edges[eid];
                let h = if e.source == v && !used[2 * eid] {
                    2 * eid
                } else if e.sink == v && !used[2 * eid + 1] {
                    2 * eid + 1
                } else {
                    return Err(WebError::Format(format!(
                        "vertex {v} rotation lists edge {eid} it is not an endpoint of"
                    )));
                };
                used[h] = true;
                hs[k] = h;
            }
            rotation.push(hs);
        }
        let web = Web {
            kinds,
            rotation,
            pair,
            owner,
            free_loops: file.free_loops,
        };
        web.validate()?;
        Ok(web)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_circle() {
        assert_eq!(Web::empty().evaluate(), Scalar::one());
        assert_eq!(Web::circle().evaluate(), qint(3));
        let two = Web::circle().disjoint_union(&Web::circle());
        assert_eq!(two.evaluate(), &qint(3) * &qint(3));
    }

    #[test]
    fn theta() {
        let w = Web::theta();
        w.validate().unwrap();
        assert_eq!(w.evaluate(), &qint(2) * &qint(3));
    }

    #[test]
    fn square_closure() {
        let w = Web::square_closure();
        w.validate().unwrap();
        let want = &(&qint(3) * &qint(3)) + &qint(3);
        assert_eq!(w.evaluate(), want);
    }

    #[test]
    fn theta_face_structure() {
        let w = Web::theta();
        let mut lens: Vec<usize> = w.faces().iter().map(|f| f.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![2, 2, 2]);
        match w.find_reducible(Strategy::FirstFound, 0) {
            Reducible::Digon(_) => {}
            other => panic!("expected digon, got {other:?}"),
        }
    }

    #[test]
    fn bipartite_violation_detected() {
        let mut b = WebBuilder::new();
        let s1 = b.source();
        let s2 = b.source();
        b.edge(s1, s2);
        b.edge(s1, s2);
        b.edge(s1, s2);
        let w = b.build();
        assert_eq!(w.validate().unwrap_err(), WebError::NotBipartite);
    }

    #[test]
    fn nonplanar_gluing_detected() {
        // K_3,3-style rotation: theta with one sink rotation reversed makes
        // the torus embedding; Euler check fails
        let w = Web {
            kinds: vec![VertexKind::Source, VertexKind::Sink],
            rotation: vec![[0, 1, 2], [3, 4, 5]],
            pair: vec![3, 4, 5, 0, 1, 2],
            owner: vec![0, 0, 0, 1, 1, 1],
            free_loops: 0,
        };
        assert_eq!(w.validate().unwrap_err(), WebError::NotPlanar);
    }

    #[test]
    fn disjoint_union_multiplies() {
        let w = Web::theta().disjoint_union(&Web::square_closure());
        w.validate().unwrap();
        let want = &Web::theta().evaluate() * &Web::square_closure().evaluate();
        assert_eq!(w.evaluate(), want);
    }

    #[test]
    fn confluence_on_samples() {
        let samples = [
            Web::theta(),
            Web::square_closure(),
            Web::cube(),
            Web::theta().disjoint_union(&Web::theta()),
            Web::square_closure().disjoint_union(&Web::circle()),
        ];
        for w in &samples {
            let a = w.evaluate_with(Strategy::FirstFound);
            for seed in [1u64, 7, 42] {
                assert_eq!(a, w.evaluate_with(Strategy::Seeded(seed)));
            }
        }
    }

    #[test]
    fn cube_web_is_digon_free() {
        let w = Web::cube();
        w.validate().unwrap();
        match w.find_reducible(Strategy::FirstFound, 0) {
            Reducible::Square(f) => assert_eq!(f.len(), 4),
            other => panic!("expected a square, got {other:?}"),
        }
        let v = w.evaluate();
        assert!(v.is_palindromic());
        assert!(v.has_nonneg_int_coeffs());
        let (at1, z) = v
            .evaluate_at(num_rational::Rational64::from_integer(1))
            .unwrap();
        assert_eq!(z, num_rational::Rational64::from_integer(0));
        assert!(*at1.numer() > 0);
    }

    #[test]
    fn palindromic_nonneg_on_samples() {
        for w in [Web::theta(), Web::square_closure()] {
            let v = w.evaluate();
            assert!(v.is_palindromic());
            assert!(v.has_nonneg_int_coeffs());
            assert!(v.is_plain_laurent());
        }
    }

    #[test]
    fn json_roundtrip() {
        for w in [Web::circle(), Web::theta(), Web::square_closure()] {
            let text = w.to_json();
            let back = Web::from_json(&text).unwrap();
            assert_eq!(back.evaluate(), w.evaluate());
            assert_eq!(back.canonical_form(), w.canonical_form());
        }
    }

    #[test]
    fn canonical_form_invariant_under_relabeling() {
        // apply a half-edge and vertex permutation to the theta web
        let w = Web::theta();
        let hperm = [4usize, 2, 0, 5, 1, 3]; // where each half-edge goes
        let vperm = [1usize, 0];
        let mut pair = vec![0; 6];
        let mut owner = vec![0; 6];
        for h in 0..6 {
            pair[hperm[h]] = hperm[w.pair[h]];
            owner[hperm[h]] = vperm[w.owner[h]];
        }
        let mut kinds = vec![VertexKind::Source; 2];
        let mut rotation = vec![[0usize; 3]; 2];
        for v in 0..2 {
            kinds[vperm[v]] = w.kinds[v];
            rotation[vperm[v]] = [
                hperm[w.rotation[v][0]],
                hperm[w.rotation[v][1]],
                hperm[w.rotation[v][2]],
            ];
        }
        let w2 = Web {
            kinds,
            rotation,
            pair,
            owner,
            free_loops: 0,
        };
        w2.validate().unwrap();
        assert_eq!(w2.canonical_form(), w.canonical_form());
        assert_eq!(w2.evaluate(), w.evaluate());
    }
}
