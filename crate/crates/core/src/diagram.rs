//! Oriented knotted web diagrams: crossings and trivalent vertices joined
//! by directed arcs, with component labels and blackboard framing.
//!
//! A crossing has four ports in counterclockwise order; ports 0 and 2 carry
//! the under-strand, ports 1 and 3 the over-strand.  Arc directions
//! determine orientations, and the crossing sign follows from which port
//! the over-strand enters: entering at `under_in + 3 (mod 4)` makes the
//! crossing positive.
//!
//! Smoothing replaces a crossing either by the oriented reconnection (each
//! in-port turns toward its neighboring out-port) or by the rung web (both
//! in-ports feed a sink joined by a rung to a source feeding both
//! out-ports).  Cabling replaces every strand of a component by parallel
//! blackboard push-offs, expanding each crossing into a grid of crossings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{AdmissiblePartition, BlockType};
use crate::web::{VertexKind, Web};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Crossing,
    Source,
    Sink,
}

impl NodeKind {
    pub fn ports(&self) -> usize {
        match self {
            NodeKind::Crossing => 4,
            _ => 3,
        }
    }
}

/// A directed arc between node ports `(node, port)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Arc {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub component: usize,
}

/// Knotted web diagram.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub nodes: Vec<NodeKind>,
    pub arcs: Vec<Arc>,
    /// component label per vertex-less circle
    pub free_loops: Vec<usize>,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DiagramError {
    #[error("port ({0}, {1}) is not covered by exactly one arc end")]
    BadPort(usize, usize),
    #[error("node {0} has inconsistent strand directions")]
    BadNode(usize),
    #[error("diagram has trivalent vertices; operation needs a link diagram")]
    NotALink,
    #[error("component labels are inconsistent along a strand")]
    BadComponentLabels,
    #[error("bad diagram file: {0}")]
    Format(String),
}

/// A choice of smoothing per crossing, in crossing-index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing(pub Vec<bool>);

impl Smoothing {
    pub fn weight(&self) -> u32 {
        self.0.iter().filter(|&&b| b).count() as u32
    }

    pub fn all(n: usize, bit: bool) -> Smoothing {
        Smoothing(vec![bit; n])
    }

    pub fn from_index(n: usize, index: u64) -> Smoothing {
        Smoothing((0..n).map(|i| (index >> i) & 1 == 1).collect())
    }
}

impl Diagram {
    /// The crossing-free unknot: a single free loop.
    pub fn unknot() -> Diagram {
        Diagram {
            nodes: vec![],
            arcs: vec![],
            free_loops: vec![0],
        }
    }

    /// Closure of a braid word on `strands` strands.  Generator `i`
    /// (1-based) is `σ_i` when positive (the strand at position `i` crosses
    /// over its right neighbor) and `σ_i^{−1}` when negative.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Diagram {
        assert!(strands >= 1);
        let mut d = Diagram::default();
        let mut front: Vec<Option<(usize, usize)>> = vec![None; strands];
        let mut start: Vec<Option<(usize, usize)>> = vec![None; strands];
        for &g in word {
            assert!(
                g != 0 && (g.unsigned_abs() as usize) < strands,
                "bad generator {g}"
            );
            let i = (g.unsigned_abs() - 1) as usize;
            let node = d.nodes.len();
            d.nodes.push(NodeKind::Crossing);
            // corner-to-port assignment keeping ports counterclockwise:
            //   σ_i:   lower-left over-in = 3, lower-right under-in = 0,
            //          upper-left under-out = 2, upper-right over-out = 1
            //   σ_i⁻¹: lower-left under-in = 0, lower-right over-in = 1,
            //          upper-left over-out = 3, upper-right under-out = 2
            let (ll, lr, ul, ur) = if g > 0 {
                ((node, 3), (node, 0), (node, 2), (node, 1))
            } else {
                ((node, 0), (node, 1), (node, 3), (node, 2))
            };
            for (pos, end) in [(i, ll), (i + 1, lr)] {
                match front[pos] {
                    Some(from) => d.arcs.push(Arc {
                        from,
                        to: end,
                        component: 0,
                    }),
                    None => start[pos] = Some(end),
                }
            }
            front[i] = Some(ul);
            front[i + 1] = Some(ur);
        }
        for pos in 0..strands {
            match (front[pos], start[pos]) {
                (Some(from), Some(to)) => d.arcs.push(Arc {
                    from,
                    to,
                    component: 0,
                }),
                (None, None) => d.free_loops.push(0),
                _ => unreachable!("front and start must match"),
            }
        }
        d.relabel_components();
        d
    }

    /// Recompute component labels by tracing strands.  Only for link
    /// diagrams (strands through trivalent vertices are not traced).
    pub fn relabel_components(&mut self) {
        assert!(self.is_link(), "relabeling needs a link diagram");
        let mut label = vec![usize::MAX; self.arcs.len()];
        let mut next = 0;
        for a0 in 0..self.arcs.len() {
            if label[a0] != usize::MAX {
                continue;
            }
            let mut a = a0;
            loop {
                label[a] = next;
                let (node, port) = self.arcs[a].to;
                let out_port = (port + 2) % 4;
                a = self.arc_from(node, out_port).expect("closed diagram strand");
                if a == a0 {
                    break;
                }
            }
            next += 1;
        }
        for (a, l) in label.into_iter().enumerate() {
            self.arcs[a].component = l;
        }
        for (i, l) in self.free_loops.iter_mut().enumerate() {
            *l = next + i;
        }
    }

    pub fn arc_from(&self, node: usize, port: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.from == (node, port))
    }

    pub fn arc_to(&self, node: usize, port: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.to == (node, port))
    }

    pub fn is_link(&self) -> bool {
        self.nodes.iter().all(|n| *n == NodeKind::Crossing)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&n| self.nodes[n] == NodeKind::Crossing)
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let strand_comps: std::collections::BTreeSet<usize> =
            self.arcs.iter().map(|a| a.component).collect();
        strand_comps.len() + self.free_loops.len()
    }

    pub fn components(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arcs
            .iter()
            .map(|a| a.component)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        out.extend(self.free_loops.iter().copied());
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        for (n, kind) in self.nodes.iter().enumerate() {
            for p in 0..kind.ports() {
                let from = self.arcs.iter().filter(|a| a.from == (n, p)).count();
                let to = self.arcs.iter().filter(|a| a.to == (n, p)).count();
                if from + to != 1 {
                    return Err(DiagramError::BadPort(n, p));
                }
            }
        }
        for (n, kind) in self.nodes.iter().enumerate() {
            match kind {
                NodeKind::Crossing => {
                    for line in [[0usize, 2], [1, 3]] {
                        let ins = line.iter().filter(|&&p| self.arc_to(n, p).is_some()).count();
                        if ins != 1 {
                            return Err(DiagramError::BadNode(n));
                        }
                    }
                }
                NodeKind::Source => {
                    if (0..3).any(|p| self.arc_to(n, p).is_some()) {
                        return Err(DiagramError::BadNode(n));
                    }
                }
                NodeKind::Sink => {
                    if (0..3).any(|p| self.arc_from(n, p).is_some()) {
                        return Err(DiagramError::BadNode(n));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ports where the under- and over-strands enter.
    fn crossing_inputs(&self, node: usize) -> (usize, usize) {
        let under_in = if self.arc_to(node, 0).is_some() { 0 } else { 2 };
        let over_in = if self.arc_to(node, 1).is_some() { 1 } else { 3 };
        (under_in, over_in)
    }

    /// Crossing sign: positive when the over-strand enters at
    /// `under_in + 3 (mod 4)`.
    pub fn crossing_sign(&self, node: usize) -> i32 {
        let (under_in, over_in) = self.crossing_inputs(node);
        if over_in == (under_in + 3) % 4 {
            1
        } else {
            -1
        }
    }

    /// `(n_+, n_−)`.
    pub fn counts(&self) -> (u32, u32) {
        let mut pos = 0;
        let mut neg = 0;
        for n in self.crossings() {
            if self.crossing_sign(n) > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        (pos, neg)
    }

    /// Reverse the orientation of the labeled components (arc directions
    /// flip; signs at crossings between a reversed and an unreversed strand
    /// flip with them).
    pub fn reverse_components(&mut self, labels: &std::collections::BTreeSet<usize>) {
        for a in &mut self.arcs {
            if labels.contains(&a.component) {
                std::mem::swap(&mut a.from, &mut a.to);
            }
        }
    }

    pub fn reversed_all(&self) -> Diagram {
        let mut d = self.clone();
        let labels: std::collections::BTreeSet<usize> = d.components().into_iter().collect();
        d.reverse_components(&labels);
        d
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let noff = self.nodes.len();
        let comp_off = self.components().into_iter().max().map_or(0, |c| c + 1);
        let mut d = self.clone();
        d.nodes.extend_from_slice(&other.nodes);
        d.arcs.extend(other.arcs.iter().map(|a| Arc {
            from: (a.from.0 + noff, a.from.1),
            to: (a.to.0 + noff, a.to.1),
            component: a.component + comp_off,
        }));
        d.free_loops
            .extend(other.free_loops.iter().map(|&c| c + comp_off));
        d
    }

    /// Replace every crossing by the chosen local web and assemble the
    /// resulting closed web; trivalent diagram nodes pass straight through.
    pub fn smooth(&self, s: &Smoothing) -> Result<Web, DiagramError> {
        let crossings = self.crossings();
        assert_eq!(s.0.len(), crossings.len(), "smoothing length mismatch");
        self.validate()?;
        let idx_of: BTreeMap<usize, usize> =
            crossings.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        // bare wire connections through oriented smoothings: in-port → out-port
        let mut wire_out: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        let mut wire_in: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        // attachment of a diagram port to a web vertex, with a rotation key
        let mut attach: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        let mut kinds: Vec<VertexKind> = Vec::new();
        // half-edges created as (vertex, rotation key) pairs
        let mut pending_edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
        for (n, kind) in self.nodes.iter().enumerate() {
            match kind {
                NodeKind::Crossing => {
                    let (under_in, over_in) = self.crossing_inputs(n);
                    let a = if (under_in + 1) % 4 == over_in {
                        under_in
                    } else {
                        over_in
                    };
                    debug_assert!((a + 1) % 4 == over_in || (a + 1) % 4 == under_in);
                    if !s.0[idx_of[&n]] {
                        // oriented: in a → out a+3, in a+1 → out a+2
                        wire_out.insert((n, a), (n, (a + 3) % 4));
                        wire_in.insert((n, (a + 3) % 4), (n, a));
                        wire_out.insert((n, (a + 1) % 4), (n, (a + 2) % 4));
                        wire_in.insert((n, (a + 2) % 4), (n, (a + 1) % 4));
                    } else {
                        // rung web; counterclockwise rotations are
                        // sink: (rung, in a, in a+1), source: (out a+2, out a+3, rung)
                        let sink = kinds.len();
                        kinds.push(VertexKind::Sink);
                        let source = kinds.len();
                        kinds.push(VertexKind::Source);
                        pending_edges.push(((source, 2), (sink, 0))); // rung
                        attach.insert((n, a), (sink, 1));
                        attach.insert((n, (a + 1) % 4), (sink, 2));
                        attach.insert((n, (a + 2) % 4), (source, 0));
                        attach.insert((n, (a + 3) % 4), (source, 1));
                    }
                }
                NodeKind::Source | NodeKind::Sink => {
                    let v = kinds.len();
                    kinds.push(match kind {
                        NodeKind::Source => VertexKind::Source,
                        _ => VertexKind::Sink,
                    });
                    for p in 0..3 {
                        attach.insert((n, p), (v, p));
                    }
                }
            }
        }
        // trace maximal strand runs, connecting attachments or closing loops
        let mut seen_arc = vec![false; self.arcs.len()];
        let mut free_loops = self.free_loops.len() as u32;
        for a0 in 0..self.arcs.len() {
            if seen_arc[a0] {
                continue;
            }
            let mut path = vec![a0];
            let mut closed = false;
            loop {
                let cur = *path.last().unwrap();
                let to = self.arcs[cur].to;
                if attach.contains_key(&to) {
                    break;
                }
                let exit = wire_out[&to];
                let next_arc = self.arc_from(exit.0, exit.1).expect("closed diagram");
                if next_arc == a0 {
                    closed = true;
                    break;
                }
                path.push(next_arc);
            }
            if closed {
                for a in path {
                    seen_arc[a] = true;
                }
                free_loops += 1;
                continue;
            }
            let mut cur_port = self.arcs[a0].from;
            let mut back = Vec::new();
            while !attach.contains_key(&cur_port) {
                let entry = wire_in[&cur_port];
                let prev_arc = self.arc_to(entry.0, entry.1).expect("closed diagram");
                back.push(prev_arc);
                cur_port = self.arcs[prev_arc].from;
            }
            for &a in path.iter().chain(&back) {
                seen_arc[a] = true;
            }
            let tail = attach[&cur_port];
            let head = attach[&self.arcs[*path.last().unwrap()].to];
            pending_edges.push((tail, head));
        }
        // assemble the web: half-edges per pending edge, rotations sorted by key
        let mut pair = Vec::with_capacity(pending_edges.len() * 2);
        let mut owner = Vec::with_capacity(pending_edges.len() * 2);
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); kinds.len()];
        for (i, &((va, ka), (vb, kb))) in pending_edges.iter().enumerate() {
            let h1 = 2 * i;
            let h2 = 2 * i + 1;
            pair.push(h2);
            pair.push(h1);
            owner.push(va);
            owner.push(vb);
            slots[va].push((ka, h1));
            slots[vb].push((kb, h2));
        }
        let rotation = slots
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                assert_eq!(s.len(), 3, "trivalent web vertex");
                [s[0].1, s[1].1, s[2].1]
            })
            .collect();
        let mut web = Web {
            kinds,
            rotation,
            pair,
            owner,
            free_loops,
        };
        web.free_loops = free_loops;
        Ok(web)
    }

    /// All `2^n` smoothings with their webs.
    pub fn all_smoothings(&self) -> Vec<(Smoothing, Web)> {
        let n = self.crossing_count();
        assert!(n <= 24, "too many crossings for full enumeration");
        (0..(1u64 << n))
            .map(|i| {
                let s = Smoothing::from_index(n, i);
                let w = self.smooth(&s).expect("valid diagram");
                (s, w)
            })
            .collect()
    }

    /// Cable the components: each plan lists the parallel copies in
    /// left-to-right order with their orientation (false = parallel,
    /// true = reversed).  Components without a plan keep a single parallel
    /// strand; an empty plan erases the component.
    pub fn cable(&self, plans: &BTreeMap<usize, Vec<bool>>) -> Result<Diagram, DiagramError> {
        if !self.is_link() {
            return Err(DiagramError::NotALink);
        }
        self.validate()?;
        // canonicalize this diagram's labels and translate the plan keys
        let mut canon = self.clone();
        canon.relabel_components();
        let mut translate: BTreeMap<usize, usize> = BTreeMap::new();
        for (a, b) in self.arcs.iter().zip(&canon.arcs) {
            if let Some(&prev) = translate.get(&a.component) {
                if prev != b.component {
                    return Err(DiagramError::BadComponentLabels);
                }
            }
            translate.insert(a.component, b.component);
        }
        for (a, b) in self.free_loops.iter().zip(&canon.free_loops) {
            translate.insert(*a, *b);
        }
        let plans: BTreeMap<usize, Vec<bool>> = plans
            .iter()
            .filter_map(|(k, v)| translate.get(k).map(|&nk| (nk, v.clone())))
            .collect();
        let plans = &plans;
        let width = |c: usize| plans.get(&c).map_or(1, |p| p.len());
        // erasing components: drop their arcs first; a crossing between an
        // erased and a kept strand flattens to the kept strand passing
        // through.
        let erased: std::collections::BTreeSet<usize> = plans
            .iter()
            .filter(|(_, p)| p.is_empty())
            .map(|(&c, _)| c)
            .collect();
        let base_diagram = if erased.is_empty() {
            canon
        } else {
            canon.erase_components(&erased)?
        };
        let d0 = &base_diagram;
        let mut d = Diagram::default();
        let mut base = vec![usize::MAX; d0.nodes.len()];
        let mut under_comp = vec![0usize; d0.nodes.len()];
        let mut over_comp = vec![0usize; d0.nodes.len()];
        for (n, _) in d0.nodes.iter().enumerate() {
            let (under_in, over_in) = d0.crossing_inputs(n);
            under_comp[n] = d0.arcs[d0.arc_to(n, under_in).unwrap()].component;
            over_comp[n] = d0.arcs[d0.arc_to(n, over_in).unwrap()].component;
            base[n] = d.nodes.len();
            for _ in 0..width(under_comp[n]) * width(over_comp[n]) {
                d.nodes.push(NodeKind::Crossing);
            }
        }
        let node_of = |n: usize, i: usize, j: usize| base[n] + i * width(over_comp[n]) + j;
        // internal grid wiring
        for (n, _) in d0.nodes.iter().enumerate() {
            let (under_in, over_in) = d0.crossing_inputs(n);
            let (under_out, over_out) = ((under_in + 2) % 4, (over_in + 2) % 4);
            let wu = width(under_comp[n]);
            let wo = width(over_comp[n]);
            for i in 0..wu {
                for j in 0..wo.saturating_sub(1) {
                    d.arcs.push(Arc {
                        from: (node_of(n, i, j), under_out),
                        to: (node_of(n, i, j + 1), under_in),
                        component: 0,
                    });
                }
            }
            for j in 0..wo {
                for i in 0..wu.saturating_sub(1) {
                    d.arcs.push(Arc {
                        from: (node_of(n, i, j), over_out),
                        to: (node_of(n, i + 1, j), over_in),
                        component: 0,
                    });
                }
            }
        }
        // external wiring: copy c of each original arc.  Copies are
        // enumerated left to right facing along the strand; in grid
        // coordinates (column = under copy, row = over copy, both ascending
        // along the other strand's travel) that makes the under columns
        // straight and the over rows reversed at a positive crossing, and
        // the opposite at a negative one.
        let col_of = |n: usize, c: usize| -> usize {
            if d0.crossing_sign(n) > 0 {
                c
            } else {
                width(under_comp[n]) - 1 - c
            }
        };
        let row_of = |n: usize, c: usize| -> usize {
            if d0.crossing_sign(n) > 0 {
                width(over_comp[n]) - 1 - c
            } else {
                c
            }
        };
        let exit_port = |(n, port): (usize, usize), c: usize| -> (usize, usize) {
            let (under_in, over_in) = d0.crossing_inputs(n);
            let wu = width(under_comp[n]);
            let wo = width(over_comp[n]);
            if port == (under_in + 2) % 4 {
                (node_of(n, col_of(n, c), wo - 1), port)
            } else {
                debug_assert_eq!(port, (over_in + 2) % 4);
                (node_of(n, wu - 1, row_of(n, c)), port)
            }
        };
        let entry_port = |(n, port): (usize, usize), c: usize| -> (usize, usize) {
            let (under_in, _) = d0.crossing_inputs(n);
            if port == under_in {
                (node_of(n, col_of(n, c), 0), port)
            } else {
                (node_of(n, 0, row_of(n, c)), port)
            }
        };
        for arc in &d0.arcs {
            for c in 0..width(arc.component) {
                d.arcs.push(Arc {
                    from: exit_port(arc.from, c),
                    to: entry_port(arc.to, c),
                    component: 0,
                });
            }
        }
        for &c in &d0.free_loops {
            for _ in 0..width(c) {
                d.free_loops.push(0);
            }
        }
        d.relabel_components();
        // reverse the flagged copies: find each copy's new label through a
        // representative original arc
        let mut to_reverse = std::collections::BTreeSet::new();
        for k in d0.components() {
            let Some(plan) = plans.get(&k) else { continue };
            if let Some(arc) = d0.arcs.iter().find(|a| a.component == k) {
                for (c, &rev) in plan.iter().enumerate() {
                    if rev {
                        let from = exit_port(arc.from, c);
                        let idx = d
                            .arcs
                            .iter()
                            .position(|a| a.from == from)
                            .expect("cable arc");
                        to_reverse.insert(d.arcs[idx].component);
                    }
                }
            }
            // free-loop copies: reversal is combinatorially trivial
        }
        d.reverse_components(&to_reverse);
        d.validate()?;
        Ok(d)
    }

    /// Remove the arcs of the given components; crossings where an erased
    /// strand crossed a kept strand flatten into the kept strand, and
    /// crossings between two erased strands disappear.
    fn erase_components(
        &self,
        erased: &std::collections::BTreeSet<usize>,
    ) -> Result<Diagram, DiagramError> {
        // splice kept strands through dead crossings by repeatedly
        // contracting: build the new arc list by walking kept strands
        let keep_arc = |a: &Arc| !erased.contains(&a.component);
        // a crossing survives iff both its strands are kept
        let mut survives = vec![false; self.nodes.len()];
        for (n, _) in self.nodes.iter().enumerate() {
            let (under_in, over_in) = self.crossing_inputs(n);
            let cu = self.arcs[self.arc_to(n, under_in).unwrap()].component;
            let co = self.arcs[self.arc_to(n, over_in).unwrap()].component;
            survives[n] = !erased.contains(&cu) && !erased.contains(&co);
        }
        let node_map: BTreeMap<usize, usize> = {
            let mut m = BTreeMap::new();
            let mut next = 0;
            for (n, &s) in survives.iter().enumerate() {
                if s {
                    m.insert(n, next);
                    next += 1;
                }
            }
            m
        };
        let mut d = Diagram {
            nodes: vec![NodeKind::Crossing; node_map.len()],
            arcs: Vec::new(),
            free_loops: self
                .free_loops
                .iter()
                .filter(|c| !erased.contains(c))
                .cloned()
                .collect(),
        };
        let mut seen = vec![false; self.arcs.len()];
        for a0 in 0..self.arcs.len() {
            if seen[a0] || !keep_arc(&self.arcs[a0]) {
                continue;
            }
            // walk forward through dead crossings
            let mut chain = vec![a0];
            loop {
                let cur = *chain.last().unwrap();
                let (node, port) = self.arcs[cur].to;
                if survives[node] {
                    break;
                }
                let next = self
                    .arc_from(node, (port + 2) % 4)
                    .expect("closed diagram");
                if next == a0 {
                    break;
                }
                chain.push(next);
            }
            let closes = {
                let (node, port) = self.arcs[*chain.last().unwrap()].to;
                !survives[node] && self.arc_from(node, (port + 2) % 4) == Some(a0)
            };
            if closes {
                // the kept strand only met dead crossings: it becomes a loop
                // only when the whole component is a chain of dead crossings
                for &a in &chain {
                    seen[a] = true;
                }
                d.free_loops.push(self.arcs[a0].component);
                continue;
            }
            // walk backward
            let mut first = a0;
            loop {
                let (node, port) = self.arcs[first].from;
                if survives[node] {
                    break;
                }
                first = self
                    .arc_to(node, (port + 2) % 4)
                    .expect("closed diagram");
            }
            // replace the chain from `first`'s from to chain-end's to
            let mut full = vec![first];
            loop {
                let cur = *full.last().unwrap();
                let (node, port) = self.arcs[cur].to;
                if survives[node] {
                    break;
                }
                full.push(self.arc_from(node, (port + 2) % 4).unwrap());
            }
            for &a in &full {
                seen[a] = true;
            }
            let from = self.arcs[first].from;
            let to = self.arcs[*full.last().unwrap()].to;
            d.arcs.push(Arc {
                from: (node_map[&from.0], from.1),
                to: (node_map[&to.0], to.1),
                component: self.arcs[a0].component,
            });
        }
        // keep the surviving strands' original labels so plan keys stay valid
        Ok(d)
    }

    /// Cable plan from an admissible partition: one strand per singleton or
    /// monochrome pair, reversed for `−` singletons and `++` pairs.
    pub fn partition_plan(p: &AdmissiblePartition) -> Vec<bool> {
        p.block_types()
            .into_iter()
            .filter_map(|t| match t {
                BlockType::SingletonPlus | BlockType::MinusPair => Some(false),
                BlockType::SingletonMinus | BlockType::PlusPair => Some(true),
                BlockType::MixedPair | BlockType::Triple => None,
            })
            .collect()
    }

    /// Cable plan for the standard `(a, b)` cable: first `a` parallel
    /// strands, then `b` reversed ones.
    pub fn parallel_plan(a: u32, b: u32) -> Vec<bool> {
        let mut v = vec![false; a as usize];
        v.extend(vec![true; b as usize]);
        v
    }
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    schema: String,
    nodes: Vec<NodeDto>,
    arcs: Vec<ArcDto>,
    #[serde(default)]
    free_loops: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NodeDto {
    id: usize,
    kind: NodeKind,
}

#[derive(Serialize, Deserialize)]
struct ArcDto {
    from: [usize; 2],
    to: [usize; 2],
    component: usize,
}

pub const DIAGRAM_SCHEMA: &str = "spider-diagram/1";

impl Diagram {
    pub fn to_json(&self) -> String {
        let file = DiagramFile {
            schema: DIAGRAM_SCHEMA.into(),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, &kind)| NodeDto { id, kind })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcDto {
                    from: [a.from.0, a.from.1],
                    to: [a.to.0, a.to.1],
                    component: a.component,
                })
                .collect(),
            free_loops: self.free_loops.clone(),
        };
        serde_json::to_string_pretty(&file).expect("serialization")
    }

    pub fn from_json(text: &str) -> Result<Diagram, DiagramError> {
        let file: DiagramFile =
            serde_json::from_str(text).map_err(|e| DiagramError::Format(e.to_string()))?;
        if file.schema != DIAGRAM_SCHEMA {
            return Err(DiagramError::Format(format!(
                "unknown schema {}",
                file.schema
            )));
        }
        for (i, n) in file.nodes.iter().enumerate() {
            if n.id != i {
                return Err(DiagramError::Format(
                    "node ids must be 0..n in order".into(),
                ));
            }
        }
        let d = Diagram {
            nodes: file.nodes.iter().map(|n| n.kind).collect(),
            arcs: file
                .arcs
                .iter()
                .map(|a| Arc {
                    from: (a.from[0], a.from[1]),
                    to: (a.to[0], a.to[1]),
                    component: a.component,
                })
                .collect(),
            free_loops: file.free_loops,
        };
        d.validate()?;
        Ok(d)
    }
}
