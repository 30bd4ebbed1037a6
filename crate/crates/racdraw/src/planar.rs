//! Planarity testing and combinatorial embeddings.
//!
//! The test/embedding pair implements the left-right planarity criterion
//! (Brandes' formulation of de Fraysseix–Rosenstiehl), iteratively so deep
//! graphs cannot overflow the stack. Embeddings are rotation systems stored
//! as half-edge structures; validity is checkable through Euler's formula.

use crate::graph::{Edge, Graph, VertexId};
use std::collections::HashMap;

const NONE: usize = usize::MAX;

/// Rotation system of a planar graph: for every vertex the clockwise cyclic
/// order of its outgoing half-edges. Arcs come in twin pairs `2e`, `2e+1`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub n: usize,
    from: Vec<VertexId>,
    to: Vec<VertexId>,
    /// next arc clockwise around `from[a]`
    cw: Vec<usize>,
    /// one outgoing arc per vertex, NONE when isolated
    vertex_arc: Vec<usize>,
}

impl Embedding {
    pub fn arc_count(&self) -> usize {
        self.from.len()
    }

    pub fn edge_count(&self) -> usize {
        self.from.len() / 2
    }

    pub fn twin(a: usize) -> usize {
        a ^ 1
    }

    pub fn arc_from(&self, a: usize) -> VertexId {
        self.from[a]
    }

    pub fn arc_to(&self, a: usize) -> VertexId {
        self.to[a]
    }

    pub fn cw_next(&self, a: usize) -> usize {
        self.cw[a]
    }

    /// Clockwise neighbor order around `v`.
    pub fn rotation(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let start = self.vertex_arc[v];
        if start == NONE {
            return out;
        }
        let mut a = start;
        loop {
            out.push(self.to[a]);
            a = self.cw[a];
            if a == start {
                break;
            }
        }
        out
    }

    /// Next arc along the face: after walking `a = (u, v)`, the face
    /// continues with the arc clockwise-next after `(v, u)` at `v`.
    pub fn face_next(&self, a: usize) -> usize {
        self.cw[Embedding::twin(a)]
    }

    /// All faces as directed arc cycles.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.from.len()];
        let mut faces = Vec::new();
        for s in 0..self.from.len() {
            if seen[s] {
                continue;
            }
            let mut walk = Vec::new();
            let mut a = s;
            while !seen[a] {
                seen[a] = true;
                walk.push(a);
                a = self.face_next(a);
            }
            faces.push(walk);
        }
        faces
    }

    /// Euler check per connected component: for an embedding of a planar
    /// connected component with n_i vertices and m_i edges, the face walk
    /// partition must have exactly m_i - n_i + 2 faces.
    pub fn euler_ok(&self, g: &Graph) -> bool {
        let comp = g.components();
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut nv = vec![0usize; ncomp];
        let mut me = vec![0usize; ncomp];
        for v in 0..g.vertex_count() {
            nv[comp[v]] += 1;
        }
        for &(a, _) in g.edges() {
            me[comp[a]] += 1;
        }
        let mut fc = vec![0usize; ncomp];
        for face in self.faces() {
            fc[comp[self.from[face[0]]]] += 1;
        }
        for c in 0..ncomp {
            // a component with no edges has no arcs, hence no face walk
            let expect = if me[c] == 0 { 0 } else { me[c] + 2 - nv[c] };
            if fc[c] != expect {
                return false;
            }
        }
        true
    }

    /// Inserts the edge `(x, y)` into the face corner identified by the arc
    /// pair: at `x` between the face arcs `(in_x: ?->x)` and its cw
    /// successor, and likewise at `y`. `after_x` / `after_y` are the arcs
    /// `(x, ·)` after which the new arcs are spliced clockwise.
    fn splice_edge(&mut self, x: VertexId, y: VertexId, after_x: usize, after_y: usize) -> usize {
        let a = self.from.len();
        self.from.push(x);
        self.to.push(y);
        self.from.push(y);
        self.to.push(x);
        self.cw.push(NONE);
        self.cw.push(NONE);
        if after_x == NONE {
            self.cw[a] = a;
            self.vertex_arc[x] = a;
        } else {
            self.cw[a] = self.cw[after_x];
            self.cw[after_x] = a;
        }
        if after_y == NONE {
            self.cw[a + 1] = a + 1;
            self.vertex_arc[y] = a + 1;
        } else {
            self.cw[a + 1] = self.cw[after_y];
            self.cw[after_y] = a + 1;
        }
        a
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for a in (0..self.from.len()).step_by(2) {
            edges.push((self.from[a].min(self.to[a]), self.from[a].max(self.to[a])));
        }
        crate::graph::build_graph(self.n, &edges).expect("embedding stores a simple graph")
    }

    /// Builds an embedding from explicit clockwise rotations; `rotations[v]`
    /// must list exactly the neighbors of `v` in `g`.
    pub fn from_rotations(n: usize, g: &Graph, rotations: &[Vec<VertexId>]) -> Embedding {
        let m = g.edge_count();
        let mut emb = Embedding {
            n,
            from: Vec::with_capacity(2 * m),
            to: Vec::with_capacity(2 * m),
            cw: vec![NONE; 2 * m],
            vertex_arc: vec![NONE; n],
        };
        let mut arc_of: HashMap<(VertexId, VertexId), usize> = HashMap::with_capacity(2 * m);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            emb.from.push(a);
            emb.to.push(b);
            emb.from.push(b);
            emb.to.push(a);
            arc_of.insert((a, b), 2 * e);
            arc_of.insert((b, a), 2 * e + 1);
        }
        for v in 0..n {
            let rot = &rotations[v];
            if rot.is_empty() {
                continue;
            }
            emb.vertex_arc[v] = arc_of[&(v, rot[0])];
            for i in 0..rot.len() {
                let next = rot[(i + 1) % rot.len()];
                emb.cw[arc_of[&(v, rot[i])]] = arc_of[&(v, next)];
            }
        }
        emb
    }
}

/// Left-right planarity state for one graph.
struct Lr<'a> {
    adj: Vec<Vec<(VertexId, usize)>>, // (neighbor, edge id)
    g: &'a Graph,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    roots: Vec<VertexId>,
    // per edge id
    oriented: Vec<bool>,
    tail: Vec<VertexId>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    ref_: Vec<usize>,
    side: Vec<i8>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    ordered: Vec<Vec<usize>>, // per vertex: edges oriented out of it, sorted
    stack: Vec<ConflictPair>,
}

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    fn empty_iv() -> Interval {
        Interval { low: NONE, high: NONE }
    }
    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.l, &mut self.r);
    }
}

impl<'a> Lr<'a> {
    fn new(g: &'a Graph) -> Lr<'a> {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut adj = vec![Vec::new(); n];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        Lr {
            adj,
            g,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            roots: Vec::new(),
            oriented: vec![false; m],
            tail: vec![NONE; m],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            ref_: vec![NONE; m],
            side: vec![1; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            ordered: vec![Vec::new(); n],
            stack: Vec::new(),
        }
    }

    fn head(&self, e: usize) -> VertexId {
        let (a, b) = self.g.edges()[e];
        if self.tail[e] == a {
            b
        } else {
            a
        }
    }

    fn finish_edge(&mut self, e: usize) {
        // nesting depth of e and lowpoint propagation into parent_edge[tail]
        let v = self.tail[e];
        self.nesting[e] = 2 * self.lowpt[e] as i64;
        if self.lowpt2[e] < self.height[v] {
            self.nesting[e] += 1; // chordal
        }
        let pe = self.parent_edge[v];
        if pe != NONE {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    fn dfs_orientation(&mut self, root: VertexId) {
        self.height[root] = 0;
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some((v, mut idx)) = frames.pop() {
            let mut descended = false;
            while idx < self.adj[v].len() {
                let (w, e) = self.adj[v][idx];
                idx += 1;
                if self.oriented[e] {
                    continue;
                }
                self.oriented[e] = true;
                self.tail[e] = v;
                self.lowpt[e] = self.height[v];
                self.lowpt2[e] = self.height[v];
                if self.height[w] == NONE {
                    // tree edge: descend, finish on return
                    self.parent_edge[w] = e;
                    self.height[w] = self.height[v] + 1;
                    frames.push((v, idx));
                    frames.push((w, 0));
                    descended = true;
                    break;
                } else {
                    // back edge
                    self.lowpt[e] = self.height[w];
                    self.finish_edge(e);
                }
            }
            if !descended && self.parent_edge[v] != NONE {
                let pe = self.parent_edge[v];
                self.finish_edge(pe);
            }
        }
    }

    fn conflicting(&self, i: &Interval, e: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[e]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.l.is_empty() {
            return self.lowpt[p.r.low];
        }
        if p.r.is_empty() {
            return self.lowpt[p.l.low];
        }
        self.lowpt[p.l.low].min(self.lowpt[p.r.low])
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair { l: Interval::empty_iv(), r: Interval::empty_iv() };
        // merge return edges of e_i into p.r
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => return false,
            };
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false;
            }
            if self.lowpt[q.r.low] > self.lowpt[e] {
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.ref_[p.r.low] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                self.ref_[q.r.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of e_1..e_{i-1} into p.l
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.l, ei) || self.conflicting(&top.r, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.r, ei) {
                q.swap();
            }
            if self.conflicting(&q.r, ei) {
                return false;
            }
            // merge interval below lowpt(e_i) into p.r
            if p.r.low != NONE {
                self.ref_[p.r.low] = q.r.high;
            }
            if q.r.low != NONE {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.ref_[p.l.low] = q.l.high;
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.tail[e];
        // drop entire conflict pairs
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.l.low != NONE {
                self.side[p.l.low] = -1;
            }
        }
        // trim one more conflict pair
        if let Some(mut p) = self.stack.pop() {
            while p.l.high != NONE && self.head(p.l.high) == u {
                p.l.high = self.ref_[p.l.high];
            }
            if p.l.high == NONE && p.l.low != NONE {
                self.ref_[p.l.low] = p.r.low;
                self.side[p.l.low] = -1;
                p.l.low = NONE;
            }
            while p.r.high != NONE && self.head(p.r.high) == u {
                p.r.high = self.ref_[p.r.high];
            }
            if p.r.high == NONE && p.r.low != NONE {
                self.ref_[p.r.low] = p.l.low;
                self.side[p.r.low] = -1;
                p.r.low = NONE;
            }
            self.stack.push(p);
        }
        // side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u] {
            let top = *self.stack.last().expect("return edge requires a conflict pair");
            let hl = top.l.high;
            let hr = top.r.high;
            if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                self.ref_[e] = hl;
            } else {
                self.ref_[e] = hr;
            }
        }
    }

    fn dfs_testing(&mut self, root: VertexId) -> bool {
        // frame: (v, idx, e_initialized)
        let mut frames: Vec<(VertexId, usize, bool)> = vec![(root, 0, false)];
        'outer: while let Some((v, mut idx, mut initialized)) = frames.pop() {
            while idx < self.ordered[v].len() {
                let ei = self.ordered[v][idx];
                let w = self.head(ei);
                if !initialized {
                    self.stack_bottom[ei] = self.stack.len();
                    if ei == self.parent_edge[w] {
                        // tree edge: descend, resume this frame afterwards
                        frames.push((v, idx, true));
                        frames.push((w, 0, false));
                        continue 'outer;
                    }
                    // back edge
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        l: Interval::empty_iv(),
                        r: Interval { low: ei, high: ei },
                    });
                }
                initialized = false;
                // integrate new return edges
                if self.lowpt[ei] < self.height[v] {
                    let pe = self.parent_edge[v];
                    if idx == 0 {
                        self.lowpt_edge[pe] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, pe) {
                        return false;
                    }
                }
                idx += 1;
            }
            let pe = self.parent_edge[v];
            if pe != NONE {
                self.remove_back_edges(pe);
            }
        }
        true
    }

    /// Resolves the side of `e` through its ref chain, clearing refs.
    fn resolve_sides(&mut self) {
        let m = self.g.edge_count();
        let mut chain: Vec<usize> = Vec::new();
        for e0 in 0..m {
            let mut e = e0;
            while e != NONE && self.ref_[e] != NONE {
                chain.push(e);
                e = self.ref_[e];
            }
            // e (if any) has no ref: its side is final
            while let Some(x) = chain.pop() {
                let r = self.ref_[x];
                self.side[x] *= self.side[r];
                self.ref_[x] = NONE;
            }
        }
    }
}

/// Half-edge insertion helper used while reconstructing the embedding.
struct HalfEdges {
    first_nbr: Vec<VertexId>,
    cw: HashMap<(VertexId, VertexId), VertexId>,
    ccw: HashMap<(VertexId, VertexId), VertexId>,
}

impl HalfEdges {
    fn new(n: usize) -> HalfEdges {
        HalfEdges { first_nbr: vec![NONE; n], cw: HashMap::new(), ccw: HashMap::new() }
    }

    fn add_first_edge(&mut self, s: VertexId, e: VertexId) {
        self.cw.insert((s, e), e);
        self.ccw.insert((s, e), e);
        self.first_nbr[s] = e;
    }

    fn add_cw(&mut self, s: VertexId, e: VertexId, reference: VertexId) {
        let cw_ref = self.cw[&(s, reference)];
        self.cw.insert((s, reference), e);
        self.cw.insert((s, e), cw_ref);
        self.ccw.insert((s, cw_ref), e);
        self.ccw.insert((s, e), reference);
    }

    fn add_ccw(&mut self, s: VertexId, e: VertexId, reference: VertexId) {
        let ccw_ref = self.ccw[&(s, reference)];
        self.ccw.insert((s, reference), e);
        self.ccw.insert((s, e), ccw_ref);
        self.cw.insert((s, ccw_ref), e);
        self.cw.insert((s, e), reference);
        if self.first_nbr[s] == reference {
            self.first_nbr[s] = e;
        }
    }

    fn add_first(&mut self, s: VertexId, e: VertexId) {
        if self.first_nbr[s] == NONE {
            self.add_first_edge(s, e);
        } else {
            self.add_ccw(s, e, self.first_nbr[s]);
        }
    }
}

/// Left-right planarity test.
pub fn is_planar(g: &Graph) -> bool {
    run_lr(g).is_some()
}

/// Planar embedding (rotation system), or `None` for non-planar input.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    run_lr(g)
}

fn run_lr(g: &Graph) -> Option<Embedding> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr::new(g);
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.roots.push(v);
            lr.dfs_orientation(v);
        }
    }
    // sort adjacency by nesting depth
    for v in 0..n {
        let mut out: Vec<usize> = lr
            .adj[v]
            .iter()
            .filter(|&&(_, e)| lr.oriented[e] && lr.tail[e] == v)
            .map(|&(_, e)| e)
            .collect();
        out.sort_by_key(|&e| lr.nesting[e]);
        lr.ordered[v] = out;
    }
    for i in 0..lr.roots.len() {
        let r = lr.roots[i];
        if !lr.dfs_testing(r) {
            return None;
        }
    }
    // embed
    lr.resolve_sides();
    for e in 0..m {
        lr.nesting[e] *= lr.side[e] as i64;
    }
    for v in 0..n {
        lr.ordered[v].sort_by_key(|&e| lr.nesting[e]);
    }
    let mut he = HalfEdges::new(n);
    for v in 0..n {
        let mut prev = NONE;
        for i in 0..lr.ordered[v].len() {
            let w = lr.head(lr.ordered[v][i]);
            if prev == NONE {
                he.add_first_edge(v, w);
            } else {
                he.add_cw(v, w, prev);
            }
            prev = w;
        }
    }
    // complete the embedding: insert reversed half-edges by DFS
    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    let roots = lr.roots.clone();
    for root in roots {
        let mut frames: Vec<(VertexId, usize)> = vec![(root, 0)];
        'outer: while let Some((v, mut idx)) = frames.pop() {
            while idx < lr.ordered[v].len() {
                let ei = lr.ordered[v][idx];
                let w = lr.head(ei);
                idx += 1;
                if ei == lr.parent_edge[w] {
                    he.add_first(w, v);
                    left_ref[v] = w;
                    right_ref[v] = w;
                    frames.push((v, idx));
                    frames.push((w, 0));
                    continue 'outer;
                } else if lr.side[ei] == 1 {
                    he.add_cw(w, v, right_ref[w]);
                } else {
                    he.add_ccw(w, v, left_ref[w]);
                    left_ref[w] = v;
                }
            }
        }
    }
    // convert to arc structure
    let mut emb = Embedding {
        n,
        from: Vec::with_capacity(2 * m),
        to: Vec::with_capacity(2 * m),
        cw: vec![NONE; 2 * m],
        vertex_arc: vec![NONE; n],
    };
    let mut arc_of: HashMap<(VertexId, VertexId), usize> = HashMap::with_capacity(2 * m);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        emb.from.push(a);
        emb.to.push(b);
        emb.from.push(b);
        emb.to.push(a);
        arc_of.insert((a, b), 2 * e);
        arc_of.insert((b, a), 2 * e + 1);
    }
    for v in 0..n {
        let first = he.first_nbr[v];
        if first == NONE {
            continue;
        }
        emb.vertex_arc[v] = arc_of[&(v, first)];
        let mut w = first;
        loop {
            let next = he.cw[&(v, w)];
            emb.cw[arc_of[&(v, w)]] = arc_of[&(v, next)];
            w = next;
            if w == first {
                break;
            }
        }
    }
    debug_assert!(emb.euler_ok(g));
    Some(emb)
}

/// Outerplanarity via the apex criterion: `g` is outerplanar iff adding a
/// vertex adjacent to everything leaves the graph planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    outer_order(g).is_some()
}

/// A vertex order along which all edges can be drawn as non-interleaving
/// arcs on one side of the spine (a one-page embedding). Derived from the
/// rotation around the apex in an embedding of `g + apex`, so it exists iff
/// `g` is outerplanar.
pub fn outer_order(g: &Graph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let apex = n;
    let mut edges: Vec<Edge> = g.edges().to_vec();
    for v in 0..n {
        edges.push((v, apex));
    }
    let aug = crate::graph::build_graph(n + 1, &edges).expect("apex augmentation is simple");
    let emb = planar_embedding(&aug)?;
    let rot = emb.rotation(apex);
    debug_assert_eq!(rot.len(), n);
    Some(rot)
}

/// Builds a maximal planar supergraph of `g` together with its embedding.
/// Returns the embedding and the set of added edges. Requires planar input
/// and `n >= 3`.
pub fn triangulate(g: &Graph) -> Option<(Embedding, Vec<Edge>)> {
    let n = g.vertex_count();
    if n < 3 {
        return None;
    }
    let mut emb = planar_embedding(g)?;
    let mut added: Vec<Edge> = Vec::new();

    // 1. connect components
    let comp = g.components();
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    if ncomp > 1 {
        let mut reps = vec![NONE; ncomp];
        for v in 0..n {
            if reps[comp[v]] == NONE {
                reps[comp[v]] = v;
            }
        }
        let r0 = reps[0];
        for &r in reps.iter().skip(1) {
            let ax = emb.vertex_arc[r0];
            let ay = emb.vertex_arc[r];
            emb.splice_edge(r0, r, ax, ay);
            added.push((r0.min(r), r0.max(r)));
        }
    }

    // 2. make every face a simple cycle (equivalently: biconnect), then
    // triangulate each face
    let mut simple_faces: Vec<Vec<usize>> = Vec::new();
    let mut worklist: Vec<Vec<usize>> = emb.faces();
    let mut current: std::collections::HashSet<Edge> =
        emb.to_graph().edges().iter().copied().collect();
    while let Some(walk) = worklist.pop() {
        match split_repeated_face(&mut emb, &walk, &current) {
            None => simple_faces.push(walk),
            Some((e, f1, f2)) => {
                current.insert(e);
                added.push(e);
                worklist.push(f1);
                worklist.push(f2);
            }
        }
    }
    let mut neighbor_mark: Vec<usize> = vec![NONE; n];
    for face in simple_faces {
        triangulate_face(&mut emb, &face, &mut neighbor_mark, &mut added);
    }

    debug_assert!({
        let tg = emb.to_graph();
        tg.edge_count() == 3 * n - 6 && emb.euler_ok(&tg)
    });
    Some((emb, added))
}

/// If the face walk revisits some vertex, splits the face with a chord that
/// separates two of the visits, returning the chord and the two sub-walks.
/// `None` when the walk is already a simple cycle.
#[allow(clippy::type_complexity)]
fn split_repeated_face(
    emb: &mut Embedding,
    walk: &[usize],
    current: &std::collections::HashSet<Edge>,
) -> Option<(Edge, Vec<usize>, Vec<usize>)> {
    let k = walk.len();
    if k <= 3 {
        return None;
    }
    let verts: Vec<VertexId> = walk.iter().map(|&a| emb.arc_from(a)).collect();
    // first repeated vertex by walk position
    let mut occ_of: HashMap<VertexId, usize> = HashMap::with_capacity(k);
    let mut repeat: Option<(usize, usize)> = None;
    for (i, &v) in verts.iter().enumerate() {
        if let Some(&first) = occ_of.get(&v) {
            repeat = Some((first, i));
            break;
        }
        occ_of.insert(v, i);
    }
    let (i, j) = repeat?;
    // candidate chords (p, q) with exactly one occurrence of the repeated
    // vertex inside (p, q): successors of the two occurrences first, then
    // an exhaustive scan
    let exists = |a: VertexId, b: VertexId| a == b || current.contains(&(a.min(b), a.max(b)));
    let mut chord: Option<(usize, usize)> = None;
    let cand = [
        ((i + 1) % k, (j + 1) % k),
        ((i + k - 1) % k, (j + k - 1) % k),
        ((i + 1) % k, (j + k - 1) % k),
        ((i + k - 1) % k, (j + 1) % k),
    ];
    for (p, q) in cand {
        let (p, q) = (p.min(q), p.max(q));
        // chord must separate positions i and j and not be a walk edge
        let strictly_between = |x: usize| p < x && x < q;
        if strictly_between(i) == strictly_between(j) {
            continue;
        }
        if q - p <= 1 || (p == 0 && q == k - 1) {
            continue;
        }
        if !exists(verts[p], verts[q]) {
            chord = Some((p, q));
            break;
        }
    }
    if chord.is_none() {
        'scan: for p in 0..k {
            for q in p + 2..k {
                if p == 0 && q == k - 1 {
                    continue;
                }
                let strictly_between = |x: usize| p < x && x < q;
                if strictly_between(i) == strictly_between(j) {
                    continue;
                }
                if !exists(verts[p], verts[q]) {
                    chord = Some((p, q));
                    break 'scan;
                }
            }
        }
    }
    let (p, q) = chord.expect("a separating chord always exists in a repeated face walk");
    let (x, y) = (verts[p], verts[q]);
    // splice inside this face: at x after (x -> w_{p-1}), at y after (y -> w_{q-1})
    let after_x = Embedding::twin(walk[(p + k - 1) % k]);
    let after_y = Embedding::twin(walk[(q + k - 1) % k]);
    let na = emb.splice_edge(x, y, after_x, after_y);
    // sub-walks: [na, a_q .. a_{p-1}] and [na+1, a_p .. a_{q-1}]
    let mut f1 = vec![na];
    let mut t = q;
    while t != p {
        f1.push(walk[t]);
        t = (t + 1) % k;
    }
    let mut f2 = vec![na + 1];
    f2.extend_from_slice(&walk[p..q]);
    Some(((x.min(y), x.max(y)), f1, f2))
}

/// Adds chords to one face until it is a triangle. The face must be a simple
/// cycle (graph biconnected). Fans from a face vertex with no chords.
fn triangulate_face(
    emb: &mut Embedding,
    face_arcs: &[usize],
    neighbor_mark: &mut [usize],
    added: &mut Vec<Edge>,
) {
    let k = face_arcs.len();
    if k <= 3 {
        return;
    }
    // face vertices in walk order: vertex of arc i = from(arc_i)
    let verts: Vec<VertexId> = face_arcs.iter().map(|&a| emb.arc_from(a)).collect();
    debug_assert!({
        let mut s = verts.clone();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    }, "face of a biconnected graph must be a simple cycle");

    // find a vertex with no chord into this face
    let mut on_face = vec![false; k];
    let _ = &mut on_face;
    let stamp = emb.arc_count(); // unique-enough stamp value
    let mut chordless = NONE;
    'cand: for (i, &u) in verts.iter().enumerate() {
        // mark face vertices
        for &w in &verts {
            neighbor_mark[w] = stamp + i;
        }
        // count face-adjacencies of u besides its two face neighbors
        let prev = verts[(i + k - 1) % k];
        let next = verts[(i + 1) % k];
        let mut a = emb.vertex_arc[u];
        let start = a;
        loop {
            let t = emb.arc_to(a);
            if neighbor_mark[t] == stamp + i && t != prev && t != next && t != u {
                continue 'cand;
            }
            a = emb.cw_next(a);
            if a == start {
                break;
            }
        }
        chordless = i;
        break;
    }
    assert!(chordless != NONE, "non-crossing chords always leave a chordless face vertex");
    let s = chordless;
    // fan from verts[s] to verts[s+2 .. s+k-2]
    let u = verts[s];
    // arc (u -> p1) on the face
    let mut after_u = Embedding::twin(face_arcs[(s + k - 1) % k]); // (u -> p_{k-1})
    for off in (2..=k - 2).rev() {
        let i = (s + off) % k;
        let x = verts[i];
        // corner at x between face arcs (x_{i-1}->x) and (x->x_{i+1}):
        // insert after (x -> x_{i-1}) = twin(arc entering x)
        let after_x = Embedding::twin(face_arcs[(i + k - 1) % k]);
        let a = emb.splice_edge(u, x, after_u, after_x);
        after_u = a;
        added.push((u.min(x), u.max(x)));
    }
}

/// Canonical order of a maximal planar embedded graph: an insertion order
/// `v1, v2, ..., vn` where each later vertex attaches to a contiguous arc of
/// the then-outer cycle. Returns the order plus, for every vertex of rank
/// k >= 2 (0-based), its fan: the neighbors among earlier vertices in
/// left-to-right outer-path order.
pub struct CanonicalOrder {
    pub order: Vec<VertexId>,
    /// fans[k] for k >= 2: attachment path of order[k]
    pub fans: Vec<Vec<VertexId>>,
}

pub fn canonical_order(emb: &Embedding) -> CanonicalOrder {
    let n = emb.n;
    assert!(n >= 3);
    let m = emb.edge_count();
    assert_eq!(m, 3 * n - 6, "canonical order requires a maximal planar graph");

    // adjacency in rotation order
    let rot: Vec<Vec<VertexId>> = (0..n).map(|v| emb.rotation(v)).collect();

    // outer face: walk of arc 0
    let mut outer = Vec::new();
    {
        let mut a = 0usize;
        loop {
            outer.push(emb.arc_from(a));
            a = emb.face_next(a);
            if a == 0 {
                break;
            }
        }
    }
    assert_eq!(outer.len(), 3);
    let (v1, vn, v2) = (outer[0], outer[1], outer[2]);

    let mut alive = vec![true; n];
    let mut on_outer = vec![false; n];
    let mut nextv = vec![NONE; n];
    let mut prevv = vec![NONE; n];
    let mut chords = vec![0usize; n];
    // cycle direction v1 -> vn -> v2 -> v1
    for &v in &[v1, vn, v2] {
        on_outer[v] = true;
    }
    nextv[v1] = vn;
    nextv[vn] = v2;
    nextv[v2] = v1;
    prevv[vn] = v1;
    prevv[v2] = vn;
    prevv[v1] = v2;

    let mut order = vec![NONE; n];
    let mut fans: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    order[0] = v1;
    order[1] = v2;

    let mut cand: Vec<VertexId> = vec![vn];
    for k in (2..n).rev() {
        // pop a valid candidate
        let u = loop {
            let u = match cand.pop() {
                Some(u) => u,
                None => {
                    let outer: Vec<(usize, usize)> =
                        (0..n).filter(|&v| alive[v] && on_outer[v]).map(|v| (v, chords[v])).collect();
                    panic!(
                        "canonical order: no removable vertex at k={k}; outer (v, chords) = {outer:?}, v1={v1}, v2={v2}"
                    );
                }
            };
            if alive[u] && on_outer[u] && u != v1 && u != v2 && chords[u] == 0 {
                break u;
            }
        };
        order[k] = u;
        alive[u] = false;
        on_outer[u] = false;
        let pu = prevv[u];
        let nu = nextv[u];
        // living neighbors of u in rotation order; prev and next are
        // cyclically adjacent among them (the outer corner), on one side
        // or the other depending on the boundary orientation
        let r: Vec<VertexId> = rot[u].iter().copied().filter(|&x| alive[x]).collect();
        let d = r.len();
        let pos_prev = r.iter().position(|&x| x == pu).unwrap();
        let mut fan = Vec::with_capacity(d);
        fan.push(pu);
        if r[(pos_prev + 1) % d] == nu {
            // cw: [prev, next, i1, .., ij]; outer path order prev, ij, .., i1, next
            let mut interior: Vec<VertexId> = Vec::with_capacity(d - 2);
            let mut i = (pos_prev + 2) % d;
            while r[i] != pu {
                interior.push(r[i]);
                i = (i + 1) % d;
            }
            fan.extend(interior.iter().rev());
        } else {
            debug_assert_eq!(
                r[(pos_prev + d - 1) % d],
                nu,
                "outer corner must be a corner of the living rotation"
            );
            // cw: [next, prev, i1, .., ij]; outer path order prev, i1, .., ij, next
            let mut i = (pos_prev + 1) % d;
            while r[i] != nu {
                fan.push(r[i]);
                i = (i + 1) % d;
            }
        }
        fan.push(nu);
        debug_assert!(fan.len() >= 2);
        // relink outer cycle
        {
            let mut prev = pu;
            for &x in fan.iter().skip(1) {
                nextv[prev] = x;
                prevv[x] = prev;
                prev = x;
            }
        }
        let newly: Vec<VertexId> = fan[1..fan.len() - 1].to_vec();
        if newly.is_empty() {
            // prev and next become cycle-adjacent; the edge between them
            // (the face under u guarantees it exists) is no longer a chord
            debug_assert!(rot[pu].contains(&nu));
            for z in [pu, nu] {
                chords[z] -= 1;
                if chords[z] == 0 {
                    cand.push(z);
                }
            }
        }
        for &x in &newly {
            on_outer[x] = true;
        }
        // chord counting: fresh count for newly-outer, +1 for old-outer ends
        let is_new = |x: VertexId, newly: &[VertexId]| newly.contains(&x);
        for &x in &newly {
            let mut c = 0usize;
            for &z in &rot[x] {
                if !alive[z] || !on_outer[z] {
                    continue;
                }
                if nextv[x] == z || prevv[x] == z {
                    continue;
                }
                c += 1;
                if !is_new(z, &newly) {
                    chords[z] += 1;
                }
            }
            chords[x] = c;
            if c == 0 {
                cand.push(x);
            }
        }
        fans[k] = fan;
        if k == 2 {
            debug_assert_eq!(order[2], u);
        }
    }
    // fan of order[2] is (v1, v2)
    fans[2] = vec![v1, v2];
    CanonicalOrder { order, fans }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        build_graph(n, &e).unwrap()
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        build_graph(6, &e).unwrap()
    }

    #[test]
    fn small_planarity_verdicts() {
        assert!(is_planar(&k(4)));
        assert!(!is_planar(&k(5)));
        assert!(!is_planar(&k33()));
        let octahedron = build_graph(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)],
        )
        .unwrap();
        assert!(is_planar(&octahedron));
    }

    #[test]
    fn embedding_satisfies_euler() {
        let g = k(4);
        let emb = planar_embedding(&g).unwrap();
        assert!(emb.euler_ok(&g));
        assert_eq!(emb.faces().len(), 4);
    }

    #[test]
    fn outerplanarity() {
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_outerplanar(&c4));
        assert!(!is_outerplanar(&k(4)));
        let order = outer_order(&c4).unwrap();
        assert_eq!(order.len(), 4);
    }

    #[test]
    fn triangulation_is_maximal_planar() {
        for g in [
            build_graph(5, &[(0, 1), (2, 3)]).unwrap(),
            build_graph(6, &[]).unwrap(),
            build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
            k(4),
        ] {
            let n = g.vertex_count();
            let (emb, added) = triangulate(&g).unwrap();
            let tg = emb.to_graph();
            assert_eq!(tg.edge_count(), 3 * n - 6);
            assert!(emb.euler_ok(&tg));
            assert_eq!(tg.edge_count(), g.edge_count() + added.len());
            assert!(is_planar(&tg));
        }
    }

    #[test]
    fn canonical_order_on_octahedron() {
        let octahedron = build_graph(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)],
        )
        .unwrap();
        let (emb, _) = triangulate(&octahedron).unwrap();
        let co = canonical_order(&emb);
        assert_eq!(co.order.len(), 6);
        // every fan is non-trivial and consists of earlier vertices
        let rank: Vec<usize> = {
            let mut r = vec![0; 6];
            for (i, &v) in co.order.iter().enumerate() {
                r[v] = i;
            }
            r
        };
        for kk in 2..6 {
            let v = co.order[kk];
            assert!(co.fans[kk].len() >= 2);
            for &w in &co.fans[kk] {
                assert!(rank[w] < rank[v]);
            }
        }
    }
}
