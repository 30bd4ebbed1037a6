//! Linear vertex orders and book embeddings consumed by the layout
//! algorithms: topological 2-page book embeddings with at most one spine
//! crossing per edge, plain 1- and 2-page embeddings, forest decompositions,
//! caterpillar orders and outerpath structure extraction.

use crate::classes::conflicts_bipartite;
use crate::graph::{build_graph, Edge, Graph, VertexId};
use crate::planar::{canonical_order, outer_order, triangulate, CanonicalOrder};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("input graph is not planar")]
    NotPlanar,
    #[error("input graph is not outerplanar")]
    NotOuterplanar,
    #[error("input graph is not a caterpillar")]
    NotCaterpillar,
    #[error("input graph is not an outerpath (or n < 4)")]
    NotOuterpath,
    #[error("edges cannot be split into two forests")]
    NotTwoDegenerate,
    #[error("witness order admits no two-page assignment")]
    WitnessInvalid,
    #[error("two-page embeddability unknown at this size without a witness")]
    Unknown,
}

/// Bijection between vertices and spine positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearOrder {
    seq: Vec<VertexId>,
}

impl LinearOrder {
    pub fn new(seq: Vec<VertexId>) -> LinearOrder {
        debug_assert!({
            let mut s = seq.clone();
            s.sort_unstable();
            s.iter().copied().eq(0..seq.len())
        });
        LinearOrder { seq }
    }

    pub fn identity(n: usize) -> LinearOrder {
        LinearOrder { seq: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[VertexId] {
        &self.seq
    }

    /// Position of each vertex, 0-based.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Page {
    Above,
    Below,
}

impl Page {
    pub fn flip(self) -> Page {
        match self {
            Page::Above => Page::Below,
            Page::Below => Page::Above,
        }
    }
}

/// How one edge is realized in a book embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgePlacement {
    /// The whole edge lies on one page.
    Whole { page: Page },
    /// The edge is subdivided at `dummy`, which sits strictly between the
    /// endpoints on the spine; the half incident to the spine-left endpoint
    /// lies on `left_page`, the other half on the opposite page.
    Split { dummy: usize, left_page: Page },
}

/// Topological 2-page book embedding: a spine order over real vertices
/// `0..n` plus dummy subdivision tokens `n..token_count`, and a placement
/// per edge. Within a page no two arcs interleave; each edge is subdivided
/// at most once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookEmbedding {
    pub n: usize,
    pub token_count: usize,
    /// spine[i] = token at position i
    pub spine: Vec<usize>,
    /// parallel to the graph's edge list
    pub placements: Vec<EdgePlacement>,
}

impl BookEmbedding {
    pub fn dummy_count(&self) -> usize {
        self.token_count - self.n
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.token_count];
        for (i, &t) in self.spine.iter().enumerate() {
            pos[t] = i;
        }
        pos
    }
}

/// Edge partition into two forests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestPair {
    pub f1: Vec<Edge>,
    pub f2: Vec<Edge>,
}

/// Decomposition of a (triangulated) outerpath into its upper path, lower
/// path and spanning caterpillar, plus the chords the triangulation added.
#[derive(Clone, Debug)]
pub struct OuterpathStructure {
    /// outer cycle, upper path first: upper ++ lower is the full cycle
    pub upper: Vec<VertexId>,
    pub lower: Vec<VertexId>,
    /// the triangulated outerpath (supergraph of the input)
    pub triangulated: Graph,
    /// chords added by the triangulation, to be dropped from drawings
    pub added: Vec<Edge>,
    /// triangulated edges minus upper-path and lower-path edges
    pub caterpillar_edges: Vec<Edge>,
    pub caterpillar_order: LinearOrder,
}

/// Report of [`validate_book_embedding`].
#[derive(Clone, Debug, Default)]
pub struct BookValidity {
    pub violations: Vec<String>,
}

impl BookValidity {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every invariant of a book embedding against its graph: spine
/// bijectivity, dummy usage, dummy-between-endpoints, and per-page
/// non-interleaving (arcs sharing a spine token never count as interleaving).
pub fn validate_book_embedding(g: &Graph, be: &BookEmbedding) -> BookValidity {
    let mut v = BookValidity::default();
    if be.n != g.vertex_count() {
        v.violations.push(format!("n mismatch: {} vs {}", be.n, g.vertex_count()));
        return v;
    }
    if be.spine.len() != be.token_count {
        v.violations.push("spine length differs from token count".into());
        return v;
    }
    {
        let mut seen = vec![false; be.token_count];
        for &t in &be.spine {
            if t >= be.token_count || seen[t] {
                v.violations.push(format!("spine token {t} out of range or repeated"));
                return v;
            }
            seen[t] = true;
        }
    }
    if be.placements.len() != g.edge_count() {
        v.violations.push("placement count differs from edge count".into());
        return v;
    }
    let pos = be.positions();
    let mut dummy_owner = vec![usize::MAX; be.token_count];
    // arcs: (lo, hi, page, edge)
    let mut arcs: Vec<(usize, usize, Page, usize)> = Vec::new();
    for (ei, (&(a, b), pl)) in g.edges().iter().zip(be.placements.iter()).enumerate() {
        let (pa, pb) = (pos[a], pos[b]);
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        match *pl {
            EdgePlacement::Whole { page } => arcs.push((lo, hi, page, ei)),
            EdgePlacement::Split { dummy, left_page } => {
                if dummy < be.n || dummy >= be.token_count {
                    v.violations.push(format!("edge {ei} split at non-dummy token {dummy}"));
                    continue;
                }
                if dummy_owner[dummy] != usize::MAX {
                    v.violations.push(format!(
                        "dummy {dummy} used by edges {} and {ei}",
                        dummy_owner[dummy]
                    ));
                }
                dummy_owner[dummy] = ei;
                let pd = pos[dummy];
                if !(lo < pd && pd < hi) {
                    v.violations.push(format!(
                        "edge {ei} ({a},{b}): dummy not strictly between endpoints"
                    ));
                    continue;
                }
                arcs.push((lo, pd, left_page, ei));
                arcs.push((pd, hi, left_page.flip(), ei));
            }
        }
    }
    // every dummy token must belong to exactly one edge
    for d in be.n..be.token_count {
        if dummy_owner[d] == usize::MAX {
            v.violations.push(format!("dummy token {d} unused"));
        }
    }
    // per-page interleaving: strict lo1 < lo2 < hi1 < hi2
    for page in [Page::Above, Page::Below] {
        let list: Vec<&(usize, usize, Page, usize)> =
            arcs.iter().filter(|a| a.2 == page).collect();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (a, b) = (list[i], list[j]);
                let (l1, h1, l2, h2) = (a.0, a.1, b.0, b.1);
                let cross = (l1 < l2 && l2 < h1 && h1 < h2) || (l2 < l1 && l1 < h2 && h2 < h1);
                if cross {
                    v.violations.push(format!(
                        "{page:?} arcs of edges {} and {} interleave",
                        a.3, b.3
                    ));
                }
            }
        }
    }
    v
}

/// One-page embedding of an outerplanar graph: an order along which all
/// edges are pairwise non-interleaving. Normalized to start at vertex 0
/// with the smaller second element.
pub fn one_page_embedding(g: &Graph) -> Result<LinearOrder, OrderError> {
    let cyc = outer_order(g).ok_or(OrderError::NotOuterplanar)?;
    Ok(LinearOrder::new(normalize_cycle(cyc)))
}

fn normalize_cycle(mut cyc: Vec<VertexId>) -> Vec<VertexId> {
    let n = cyc.len();
    if n == 0 {
        return cyc;
    }
    let z = cyc.iter().position(|&v| v == 0).unwrap();
    cyc.rotate_left(z);
    if n > 2 && cyc[1] > cyc[n - 1] {
        cyc[1..].reverse();
    }
    cyc
}

/// Splits an outerplanar (more generally 2-degenerate) graph's edges into
/// two forests by orienting along a degeneracy order.
pub fn forest_split(g: &Graph) -> Result<ForestPair, OrderError> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut rank = vec![usize::MAX; n];
    let mut queue: Vec<VertexId> = (0..n).filter(|&v| deg[v] <= 2).collect();
    queue.sort_unstable_by(|a, b| b.cmp(a)); // pop smallest id first
    let mut taken = 0;
    while let Some(v) = queue.pop() {
        if removed[v] || deg[v] > 2 {
            continue;
        }
        removed[v] = true;
        rank[v] = taken;
        taken += 1;
        for &w in &adj[v] {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] <= 2 {
                    // keep ascending pops cheapish; order only affects ties
                    queue.push(w);
                    queue.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
        }
    }
    if taken != n {
        return Err(OrderError::NotTwoDegenerate);
    }
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut out_count = vec![0u8; n];
    // orient each edge out of its earlier-removed endpoint; each vertex has
    // at most two such edges, one per forest
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.sort_by_key(|&(a, b)| {
        let (x, y) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
        (rank[x], rank[y])
    });
    for (a, b) in edges {
        let src = if rank[a] < rank[b] { a } else { b };
        match out_count[src] {
            0 => f1.push((a, b)),
            1 => f2.push((a, b)),
            _ => return Err(OrderError::NotTwoDegenerate),
        }
        out_count[src] += 1;
    }
    f1.sort_unstable();
    f2.sort_unstable();
    Ok(ForestPair { f1, f2 })
}

/// BFS caterpillar order: spine vertex, then its legs, then the next spine
/// vertex. A path uses its own vertex order. Ties break by ascending id.
pub fn caterpillar_order(g: &Graph) -> Result<LinearOrder, OrderError> {
    let n = g.vertex_count();
    let deg = g.degrees();
    if !crate::classes::classify(g).caterpillar {
        return Err(OrderError::NotCaterpillar);
    }
    if n == 1 {
        return Ok(LinearOrder::new(vec![0]));
    }
    let adj = g.adjacency();
    // path: traverse from the smaller endpoint
    if deg.iter().all(|&d| d <= 2) {
        let start = (0..n).filter(|&v| deg[v] == 1).min().unwrap();
        let mut seq = Vec::with_capacity(n);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            seq.push(cur);
            let next = adj[cur].iter().copied().find(|&w| w != prev);
            match next {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        return Ok(LinearOrder::new(seq));
    }
    // spine = non-leaf vertices (a path); walk it from the smaller endpoint
    let spine_set: Vec<bool> = (0..n).map(|v| deg[v] >= 2).collect();
    let spine_deg = |v: usize| adj[v].iter().filter(|&&w| spine_set[w]).count();
    let endpoints: Vec<usize> =
        (0..n).filter(|&v| spine_set[v] && spine_deg(v) <= 1).collect();
    let start = endpoints.iter().copied().min().unwrap();
    let mut seq = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        seq.push(cur);
        let mut legs: Vec<usize> = adj[cur].iter().copied().filter(|&w| !spine_set[w]).collect();
        legs.sort_unstable();
        seq.extend(legs);
        let next = adj[cur].iter().copied().find(|&w| spine_set[w] && w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    debug_assert_eq!(seq.len(), n);
    Ok(LinearOrder::new(seq))
}

/// Two-page book embedding with no spine crossings. With a witness order the
/// assignment is exact (two-coloring of the interleaving conflicts); without
/// one, outerplanar inputs use their outer order and other inputs fall back
/// to a budgeted exact search before reporting `Unknown`.
pub fn two_page_embedding(
    g: &Graph,
    witness: Option<&LinearOrder>,
) -> Result<BookEmbedding, OrderError> {
    if !crate::planar::is_planar(g) {
        return Err(OrderError::NotPlanar);
    }
    let order: LinearOrder = match witness {
        Some(w) => w.clone(),
        None => {
            if let Some(cyc) = outer_order(g) {
                LinearOrder::new(normalize_cycle(cyc))
            } else if let Some(seq) = search_two_page_order(g) {
                LinearOrder::new(seq)
            } else {
                return Err(OrderError::Unknown);
            }
        }
    };
    let pos = order.positions();
    let intervals: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
        .collect();
    let colors = two_color_conflicts(&intervals).ok_or(OrderError::WitnessInvalid)?;
    let placements = colors
        .into_iter()
        .map(|c| EdgePlacement::Whole { page: if c == 0 { Page::Above } else { Page::Below } })
        .collect();
    Ok(BookEmbedding {
        n: g.vertex_count(),
        token_count: g.vertex_count(),
        spine: order.seq().to_vec(),
        placements,
    })
}

fn two_color_conflicts(intervals: &[(usize, usize)]) -> Option<Vec<u8>> {
    let m = intervals.len();
    let mut color = vec![u8::MAX; m];
    for s in 0..m {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let (a, b) = intervals[i];
                let (c, d) = intervals[j];
                let interleave = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                if !interleave {
                    continue;
                }
                if color[j] == u8::MAX {
                    color[j] = 1 - color[i];
                    stack.push(j);
                } else if color[j] == color[i] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Budgeted exact search for an order with a bipartite conflict structure.
fn search_two_page_order(g: &Graph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n <= 3 {
        return Some((0..n).collect());
    }
    const BUDGET: usize = 300_000;
    let mut nodes = 0usize;
    let mut order: Vec<usize> = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    fn placed_ok(g: &Graph, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let iv: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
            .collect();
        conflicts_bipartite(&iv)
    }
    fn rec(
        g: &Graph,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
    ) -> Option<bool> {
        let n = g.vertex_count();
        if order.len() == n {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > BUDGET {
            return None;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            order.push(v);
            used[v] = true;
            if placed_ok(g, order) {
                match rec(g, order, used, nodes) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            order.pop();
            used[v] = false;
        }
        Some(false)
    }
    match rec(g, &mut order, &mut used, &mut nodes) {
        Some(true) => Some(order),
        _ => None,
    }
}

/// Topological book embedding of a planar graph: every edge crosses the
/// spine at most once. Outerplanar inputs come out with zero dummies; other
/// inputs go through triangulation, a canonical insertion order, and a
/// construction that splits each triangulation edge once, routing it below
/// the spine out of its left endpoint and above the spine into its right
/// endpoint.
pub fn topological_book_embedding(g: &Graph) -> Result<BookEmbedding, OrderError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n <= 2 || m == 0 {
        return Ok(BookEmbedding {
            n,
            token_count: n,
            spine: (0..n).collect(),
            placements: vec![EdgePlacement::Whole { page: Page::Above }; m],
        });
    }
    if let Some(cyc) = outer_order(g) {
        let order = normalize_cycle(cyc);
        return Ok(BookEmbedding {
            n,
            token_count: n,
            spine: order,
            placements: vec![EdgePlacement::Whole { page: Page::Above }; m],
        });
    }
    let (emb, added) = triangulate(g).ok_or(OrderError::NotPlanar)?;
    let tri = emb.to_graph();
    let co = canonical_order(&emb);
    let be = chiral_split(&tri, &co, g, &added);
    debug_assert!(validate_book_embedding(g, &be).ok());
    Ok(be)
}

/// The split construction over a canonical insertion order. Every
/// triangulation edge is subdivided once; below-page stubs nest around their
/// left endpoints and above-page halves nest by fan structure.
fn chiral_split(tri: &Graph, co: &CanonicalOrder, g: &Graph, added: &[Edge]) -> BookEmbedding {
    let n = tri.vertex_count();
    let m = tri.edge_count();
    let total_tokens = n + m; // one dummy per triangulation edge
    // r-lists over tokens; dummies numbered n..n+m by tri edge index
    let mut rlist: Vec<VecDeque<usize>> = vec![VecDeque::new(); total_tokens];
    let edge_index = |a: VertexId, b: VertexId| -> usize {
        tri.edges().binary_search(&(a.min(b), a.max(b))).expect("triangulation edge")
    };
    let dummy_of = |e: usize| n + e;
    // per tri edge: (left token, right token); dummy between
    let mut left_of = vec![usize::MAX; m];
    let mut right_of = vec![usize::MAX; m];

    let v1 = co.order[0];
    let v2 = co.order[1];
    // roof edge (v1, v2)
    {
        let e = edge_index(v1, v2);
        rlist[v1].push_front(dummy_of(e));
        left_of[e] = v1;
        right_of[e] = v2;
    }
    for k in 2..n {
        let u = co.order[k];
        let fan = &co.fans[k];
        debug_assert!(fan.len() >= 2);
        let w0 = fan[0];
        // edge (w0, u): dummy then u at the front of r(w0)
        let e0 = edge_index(w0, u);
        rlist[w0].push_front(u);
        rlist[w0].push_front(dummy_of(e0));
        left_of[e0] = w0;
        right_of[e0] = u;
        // tunnels (u, w_i), furthest target nearest u
        for &w in fan.iter().skip(1).rev() {
            let e = edge_index(u, w);
            rlist[u].push_back(dummy_of(e));
            left_of[e] = u;
            right_of[e] = w;
        }
    }

    // flatten
    let mut spine = Vec::with_capacity(total_tokens);
    for root in [v1, v2] {
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            spine.push(t);
            // children emitted left-to-right: push in reverse
            for &c in rlist[t].iter().rev() {
                stack.push(c);
            }
            rlist[t].clear();
        }
    }
    debug_assert_eq!(spine.len(), total_tokens);

    // keep only g's edges; drop added edges and their dummies
    let added_set: std::collections::HashSet<Edge> = added.iter().copied().collect();
    let mut keep_dummy = vec![false; total_tokens];
    let mut placements = Vec::with_capacity(g.edge_count());
    let pos_all = {
        let mut p = vec![usize::MAX; total_tokens];
        for (i, &t) in spine.iter().enumerate() {
            p[t] = i;
        }
        p
    };
    for &(a, b) in g.edges() {
        debug_assert!(!added_set.contains(&(a, b)));
        let e = edge_index(a, b);
        keep_dummy[dummy_of(e)] = true;
        let _ = (left_of[e], right_of[e]);
        debug_assert!(pos_all[left_of[e]] < pos_all[dummy_of(e)]);
        debug_assert!(pos_all[dummy_of(e)] < pos_all[right_of[e]]);
    }
    // renumber kept tokens
    let mut new_id = vec![usize::MAX; total_tokens];
    for v in 0..n {
        new_id[v] = v;
    }
    let mut next = n;
    for &t in &spine {
        if t >= n && keep_dummy[t] {
            new_id[t] = next;
            next += 1;
        }
    }
    let new_spine: Vec<usize> =
        spine.iter().copied().filter(|&t| t < n || keep_dummy[t]).map(|t| new_id[t]).collect();
    for &(a, b) in g.edges() {
        let e = edge_index(a, b);
        // spine-left endpoint of the edge
        let left_first = pos_all[left_of[e]] < pos_all[right_of[e]];
        debug_assert!(left_first);
        let left_is_min = left_of[e] == a.min(b);
        // below out of the left endpoint, above into the right endpoint
        let left_page = if left_is_min { Page::Below } else { Page::Above };
        // left_page refers to the half incident to the *smaller-position*
        // endpoint, which is left_of[e]; record relative to spine order.
        let _ = left_is_min;
        placements.push(EdgePlacement::Split { dummy: new_id[dummy_of(e)], left_page });
    }
    // left_page above refers to the half at the smaller spine position;
    // left_of[e] is spine-left by construction, so it is always Below.
    let placements = placements
        .into_iter()
        .map(|p| match p {
            EdgePlacement::Split { dummy, .. } => {
                EdgePlacement::Split { dummy, left_page: Page::Below }
            }
            w => w,
        })
        .collect();
    BookEmbedding { n, token_count: next, spine: new_spine, placements }
}

/// Structure extraction for the outerpath drawing: internal triangulation,
/// upper/lower path split at the two degree-2 vertices, and the spanning
/// caterpillar left over after removing both path edge sets.
pub fn outerpath_structure(g: &Graph) -> Result<OuterpathStructure, OrderError> {
    let n = g.vertex_count();
    if n < 4 || !crate::classes::classify(g).outerpath {
        return Err(OrderError::NotOuterpath);
    }
    let (tri_edges, added, cyc) = triangulate_outerpath(g)?;
    let tri = build_graph(n, &tri_edges).expect("internal triangulation is simple");
    let deg = tri.degrees();
    let two: Vec<usize> = (0..n).filter(|&v| deg[v] == 2).collect();
    if two.len() != 2 {
        return Err(OrderError::NotOuterpath);
    }
    // rotate the outer cycle to start at one degree-2 vertex; the other one
    // ends the upper path
    let mut cyc = cyc;
    let z = cyc.iter().position(|&v| v == two[0].min(two[1])).unwrap();
    cyc.rotate_left(z);
    let j = cyc.iter().position(|&v| v == two[0].max(two[1])).unwrap();
    let upper: Vec<VertexId> = cyc[..=j].to_vec();
    let lower: Vec<VertexId> = cyc[j + 1..].to_vec();
    if lower.is_empty() {
        return Err(OrderError::NotOuterpath);
    }
    // caterpillar = triangulated edges minus upper/lower path edges
    let mut path_edges: std::collections::HashSet<Edge> = std::collections::HashSet::new();
    for w in upper.windows(2).chain(lower.windows(2)) {
        path_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
    }
    let caterpillar_edges: Vec<Edge> =
        tri.edges().iter().copied().filter(|e| !path_edges.contains(e)).collect();
    let cat = build_graph(n, &caterpillar_edges).expect("subset of a simple graph");
    let caterpillar_order = caterpillar_order(&cat).map_err(|_| OrderError::NotOuterpath)?;
    Ok(OuterpathStructure {
        upper,
        lower,
        triangulated: tri,
        added,
        caterpillar_edges,
        caterpillar_order,
    })
}

/// Triangulates the bounded faces of an outerpath so that the weak dual
/// stays a path. Returns (all edges, added edges, outer cycle order).
#[allow(clippy::type_complexity)]
fn triangulate_outerpath(g: &Graph) -> Result<(Vec<Edge>, Vec<Edge>, Vec<VertexId>), OrderError> {
    let n = g.vertex_count();
    let emb = crate::classes::outerplane_embedding(g).ok_or(OrderError::NotOuterplanar)?;
    let cyc = outer_order(g).ok_or(OrderError::NotOuterplanar)?;
    let cyc = normalize_cycle(cyc);
    // bounded faces of the outerplane embedding
    let faces = emb.faces();
    let mut outer_face = usize::MAX;
    let mut best = 0;
    for (i, f) in faces.iter().enumerate() {
        let mut seen = vec![false; n];
        let mut distinct = 0;
        for &a in f {
            let v = emb.arc_from(a);
            if !seen[v] {
                seen[v] = true;
                distinct += 1;
            }
        }
        if distinct == n && f.len() >= best {
            best = f.len();
            outer_face = i;
        }
    }
    if outer_face == usize::MAX {
        return Err(OrderError::NotOuterpath);
    }
    let outer_cycle_edges: std::collections::HashSet<Edge> = cyc
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = cyc[(i + 1) % n];
            (v.min(w), v.max(w))
        })
        .collect();
    let mut all_edges: Vec<Edge> = g.edges().to_vec();
    let mut added: Vec<Edge> = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if i == outer_face || f.len() <= 3 {
            continue;
        }
        let verts: Vec<VertexId> = f.iter().map(|&a| emb.arc_from(a)).collect();
        // chords of this face = boundary edges not on the outer cycle
        let k = verts.len();
        let chord_pos: Vec<usize> = (0..k)
            .filter(|&i| {
                let (a, b) = (verts[i], verts[(i + 1) % k]);
                !outer_cycle_edges.contains(&(a.min(b), a.max(b)))
            })
            .collect();
        match chord_pos.len() {
            0 | 1 => {
                // rotate a chord (if any) to the front, then fan from its
                // first endpoint: the chord sits in an end triangle
                let s = chord_pos.first().copied().unwrap_or(0);
                let rot: Vec<VertexId> = (0..k).map(|i| verts[(s + i) % k]).collect();
                for t in 2..k - 1 {
                    added.push((rot[0].min(rot[t]), rot[0].max(rot[t])));
                }
            }
            2 => {
                // strip between the two chords so each lands in an end
                // triangle of the refined dual path
                let (c1, c2) = (chord_pos[0], chord_pos[1]);
                let rot: Vec<VertexId> = (0..k).map(|i| verts[(c1 + i) % k]).collect();
                let c2r = (c2 + k - c1) % k;
                // side1: rot[1..=c2r], side2: rot[c2r+1..] ++ rot[0]
                let mut i = 1usize; // along side1 from rot[1]
                let mut j = 0usize; // along side2 backwards from rot[0]
                let side2: Vec<VertexId> =
                    std::iter::once(rot[0]).chain(rot[c2r + 1..].iter().copied().rev()).collect();
                // current strip corners: side1[i], side2[j]
                let diag = |a: VertexId, b: VertexId, added: &mut Vec<Edge>| {
                    if a != b {
                        let e = (a.min(b), a.max(b));
                        added.push(e);
                    }
                };
                // zig-zag until both reach the chord2 edge (rot[c2r], rot[c2r+1])
                while i < c2r || j + 1 < side2.len() {
                    if i < c2r {
                        i += 1;
                        diag(rot[i], side2[j], &mut added);
                    }
                    if j + 1 < side2.len() && (i < c2r || j + 2 < side2.len() || i == c2r) {
                        // advance the second side unless it would duplicate
                        // the chord edge itself
                        if !(i == c2r && j + 1 == side2.len() - 1) {
                            j += 1;
                            diag(rot[i], side2[j], &mut added);
                        } else {
                            break;
                        }
                    }
                }
            }
            _ => return Err(OrderError::NotOuterpath),
        }
    }
    // dedup: zig-zag may regenerate existing boundary edges on tiny faces
    let existing: std::collections::HashSet<Edge> = all_edges.iter().copied().collect();
    let mut added_clean = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in added {
        if !existing.contains(&e) && seen.insert(e) {
            added_clean.push(e);
        }
    }
    all_edges.extend(added_clean.iter().copied());
    Ok((all_edges, added_clean, cyc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn c(n: usize) -> Graph {
        let e: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build_graph(n, &e).unwrap()
    }

    #[test]
    fn one_page_triangle() {
        let g = c(3);
        let o = one_page_embedding(&g).unwrap();
        assert_eq!(o.seq(), &[0, 1, 2]);
    }

    #[test]
    fn one_page_square_with_chord() {
        let g = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let o = one_page_embedding(&g).unwrap();
        // all edges non-interleaving along o
        let pos = o.positions();
        let iv: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
            .collect();
        for i in 0..iv.len() {
            for j in i + 1..iv.len() {
                let (a, b) = iv[i];
                let (x, y) = iv[j];
                assert!(!((a < x && x < b && b < y) || (x < a && a < y && y < b)));
            }
        }
    }

    #[test]
    fn one_page_rejects_k4() {
        let mut e = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e.push((a, b));
            }
        }
        let k4 = build_graph(4, &e).unwrap();
        assert_eq!(one_page_embedding(&k4), Err(OrderError::NotOuterplanar));
    }

    #[test]
    fn forest_split_tree_and_fan() {
        let tree = build_graph(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let fp = forest_split(&tree).unwrap();
        assert_eq!(fp.f1.len() + fp.f2.len(), 3);
        let square_chord = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let fp = forest_split(&square_chord).unwrap();
        assert_eq!(fp.f1.len() + fp.f2.len(), 5);
        for f in [&fp.f1, &fp.f2] {
            let sub = build_graph(4, f).unwrap();
            assert!(sub.is_forest());
        }
    }

    #[test]
    fn caterpillar_order_path_is_identity() {
        let p4 = build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(caterpillar_order(&p4).unwrap().seq(), &[0, 1, 2, 3]);
    }

    #[test]
    fn caterpillar_order_star_center_first() {
        let star = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(caterpillar_order(&star).unwrap().seq(), &[0, 1, 2, 3]);
    }

    #[test]
    fn caterpillar_order_legs_contiguous() {
        // spine 0-1 with legs 2,3 on 1
        let g = build_graph(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let o = caterpillar_order(&g).unwrap();
        // invariant: legs of a spine vertex sit between it and the next
        // spine vertex (here: after 1)
        let seq = o.seq();
        let p1 = seq.iter().position(|&v| v == 1).unwrap();
        assert!(seq[p1 + 1..].contains(&2) && seq[p1 + 1..].contains(&3));
    }

    #[test]
    fn two_page_c6_zero_dummies() {
        let g = c(6);
        let be = two_page_embedding(&g, Some(&LinearOrder::identity(6))).unwrap();
        assert_eq!(be.dummy_count(), 0);
        assert!(validate_book_embedding(&g, &be).ok());
    }

    #[test]
    fn two_page_k4_splits_conflict() {
        let mut e = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e.push((a, b));
            }
        }
        let k4 = build_graph(4, &e).unwrap();
        let be = two_page_embedding(&k4, Some(&LinearOrder::identity(4))).unwrap();
        assert!(validate_book_embedding(&k4, &be).ok());
        // (0,2) and (1,3) interleave: opposite pages
        let e02 = k4.edges().iter().position(|&e| e == (0, 2)).unwrap();
        let e13 = k4.edges().iter().position(|&e| e == (1, 3)).unwrap();
        match (be.placements[e02], be.placements[e13]) {
            (EdgePlacement::Whole { page: p1 }, EdgePlacement::Whole { page: p2 }) => {
                assert_ne!(p1, p2);
            }
            _ => panic!("expected whole placements"),
        }
    }

    #[test]
    fn two_page_rejects_k5() {
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let k5 = build_graph(5, &e).unwrap();
        assert_eq!(two_page_embedding(&k5, None), Err(OrderError::NotPlanar));
    }

    #[test]
    fn topological_c4_zero_dummies() {
        let g = c(4);
        let be = topological_book_embedding(&g).unwrap();
        assert_eq!(be.dummy_count(), 0);
        assert!(validate_book_embedding(&g, &be).ok());
    }

    #[test]
    fn topological_k4_valid() {
        let mut e = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e.push((a, b));
            }
        }
        let k4 = build_graph(4, &e).unwrap();
        let be = topological_book_embedding(&k4).unwrap();
        let report = validate_book_embedding(&k4, &be);
        assert!(report.ok(), "{:?}", report.violations);
        assert!(be.dummy_count() <= k4.edge_count());
    }

    #[test]
    fn topological_octahedron_valid() {
        let oct = build_graph(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)],
        )
        .unwrap();
        let be = topological_book_embedding(&oct).unwrap();
        let report = validate_book_embedding(&oct, &be);
        assert!(report.ok(), "{:?}", report.violations);
        assert!(be.dummy_count() <= oct.edge_count());
    }

    #[test]
    fn validate_flags_interleaving() {
        let g = build_graph(4, &[(0, 2), (1, 3)]).unwrap();
        let be = BookEmbedding {
            n: 4,
            token_count: 4,
            spine: vec![0, 1, 2, 3],
            placements: vec![
                EdgePlacement::Whole { page: Page::Above },
                EdgePlacement::Whole { page: Page::Above },
            ],
        };
        assert!(!validate_book_embedding(&g, &be).ok());
    }

    #[test]
    fn outerpath_structure_square() {
        let g = c(4);
        let s = outerpath_structure(&g).unwrap();
        assert_eq!(s.upper.len() + s.lower.len(), 4);
        assert_eq!(s.triangulated.edge_count(), 5);
        assert_eq!(s.added.len(), 1);
        // caterpillar spans all vertices
        let cat = build_graph(4, &s.caterpillar_edges).unwrap();
        assert!(cat.is_connected());
    }
}
