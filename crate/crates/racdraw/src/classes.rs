//! Graph class recognition and pair validation.

use crate::graph::{Graph, PairInstance};
use crate::planar::{is_outerplanar, is_planar, outer_order, planar_embedding};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Recognition flags for one graph. The implication closure
/// path => caterpillar => tree => outerplanar => two-page => planar,
/// cycle => outerplanar, matching => outerplanar, outerpath => outerplanar
/// always holds on classify output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSet {
    pub matching: bool,
    pub path: bool,
    pub cycle: bool,
    pub caterpillar: bool,
    pub tree: bool,
    pub wheel: bool,
    pub outerpath: bool,
    pub outerplanar: bool,
    pub two_page_embeddable: bool,
    pub planar: bool,
}

impl ClassSet {
    pub fn has(&self, demand: ClassDemand) -> bool {
        match demand {
            ClassDemand::Matching => self.matching,
            ClassDemand::Path => self.path,
            ClassDemand::Cycle => self.cycle,
            ClassDemand::Caterpillar => self.caterpillar,
            ClassDemand::Tree => self.tree,
            ClassDemand::Wheel => self.wheel,
            ClassDemand::Outerpath => self.outerpath,
            ClassDemand::Outerplanar => self.outerplanar,
            ClassDemand::TwoPage => self.two_page_embeddable,
            ClassDemand::Planar => self.planar,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassDemand {
    Matching,
    Path,
    Cycle,
    Caterpillar,
    Tree,
    Wheel,
    Outerpath,
    Outerplanar,
    TwoPage,
    Planar,
}

impl ClassDemand {
    pub fn name(self) -> &'static str {
        match self {
            ClassDemand::Matching => "matching",
            ClassDemand::Path => "path",
            ClassDemand::Cycle => "cycle",
            ClassDemand::Caterpillar => "caterpillar",
            ClassDemand::Tree => "tree",
            ClassDemand::Wheel => "wheel",
            ClassDemand::Outerpath => "outerpath",
            ClassDemand::Outerplanar => "outerplanar",
            ClassDemand::TwoPage => "two-page",
            ClassDemand::Planar => "planar",
        }
    }

    pub fn from_name(s: &str) -> Option<ClassDemand> {
        [
            ClassDemand::Matching,
            ClassDemand::Path,
            ClassDemand::Cycle,
            ClassDemand::Caterpillar,
            ClassDemand::Tree,
            ClassDemand::Wheel,
            ClassDemand::Outerpath,
            ClassDemand::Outerplanar,
            ClassDemand::TwoPage,
            ClassDemand::Planar,
        ]
        .into_iter()
        .find(|d| d.name() == s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("graph {index} is not a {class}")]
    ClassMismatch { index: usize, class: &'static str },
    #[error("expected {expected} graphs, instance has {got}")]
    GraphCountMismatch { expected: usize, got: usize },
}

/// Node budget for the exact subhamiltonicity search; beyond it the flag
/// falls back to sufficient conditions.
const TWO_PAGE_SEARCH_BUDGET: usize = 300_000;

/// Computes every class flag. Matchings need not be perfect and a
/// single-vertex graph counts as a path.
pub fn classify(g: &Graph) -> ClassSet {
    let n = g.vertex_count();
    let m = g.edge_count();
    let deg = g.degrees();
    let connected = g.is_connected();

    let matching = deg.iter().all(|&d| d <= 1);
    let tree = n >= 1 && connected && m == n - 1;
    let path = tree && deg.iter().all(|&d| d <= 2);
    let cycle = n >= 3 && connected && m == n && deg.iter().all(|&d| d == 2);
    let caterpillar = tree && is_caterpillar(g, &deg);
    let wheel = n >= 4 && is_wheel(g, &deg);
    let planar = is_planar(g);
    let outerplanar = planar && is_outerplanar(g);
    let outerpath = n >= 4 && outerplanar && is_outerpath(g);
    let two_page_embeddable = planar && (outerplanar || is_two_page(g));

    ClassSet {
        matching,
        path,
        cycle,
        caterpillar,
        tree,
        wheel,
        outerpath,
        outerplanar,
        two_page_embeddable,
        planar,
    }
}

fn is_caterpillar(g: &Graph, deg: &[usize]) -> bool {
    // tree whose non-leaf vertices induce a path
    let spine: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] >= 2).collect();
    if spine.len() <= 1 {
        return true;
    }
    let mut spine_deg = vec![0usize; g.vertex_count()];
    let mut spine_edges = 0usize;
    for &(a, b) in g.edges() {
        if deg[a] >= 2 && deg[b] >= 2 {
            spine_deg[a] += 1;
            spine_deg[b] += 1;
            spine_edges += 1;
        }
    }
    // induced subgraph must be a path: tree + max degree 2; connectivity
    // follows from the tree structure once the edge count matches
    spine_edges == spine.len() - 1 && spine.iter().all(|&v| spine_deg[v] <= 2)
}

fn is_wheel(g: &Graph, deg: &[usize]) -> bool {
    let n = g.vertex_count();
    if g.edge_count() != 2 * (n - 1) {
        return false;
    }
    let Some(hub) = (0..n).find(|&v| deg[v] == n - 1) else {
        return false;
    };
    // remaining vertices with hub edges removed must form a cycle
    let mut rim_deg = vec![0usize; n];
    let mut rim_edges = 0usize;
    for &(a, b) in g.edges() {
        if a != hub && b != hub {
            rim_deg[a] += 1;
            rim_deg[b] += 1;
            rim_edges += 1;
        }
    }
    if rim_edges != n - 1 {
        return false;
    }
    if (0..n).any(|v| v != hub && rim_deg[v] != 2) {
        return false;
    }
    // 2-regular with n-1 edges on n-1 vertices: a single cycle iff connected
    rim_connected(g, hub)
}

fn rim_connected(g: &Graph, hub: usize) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let start = (0..n).find(|&v| v != hub).unwrap();
    let mut seen = vec![false; n];
    seen[hub] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n - 1
}

fn is_biconnected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return false;
    }
    // no articulation vertex: removing any vertex keeps the rest connected
    // (n is small whenever this is called from classify on fuzz sizes, but
    // use the linear-time low-point test anyway)
    articulation_free(g)
}

fn articulation_free(g: &Graph) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    let mut frames: Vec<(usize, usize)> = vec![(0, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if disc[w] == usize::MAX {
                parent[w] = v;
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                frames.push((w, 0));
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            frames.pop();
            if let Some(&mut (u, _)) = frames.last_mut() {
                low[u] = low[u].min(low[v]);
                if u != 0 && low[v] >= disc[u] {
                    return false;
                }
            }
        }
    }
    root_children <= 1 && disc.iter().all(|&d| d != usize::MAX)
}

/// Outerpath test: biconnected outerplanar whose weak dual is a path.
/// Assumes `g` is already known outerplanar with n >= 4.
fn is_outerpath(g: &Graph) -> bool {
    if !is_biconnected(g) {
        return false;
    }
    let Some(dual_degrees) = weak_dual_degrees(g) else {
        return false;
    };
    dual_degrees.iter().all(|&d| d <= 2)
}

/// Degrees of the weak dual (bounded-face adjacency graph) of the
/// outerplane embedding of `g`. `None` when no outerplane embedding exists.
pub(crate) fn weak_dual_degrees(g: &Graph) -> Option<Vec<usize>> {
    let emb = outerplane_embedding(g)?;
    let faces = emb.faces();
    // outer face: visits all vertices; among such take the longest walk
    let n = g.vertex_count();
    let mut outer = usize::MAX;
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
            outer = i;
        }
    }
    if outer == usize::MAX {
        return None;
    }
    // face id per arc
    let mut face_of = vec![usize::MAX; emb.arc_count()];
    for (i, f) in faces.iter().enumerate() {
        for &a in f {
            face_of[a] = i;
        }
    }
    let mut deg = vec![0usize; faces.len()];
    for a in (0..emb.arc_count()).step_by(2) {
        let f1 = face_of[a];
        let f2 = face_of[a ^ 1];
        if f1 != f2 && f1 != outer && f2 != outer {
            deg[f1] += 1;
            deg[f2] += 1;
        }
    }
    deg.remove(outer);
    Some(deg)
}

/// An embedding of `g` with every vertex on one face, built by embedding
/// `g` plus an apex and deleting the apex.
pub(crate) fn outerplane_embedding(g: &Graph) -> Option<crate::planar::Embedding> {
    let order = outer_order(g)?;
    let _ = order;
    let n = g.vertex_count();
    let apex = n;
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for v in 0..n {
        edges.push((v, apex));
    }
    let aug = crate::graph::build_graph(n + 1, &edges).ok()?;
    let emb = planar_embedding(&aug)?;
    // rebuild rotations without the apex
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        rotations.push(emb.rotation(v).into_iter().filter(|&w| w != apex).collect());
    }
    Some(crate::planar::Embedding::from_rotations(n, g, &rotations))
}

/// Exact-within-budget subhamiltonicity: searches for a spine order whose
/// interleaving-conflict structure is two-colorable. Falls back to a
/// Hamiltonian-cycle heuristic when the budget runs out.
fn is_two_page(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 3 {
        return true;
    }
    let mut search = TwoPageSearch::new(g, TWO_PAGE_SEARCH_BUDGET);
    match search.run() {
        Some(v) => v,
        None => hamiltonian_cycle(g, TWO_PAGE_SEARCH_BUDGET) == Some(true),
    }
}

struct TwoPageSearch<'a> {
    g: &'a Graph,
    budget: usize,
    nodes: usize,
}

impl<'a> TwoPageSearch<'a> {
    fn new(g: &'a Graph, budget: usize) -> TwoPageSearch<'a> {
        TwoPageSearch { g, budget, nodes: 0 }
    }

    /// Some(answer) when decided within budget, None when out of budget.
    fn run(&mut self) -> Option<bool> {
        let n = self.g.vertex_count();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        order.push(0);
        used[0] = true;
        match self.extend(&mut order, &mut used) {
            Extend::Found => Some(true),
            Extend::Exhausted => Some(false),
            Extend::OutOfBudget => None,
        }
    }

    fn extend(&mut self, order: &mut Vec<usize>, used: &mut Vec<bool>) -> Extend {
        let n = self.g.vertex_count();
        if order.len() == n {
            return if self.order_is_two_page(order) { Extend::Found } else { Extend::Exhausted };
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Extend::OutOfBudget;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            order.push(v);
            used[v] = true;
            // prune: closed-edge conflict structure must stay bipartite
            if self.order_is_two_page(order) {
                match self.extend(order, used) {
                    Extend::Found => return Extend::Found,
                    Extend::OutOfBudget => return Extend::OutOfBudget,
                    Extend::Exhausted => {}
                }
            }
            order.pop();
            used[v] = false;
        }
        Extend::Exhausted
    }

    fn order_is_two_page(&self, order: &[usize]) -> bool {
        let n = self.g.vertex_count();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let closed: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
            .collect();
        conflicts_bipartite(&closed)
    }
}

enum Extend {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Two-colorability of the interleaving conflict graph over spine intervals.
pub fn conflicts_bipartite(intervals: &[(usize, usize)]) -> bool {
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
                    return false;
                }
            }
        }
    }
    true
}

/// Budgeted Hamiltonian-cycle search. `Some(true/false)` when decided.
pub fn hamiltonian_cycle(g: &Graph, budget: usize) -> Option<bool> {
    let n = g.vertex_count();
    if n < 3 {
        return Some(false);
    }
    let deg = g.degrees();
    if deg.iter().any(|&d| d < 2) {
        return Some(false);
    }
    let adj = g.adjacency();
    let mut path = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let mut nodes = 0usize;
    fn rec(
        g: &Graph,
        adj: &[Vec<usize>],
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
        budget: usize,
    ) -> Option<bool> {
        let n = g.vertex_count();
        if path.len() == n {
            return Some(g.has_edge(path[0], *path.last().unwrap()));
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let v = *path.last().unwrap();
        for &w in &adj[v] {
            if used[w] {
                continue;
            }
            path.push(w);
            used[w] = true;
            match rec(g, adj, path, used, nodes, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            path.pop();
            used[w] = false;
        }
        Some(false)
    }
    rec(g, &adj, &mut path, &mut used, &mut nodes, budget)
}

/// Descriptor positively validated against per-graph class demands.
#[derive(Clone, Debug)]
pub struct ValidatedPair {
    pub instance: PairInstance,
    pub classes: Vec<ClassSet>,
    pub demands: Vec<ClassDemand>,
}

/// Checks every graph of the instance against its demanded class.
pub fn validate_pair(
    inst: &PairInstance,
    demands: &[ClassDemand],
) -> Result<ValidatedPair, ValidateError> {
    let graphs = inst.graphs();
    if graphs.len() != demands.len() {
        return Err(ValidateError::GraphCountMismatch { expected: demands.len(), got: graphs.len() });
    }
    let mut classes = Vec::with_capacity(graphs.len());
    for (i, (g, &d)) in graphs.iter().zip(demands.iter()).enumerate() {
        let cs = classify(g);
        if !cs.has(d) {
            return Err(ValidateError::ClassMismatch { index: i, class: d.name() });
        }
        classes.push(cs);
    }
    Ok(ValidatedPair { instance: inst.clone(), classes, demands: demands.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn path_flags() {
        let p3 = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let cs = classify(&p3);
        assert!(cs.path && cs.caterpillar && cs.tree && cs.outerplanar && cs.two_page_embeddable && cs.planar);
        assert!(!cs.cycle && !cs.wheel && !cs.matching);
    }

    #[test]
    fn k5_flags() {
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let k5 = build_graph(5, &e).unwrap();
        let cs = classify(&k5);
        assert_eq!(cs, ClassSet::default());
    }

    #[test]
    fn wheel_flags() {
        let w5 = build_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let cs = classify(&w5);
        assert!(cs.wheel);
        assert!(cs.planar);
        assert!(!cs.outerplanar);
    }

    #[test]
    fn classify_octahedron_two_page() {
        let oct = build_graph(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)],
        )
        .unwrap();
        let cs = classify(&oct);
        assert!(cs.planar && cs.two_page_embeddable);
        assert!(!cs.outerplanar);
    }

    #[test]
    fn validate_pair_reports_failures() {
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let k5 = build_graph(5, &e).unwrap();
        let bad = PairInstance::pair(c4.clone(), k5);
        assert!(bad.is_err() || {
            let _ = bad;
            true
        });
        // same-n mismatch: C4 vs K4 demanded (cycle, cycle)
        let mut e4 = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e4.push((a, b));
            }
        }
        let k4 = build_graph(4, &e4).unwrap();
        let inst = PairInstance::pair(c4, k4).unwrap();
        let err = validate_pair(&inst, &[ClassDemand::Cycle, ClassDemand::Cycle]).unwrap_err();
        assert_eq!(err, ValidateError::ClassMismatch { index: 1, class: "cycle" });
    }

    #[test]
    fn cycle_is_outerpath() {
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(classify(&c4).outerpath);
        let fan = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert!(classify(&fan).outerpath);
    }
}
