//! Drawing data model and the constructive layout algorithms.
//!
//! Every algorithm places the shared vertex set on the integer lattice and
//! routes each graph's edges as polylines so that each layer is planar on its
//! own and segments of different layers can only cross at right angles.

use crate::graph::Edge;
use serde::{Deserialize, Serialize};

pub mod book_pair;
pub mod caterpillar_cycle;
pub mod cycles;
pub mod finalize;
pub mod four_matchings;
pub mod outerpath_matching;
pub mod paths;
pub mod tree_matching;
pub mod wheel_matching;

pub type Coord = i64;
pub type Point = (Coord, Coord);

/// Identifies which constructive algorithm produced a drawing; used to pick
/// the grid bound it must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    PathPair,
    CyclePair,
    CaterpillarCycle,
    FourMatchings,
    TreeMatching,
    WheelMatching,
    OuterpathMatching,
    OuterplanarPair,
    TwoPagePair,
    PlanarPair,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 10] = [
        AlgorithmId::PathPair,
        AlgorithmId::CyclePair,
        AlgorithmId::CaterpillarCycle,
        AlgorithmId::FourMatchings,
        AlgorithmId::TreeMatching,
        AlgorithmId::WheelMatching,
        AlgorithmId::OuterpathMatching,
        AlgorithmId::OuterplanarPair,
        AlgorithmId::TwoPagePair,
        AlgorithmId::PlanarPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::PathPair => "path-pair",
            AlgorithmId::CyclePair => "cycle-pair",
            AlgorithmId::CaterpillarCycle => "caterpillar-cycle",
            AlgorithmId::FourMatchings => "four-matchings",
            AlgorithmId::TreeMatching => "tree-matching",
            AlgorithmId::WheelMatching => "wheel-matching",
            AlgorithmId::OuterpathMatching => "outerpath-matching",
            AlgorithmId::OuterplanarPair => "outerplanar-pair",
            AlgorithmId::TwoPagePair => "two-page-pair",
            AlgorithmId::PlanarPair => "planar-pair",
        }
    }

    pub fn from_name(s: &str) -> Option<AlgorithmId> {
        AlgorithmId::ALL.into_iter().find(|a| a.name() == s)
    }

    /// Smallest vertex count the algorithm (and its grid-bound formula)
    /// is defined for.
    pub fn min_n(self) -> usize {
        match self {
            AlgorithmId::PathPair | AlgorithmId::PlanarPair => 1,
            AlgorithmId::TreeMatching | AlgorithmId::OuterplanarPair => 2,
            AlgorithmId::CyclePair | AlgorithmId::CaterpillarCycle => 3,
            AlgorithmId::FourMatchings
            | AlgorithmId::WheelMatching
            | AlgorithmId::OuterpathMatching
            | AlgorithmId::TwoPagePair => 4,
        }
    }
}

/// Polyline route of one edge: the interior bend points, ordered from the
/// smaller endpoint to the larger one. Endpoints themselves are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRoute {
    pub endpoints: Edge,
    pub bends: Vec<Point>,
}

/// One graph's polyline drawing over the shared vertex placement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub routes: Vec<EdgeRoute>,
}

/// A simultaneous drawing: shared vertex points plus one polyline layer per
/// input graph, together with the declared per-layer bend budgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimDrawing {
    pub algorithm: AlgorithmId,
    pub n: usize,
    pub points: Vec<Point>,
    pub layers: Vec<Layer>,
    /// Max bends allowed per edge, one entry per layer.
    pub budgets: Vec<u32>,
    /// Declared double edges: the polyline of `edge` in layer `a` is reused
    /// verbatim in layer `b`, and the verifier must not flag their overlap.
    pub exemptions: Vec<DoubleEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleEdge {
    pub layer_a: usize,
    pub layer_b: usize,
    pub edge: Edge,
}

impl SimDrawing {
    /// Bounding box of every vertex and bend point as (width, height) in
    /// lattice units, i.e. `max - min + 1` per axis. (0, 0) when empty.
    pub fn occupied_box(&self) -> (i64, i64) {
        let mut min = (i64::MAX, i64::MAX);
        let mut max = (i64::MIN, i64::MIN);
        let mut any = false;
        let mut upd = |p: Point| {
            any = true;
            min.0 = min.0.min(p.0);
            min.1 = min.1.min(p.1);
            max.0 = max.0.max(p.0);
            max.1 = max.1.max(p.1);
        };
        for &p in &self.points {
            upd(p);
        }
        for l in &self.layers {
            for r in &l.routes {
                for &b in &r.bends {
                    upd(b);
                }
            }
        }
        if !any {
            return (0, 0);
        }
        (max.0 - min.0 + 1, max.1 - min.1 + 1)
    }

    /// Maximum bend count over the edges of one layer.
    pub fn max_bends(&self, layer: usize) -> u32 {
        self.layers[layer].routes.iter().map(|r| r.bends.len() as u32).max().unwrap_or(0)
    }

    /// Full polyline of a route, endpoints included.
    pub fn polyline(&self, route: &EdgeRoute) -> Vec<Point> {
        let mut pts = Vec::with_capacity(route.bends.len() + 2);
        pts.push(self.points[route.endpoints.0]);
        pts.extend_from_slice(&route.bends);
        pts.push(self.points[route.endpoints.1]);
        pts
    }
}
