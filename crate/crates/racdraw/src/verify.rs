//! Brute-force geometric oracle for simultaneous drawings.
//!
//! All predicates are decided in exact integer arithmetic (cross and dot
//! products over i128); there is no tolerance parameter anywhere. A crossing
//! is right-angled iff the dot product of the two direction vectors is
//! exactly zero.

use crate::graph::Edge;
use crate::layout::{AlgorithmId, Point, SimDrawing};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown algorithm id {0}")]
    UnknownAlgorithm(String),
    #[error("n = {n} below minimum {min} for {alg}")]
    BelowMinimum { alg: &'static str, n: usize, min: usize },
    #[error("malformed drawing: {0}")]
    Malformed(String),
}

/// Exact rational number `num / den`, normalized with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let s = if den < 0 { -1 } else { 1 };
        Rational { num: s * num / g, den: s * den / g }
    }

    pub fn from_int(v: i64) -> Rational {
        Rational { num: v as i128, den: 1 }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if a == 0 && b == 0 {
        return 1;
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact intersection point.
pub type RationalPoint = (Rational, Rational);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleClass {
    /// Proper crossing with direction dot product exactly zero.
    Right,
    /// Proper crossing at any other angle.
    NonRight,
    /// Closed segments meet in exactly one point that is an endpoint of at
    /// least one of them.
    Touching,
    /// Collinear intersection of positive length.
    Overlap,
}

/// One geometric incident between two segments of the drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub layers: (usize, usize),
    pub edges: (Edge, Edge),
    pub point: RationalPoint,
    pub class: AngleClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    IntraLayerCrossing,
    NonRightCrossing,
    Overlap,
    Touching,
    VertexOnSegment,
    CoincidentVertices,
    BudgetExceeded,
    BoundExceeded,
    ZeroLengthSegment,
    SelfIntersection,
}

/// Verifier verdict for one drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingReport {
    /// Intra-layer crossing/overlap events, all of which are violations.
    pub intra_crossings: Vec<CrossingEvent>,
    /// Inter-layer proper crossings, right or not.
    pub inter_crossings: Vec<CrossingEvent>,
    pub overlaps: Vec<CrossingEvent>,
    pub violations: Vec<Violation>,
    /// Max bends per edge, one entry per layer.
    pub max_bends: Vec<u32>,
    pub bounding_box: (i64, i64),
    pub grid_bound: (i64, i64),
    pub integral: bool,
    pub pass: bool,
}

/// Grid bound (width, height) guaranteed by each algorithm for instances on
/// `n` vertices. The wheel bound's fractional width is floored after scaling.
pub fn bound_formula(alg: AlgorithmId, n: usize) -> Result<(i64, i64), VerifyError> {
    let min = alg.min_n();
    if n < min {
        return Err(VerifyError::BelowMinimum { alg: alg.name(), n, min });
    }
    let n = n as i64;
    Ok(match alg {
        AlgorithmId::PathPair | AlgorithmId::CyclePair | AlgorithmId::FourMatchings => (2 * n, 2 * n),
        AlgorithmId::CaterpillarCycle => (2 * n - 1, 2 * n),
        AlgorithmId::TreeMatching => (n, n - 1),
        AlgorithmId::WheelMatching => (3 * n / 2 - 1, n + 2),
        AlgorithmId::OuterpathMatching => (3 * n - 2, 3 * n - 2),
        AlgorithmId::OuterplanarPair => (7 * n - 10, 7 * n - 10),
        AlgorithmId::TwoPagePair => (11 * n - 32, 11 * n - 32),
        AlgorithmId::PlanarPair => (14 * n - 26, 14 * n - 26),
    })
}

#[derive(Clone, Copy)]
struct Seg {
    layer: usize,
    edge_idx: usize,
    edge: Edge,
    seg_idx: usize,
    p: Point,
    q: Point,
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

fn dot_dirs(a: Point, b: Point, c: Point, d: Point) -> i128 {
    let d1 = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
    let d2 = ((d.0 - c.0) as i128, (d.1 - c.1) as i128);
    d1.0 * d2.0 + d1.1 * d2.1
}

/// Raw exact intersection of two closed non-degenerate segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegIntersection {
    None,
    /// Interior-interior crossing, `right` per the exact dot product.
    Proper { point: RationalPoint, right: bool },
    /// Single shared point where at least one segment ends.
    Touch { point: RationalPoint },
    /// Collinear overlap of positive length.
    Overlap { from: Point, to: Point },
}

/// Exact classification of the intersection of closed segments `p1p2`
/// and `q1q2`. Segments must be non-degenerate.
pub fn intersect_segments(p1: Point, p2: Point, q1: Point, q2: Point) -> SegIntersection {
    let d1 = ((p2.0 - p1.0) as i128, (p2.1 - p1.1) as i128);
    let d2 = ((q2.0 - q1.0) as i128, (q2.1 - q1.1) as i128);
    let denom = d1.0 * d2.1 - d1.1 * d2.0;
    if denom != 0 {
        // t = cross(q1-p1, d2) / denom, u = cross(q1-p1, d1) / denom
        let w = ((q1.0 - p1.0) as i128, (q1.1 - p1.1) as i128);
        let t_num = w.0 * d2.1 - w.1 * d2.0;
        let u_num = w.0 * d1.1 - w.1 * d1.0;
        // in [0,1] test with exact signs
        let inside = |num: i128, den: i128| -> Option<(bool, bool)> {
            // returns (in closed range, strictly interior)
            let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
            if num < 0 || num > den {
                return None;
            }
            Some((true, num > 0 && num < den))
        };
        let ti = inside(t_num, denom);
        let ui = inside(u_num, denom);
        match (ti, ui) {
            (Some((_, t_strict)), Some((_, u_strict))) => {
                let px = Rational::new(p1.0 as i128 * denom + t_num * d1.0, denom);
                let py = Rational::new(p1.1 as i128 * denom + t_num * d1.1, denom);
                if t_strict && u_strict {
                    let right = dot_dirs(p1, p2, q1, q2) == 0;
                    SegIntersection::Proper { point: (px, py), right }
                } else {
                    SegIntersection::Touch { point: (px, py) }
                }
            }
            _ => SegIntersection::None,
        }
    } else {
        // parallel; collinear?
        if cross(p1, p2, q1) != 0 {
            return SegIntersection::None;
        }
        // collinear: project on dominant axis of d1
        let key = |p: Point| -> i64 {
            if d1.0.abs() >= d1.1.abs() {
                p.0
            } else {
                p.1
            }
        };
        let (mut a1, mut b1) = (key(p1), key(p2));
        let (p_lo, p_hi) = if a1 <= b1 { (p1, p2) } else { (p2, p1) };
        if a1 > b1 {
            std::mem::swap(&mut a1, &mut b1);
        }
        let (mut a2, mut b2) = (key(q1), key(q2));
        let (q_lo, q_hi) = if a2 <= b2 { (q1, q2) } else { (q2, q1) };
        if a2 > b2 {
            std::mem::swap(&mut a2, &mut b2);
        }
        let lo = a1.max(a2);
        let hi = b1.min(b2);
        if lo > hi {
            SegIntersection::None
        } else if lo == hi {
            let pt = if a1 >= a2 { p_lo } else { q_lo };
            debug_assert_eq!(key(pt), lo);
            SegIntersection::Touch { point: (Rational::from_int(pt.0), Rational::from_int(pt.1)) }
        } else {
            let from = if a1 >= a2 { p_lo } else { q_lo };
            let to = if b1 <= b2 { p_hi } else { q_hi };
            SegIntersection::Overlap { from: *&from, to: *&to }
        }
    }
}

fn rational_eq_point(r: RationalPoint, p: Point) -> bool {
    r.0.den == 1 && r.1.den == 1 && r.0.num == p.0 as i128 && r.1.num == p.1 as i128
}

/// Runs the full oracle over a drawing: all-pairs segment scan with an exact
/// broad phase (bounding-box sweep along x), port/overlap discipline, bend
/// budgets and the grid-bound formula.
pub fn verify(drawing: &SimDrawing) -> Result<DrawingReport, VerifyError> {
    let mut violations: Vec<Violation> = Vec::new();
    let n = drawing.n;
    if drawing.points.len() != n {
        return Err(VerifyError::Malformed(format!(
            "{} vertex points for n = {}",
            drawing.points.len(),
            n
        )));
    }
    let grid_bound = bound_formula(drawing.algorithm, n)?;

    // distinct vertex points
    {
        let mut pts: Vec<(Point, usize)> = drawing.points.iter().copied().zip(0..).collect();
        pts.sort_unstable();
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                violations.push(Violation {
                    kind: ViolationKind::CoincidentVertices,
                    detail: format!("vertices {} and {} share point {:?}", w[0].1, w[1].1, w[0].0),
                });
            }
        }
    }

    // collect segments
    let mut segs: Vec<Seg> = Vec::new();
    for (li, layer) in drawing.layers.iter().enumerate() {
        for (ei, route) in layer.routes.iter().enumerate() {
            let pts = drawing.polyline(route);
            for (si, w) in pts.windows(2).enumerate() {
                if w[0] == w[1] {
                    violations.push(Violation {
                        kind: ViolationKind::ZeroLengthSegment,
                        detail: format!(
                            "layer {li} edge {:?} has a zero-length segment at {:?}",
                            route.endpoints, w[0]
                        ),
                    });
                    continue;
                }
                segs.push(Seg {
                    layer: li,
                    edge_idx: ei,
                    edge: route.endpoints,
                    seg_idx: si,
                    p: w[0],
                    q: w[1],
                });
            }
        }
    }

    let exempt = |la: usize, lb: usize, e: Edge| -> bool {
        drawing.exemptions.iter().any(|x| {
            x.edge == e
                && ((x.layer_a == la && x.layer_b == lb) || (x.layer_a == lb && x.layer_b == la))
        })
    };
    // exemption applies only when the polylines are identical
    let identical_polyline = |la: usize, lb: usize, e: Edge| -> bool {
        let find = |l: usize| {
            drawing.layers[l]
                .routes
                .iter()
                .find(|r| r.endpoints == e)
                .map(|r| drawing.polyline(r))
        };
        match (find(la), find(lb)) {
            (Some(a), Some(b)) => {
                a == b || a.iter().rev().eq(b.iter())
            }
            _ => false,
        }
    };

    let mut intra: Vec<CrossingEvent> = Vec::new();
    let mut inter: Vec<CrossingEvent> = Vec::new();
    let mut overlaps: Vec<CrossingEvent> = Vec::new();

    // broad phase: sort by min x of bbox, sweep
    let mut order: Vec<usize> = (0..segs.len()).collect();
    let bbox = |s: &Seg| -> (i64, i64, i64, i64) {
        (s.p.0.min(s.q.0), s.p.0.max(s.q.0), s.p.1.min(s.q.1), s.p.1.max(s.q.1))
    };
    order.sort_unstable_by_key(|&i| bbox(&segs[i]).0);
    for oi in 0..order.len() {
        let i = order[oi];
        let (_, xmax_i, ymin_i, ymax_i) = bbox(&segs[i]);
        for &j in order.iter().skip(oi + 1) {
            let (xmin_j, _, ymin_j, ymax_j) = bbox(&segs[j]);
            if xmin_j > xmax_i {
                break;
            }
            if ymin_j > ymax_i || ymax_j < ymin_i {
                continue;
            }
            let (a, b) = (&segs[i], &segs[j]);
            classify_pair(
                drawing,
                a,
                b,
                &mut intra,
                &mut inter,
                &mut overlaps,
                &mut violations,
                &exempt,
                &identical_polyline,
            );
        }
    }

    // segments passing through non-incident vertex points
    for s in &segs {
        for (v, &pt) in drawing.points.iter().enumerate() {
            if v == s.edge.0 || v == s.edge.1 {
                continue;
            }
            if on_segment(pt, s.p, s.q) {
                violations.push(Violation {
                    kind: ViolationKind::VertexOnSegment,
                    detail: format!(
                        "layer {} edge {:?} segment {} passes through vertex {v} at {:?}",
                        s.layer, s.edge, s.seg_idx, pt
                    ),
                });
            }
        }
    }

    // budgets
    let max_bends: Vec<u32> = (0..drawing.layers.len()).map(|l| drawing.max_bends(l)).collect();
    for (l, (&got, &allowed)) in max_bends.iter().zip(drawing.budgets.iter()).enumerate() {
        if got > allowed {
            violations.push(Violation {
                kind: ViolationKind::BudgetExceeded,
                detail: format!("layer {l}: {got} bends > budget {allowed}"),
            });
        }
    }

    // bounding box
    let bounding_box = drawing.occupied_box();
    if bounding_box.0 > grid_bound.0 || bounding_box.1 > grid_bound.1 {
        violations.push(Violation {
            kind: ViolationKind::BoundExceeded,
            detail: format!("occupied box {bounding_box:?} exceeds bound {grid_bound:?}"),
        });
    }

    sort_events(&mut intra);
    sort_events(&mut inter);
    sort_events(&mut overlaps);
    violations.sort_by(|a, b| (a.kind as u8, &a.detail).cmp(&(b.kind as u8, &b.detail)));

    let pass = violations.is_empty();
    Ok(DrawingReport {
        intra_crossings: intra,
        inter_crossings: inter,
        overlaps,
        violations,
        max_bends,
        bounding_box,
        grid_bound,
        integral: true,
        pass,
    })
}

fn sort_events(events: &mut [CrossingEvent]) {
    events.sort_by_key(|e| {
        (
            e.layers,
            e.edges,
            e.point.0.num,
            e.point.0.den,
            e.point.1.num,
            e.point.1.den,
        )
    });
}

fn on_segment(pt: Point, a: Point, b: Point) -> bool {
    if cross(a, b, pt) != 0 {
        return false;
    }
    pt.0 >= a.0.min(b.0) && pt.0 <= a.0.max(b.0) && pt.1 >= a.1.min(b.1) && pt.1 <= a.1.max(b.1)
}

#[allow(clippy::too_many_arguments)]
fn classify_pair(
    drawing: &SimDrawing,
    a: &Seg,
    b: &Seg,
    intra: &mut Vec<CrossingEvent>,
    inter: &mut Vec<CrossingEvent>,
    overlaps: &mut Vec<CrossingEvent>,
    violations: &mut Vec<Violation>,
    exempt: &impl Fn(usize, usize, Edge) -> bool,
    identical_polyline: &impl Fn(usize, usize, Edge) -> bool,
) {
    let same_edge = a.layer == b.layer && a.edge_idx == b.edge_idx;
    let hit = intersect_segments(a.p, a.q, b.p, b.q);
    if hit == SegIntersection::None {
        return;
    }
    if same_edge {
        // adjacent segments legitimately share one bend point
        let adjacent = a.seg_idx.abs_diff(b.seg_idx) == 1;
        match hit {
            SegIntersection::Touch { point } if adjacent => {
                let shared = if a.seg_idx < b.seg_idx { a.q } else { a.p };
                if rational_eq_point(point, shared) {
                    return;
                }
                violations.push(Violation {
                    kind: ViolationKind::SelfIntersection,
                    detail: format!("layer {} edge {:?} touches itself", a.layer, a.edge),
                });
            }
            _ => violations.push(Violation {
                kind: ViolationKind::SelfIntersection,
                detail: format!(
                    "layer {} edge {:?} segments {} and {} intersect",
                    a.layer, a.edge, a.seg_idx, b.seg_idx
                ),
            }),
        }
        return;
    }

    // shared graph vertices of the two edges (layers share the vertex set)
    let shared_vertex_point = |v: usize| drawing.points[v];
    let mut shared: Vec<Point> = Vec::new();
    for v in [a.edge.0, a.edge.1] {
        if v == b.edge.0 || v == b.edge.1 {
            shared.push(shared_vertex_point(v));
        }
    }

    match hit {
        SegIntersection::None => {}
        SegIntersection::Touch { point } => {
            // legal iff the meeting point is a common graph vertex
            if shared.iter().any(|&s| rational_eq_point(point, s)) {
                return;
            }
            let ev = CrossingEvent {
                layers: (a.layer, b.layer),
                edges: (a.edge, b.edge),
                point,
                class: AngleClass::Touching,
            };
            violations.push(Violation {
                kind: ViolationKind::Touching,
                detail: format!(
                    "layers {:?} edges {:?}/{:?} touch at a non-vertex point",
                    (a.layer, b.layer),
                    a.edge,
                    b.edge
                ),
            });
            if a.layer == b.layer {
                intra.push(ev);
            } else {
                inter.push(ev);
            }
        }
        SegIntersection::Proper { point, right } => {
            let ev = CrossingEvent {
                layers: (a.layer, b.layer),
                edges: (a.edge, b.edge),
                point,
                class: if right { AngleClass::Right } else { AngleClass::NonRight },
            };
            if a.layer == b.layer {
                violations.push(Violation {
                    kind: ViolationKind::IntraLayerCrossing,
                    detail: format!(
                        "layer {} edges {:?} and {:?} cross",
                        a.layer, a.edge, b.edge
                    ),
                });
                intra.push(ev);
            } else {
                if !right {
                    violations.push(Violation {
                        kind: ViolationKind::NonRightCrossing,
                        detail: format!(
                            "layers {:?} edges {:?} and {:?} cross at a non-right angle",
                            (a.layer, b.layer),
                            a.edge,
                            b.edge
                        ),
                    });
                }
                inter.push(ev);
            }
        }
        SegIntersection::Overlap { from, to } => {
            if a.layer != b.layer
                && a.edge == b.edge
                && exempt(a.layer, b.layer, a.edge)
                && identical_polyline(a.layer, b.layer, a.edge)
            {
                return;
            }
            let ev = CrossingEvent {
                layers: (a.layer, b.layer),
                edges: (a.edge, b.edge),
                point: (Rational::from_int(from.0), Rational::from_int(from.1)),
                class: AngleClass::Overlap,
            };
            violations.push(Violation {
                kind: ViolationKind::Overlap,
                detail: format!(
                    "layers {:?} edges {:?} and {:?} overlap from {:?} to {:?}",
                    (a.layer, b.layer),
                    a.edge,
                    b.edge,
                    from,
                    to
                ),
            });
            overlaps.push(ev);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_angle_crossing() {
        match intersect_segments((0, 0), (0, 2), (-1, 1), (1, 1)) {
            SegIntersection::Proper { point, right } => {
                assert!(right);
                assert_eq!(point, (Rational::from_int(0), Rational::from_int(1)));
            }
            other => panic!("expected proper crossing, got {other:?}"),
        }
    }

    #[test]
    fn non_right_crossing() {
        match intersect_segments((0, 0), (2, 2), (0, 1), (2, 1)) {
            SegIntersection::Proper { point, right } => {
                assert!(!right);
                assert_eq!(point, (Rational::from_int(1), Rational::from_int(1)));
            }
            other => panic!("expected proper crossing, got {other:?}"),
        }
    }

    #[test]
    fn collinear_overlap() {
        match intersect_segments((0, 0), (2, 0), (1, 0), (3, 0)) {
            SegIntersection::Overlap { from, to } => {
                assert_eq!((from, to), ((1, 0), (2, 0)));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn shared_endpoint_is_touch() {
        match intersect_segments((0, 0), (1, 0), (1, 0), (1, 5)) {
            SegIntersection::Touch { point } => {
                assert_eq!(point, (Rational::from_int(1), Rational::from_int(0)));
            }
            other => panic!("expected touch, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_segments() {
        assert_eq!(intersect_segments((0, 0), (1, 0), (0, 1), (1, 1)), SegIntersection::None);
        assert_eq!(intersect_segments((0, 0), (2, 0), (3, 0), (5, 0)), SegIntersection::None);
    }

    #[test]
    fn rational_intersection_point() {
        // y = x/3 from (0,0)-(3,1) crosses x = 1 segment (1,-1)-(1,1) at (1, 1/3)
        match intersect_segments((0, 0), (3, 1), (1, -1), (1, 1)) {
            SegIntersection::Proper { point, right } => {
                assert!(!right);
                assert_eq!(point.0, Rational::from_int(1));
                assert_eq!(point.1, Rational::new(1, 3));
            }
            other => panic!("expected proper crossing, got {other:?}"),
        }
    }

    #[test]
    fn bound_formulas_match_theorems() {
        assert_eq!(bound_formula(AlgorithmId::PlanarPair, 5).unwrap(), (44, 44));
        assert_eq!(bound_formula(AlgorithmId::CaterpillarCycle, 4).unwrap(), (7, 8));
        assert_eq!(bound_formula(AlgorithmId::TreeMatching, 10).unwrap(), (10, 9));
        assert_eq!(bound_formula(AlgorithmId::WheelMatching, 5).unwrap(), (6, 7));
        assert_eq!(bound_formula(AlgorithmId::TwoPagePair, 8).unwrap(), (56, 56));
        assert_eq!(bound_formula(AlgorithmId::OuterplanarPair, 4).unwrap(), (18, 18));
        assert_eq!(bound_formula(AlgorithmId::OuterpathMatching, 4).unwrap(), (10, 10));
        assert!(bound_formula(AlgorithmId::WheelMatching, 3).is_err());
    }
}
