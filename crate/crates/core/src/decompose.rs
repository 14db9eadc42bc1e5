//! Splitting a triangulation's edges into two trees and a bounded-degree
//! spanning tree.
//!
//! The workhorse is [`from_assignment`]: given a triangulation and an
//! assignment of filled triangles to their vertices, it runs the inner
//! decomposition inside every filled triangle and stitches the pieces into
//! three edge-disjoint parts covering the whole edge set.  The front ends
//! [`four_connected`], [`hamiltonian`] and [`general`] build the matching
//! assignment first (capacity 0, 1 and 2 respectively), so the spanning
//! tree comes out with maximum degree 2, 3 or 4.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{
    inner_decomposition, one_valid, two_assignment, zero_assignment, Assignment,
};
use crate::error::{Error, Result};
use crate::planemap::{sort3, MapKind, PlaneMap};
use crate::separation::{
    edge_in_separating_triangle, filled_triangles, find_free_edge, first_separating_triangle,
    hull_of,
};

/// What a single part of a decomposition claims to be.
///
/// The decomposition builders only ever emit the first two variants.  The
/// remaining ones exist so exhaustive-search witnesses can be run through
/// the same checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartShape {
    /// A tree on all vertices whose degrees stay at or below the bound.
    SpanningTree { max_degree: usize },
    /// A tree on all vertices except the listed ones, which it avoids.
    TreeAvoiding { missing: Vec<usize> },
    /// Acyclic, with no promise about connectivity or span.
    Forest { max_degree: Option<usize> },
    /// Acyclic and connected on the vertices it touches.
    Tree { max_degree: Option<usize> },
    /// Connected on the vertices it touches, degrees at or below the bound.
    Connected { max_degree: usize },
    /// Any edge set with degrees at or below the bound.
    BoundedDegree { max_degree: usize },
}

/// Three edge-disjoint parts covering the edge set of a triangulation.
///
/// `shapes[i]` records what part `i` claims to be; the checker in the
/// oracle module verifies the claims against the actual edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub t0: Vec<(usize, usize)>,
    pub t1: Vec<(usize, usize)>,
    pub t2: Vec<(usize, usize)>,
    pub shapes: [PartShape; 3],
}

impl Decomposition {
    /// Part sizes in order.
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.t0.len(), self.t1.len(), self.t2.len())
    }
}

/// A Hamiltonian cycle given as the vertex sequence; consecutive entries
/// and the wrap-around pair must be edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamCycle {
    pub vertices: Vec<usize>,
}

impl HamCycle {
    pub fn new(vertices: Vec<usize>) -> Self {
        HamCycle { vertices }
    }
}

fn und(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Realizes an assignment as a decomposition.
///
/// `w` lists the outer vertices in the role order `(w0, w1, w2)` with
/// `w0 = phi(outer triangle)`.  One of the outer edges `w0w2`, `w0w1` must
/// avoid all separating triangles; if `w0w2` is not such an edge the roles
/// of `w1` and `w2` are exchanged.  Writing `(e0, e1, e2)` for the labels
/// after that swap, the parts are
///
/// * `T0`: the path `e0 e1 e2` plus the first part of every inner
///   decomposition, a spanning tree with maximum degree `k + 2`;
/// * `T1`: the second parts, a tree on everything except `e0` and `e2`;
/// * `T2`: the edge `e2 e0` plus the third parts, a tree avoiding `e1`.
pub fn from_assignment(map: &PlaneMap, a: &Assignment, w: [usize; 3]) -> Result<Decomposition> {
    map.require(MapKind::Triangulation)?;
    let outer_set: BTreeSet<usize> = map.outer.iter().copied().collect();
    if w.iter().copied().collect::<BTreeSet<_>>() != outer_set {
        return Err(Error::Param(format!(
            "labels {:?} are not the outer vertices",
            w
        )));
    }

    if map.n == 3 {
        if !a.phi.is_empty() {
            return Err(Error::BadAssignment(
                "a bare triangle admits no assigned triangles".into(),
            ));
        }
        return Ok(Decomposition {
            t0: vec![und(w[0], w[1]), und(w[1], w[2])],
            t1: Vec::new(),
            t2: vec![und(w[2], w[0])],
            shapes: [
                PartShape::SpanningTree {
                    max_degree: a.k + 2,
                },
                PartShape::TreeAvoiding {
                    missing: vec![und(w[0], w[2]).0, und(w[0], w[2]).1],
                },
                PartShape::TreeAvoiding { missing: vec![w[1]] },
            ],
        });
    }

    let filled = filled_triangles(map)?;
    let expected: BTreeSet<[usize; 3]> = filled.iter().map(|t| t.verts).collect();
    let assigned: BTreeSet<[usize; 3]> = a.phi.keys().copied().collect();
    if expected != assigned {
        return Err(Error::BadAssignment(format!(
            "assignment covers {} triangles, map has {} filled",
            assigned.len(),
            expected.len()
        )));
    }
    let outer_key = sort3([w[0], w[1], w[2]]);
    if a.phi[&outer_key] != w[0] {
        return Err(Error::BadAssignment(format!(
            "outer triangle is assigned {} but w0 is {}",
            a.phi[&outer_key], w[0]
        )));
    }

    // Pick the effective labels so that e0e2 avoids separating triangles.
    let (e0, e1, e2) = if !edge_in_separating_triangle(map, w[0], w[2])? {
        (w[0], w[1], w[2])
    } else if !edge_in_separating_triangle(map, w[0], w[1])? {
        (w[0], w[2], w[1])
    } else {
        return Err(Error::Param(format!(
            "both outer edges at {} lie in separating triangles",
            w[0]
        )));
    };

    let mut t0 = vec![und(e0, e1), und(e1, e2)];
    let mut t1: Vec<(usize, usize)> = Vec::new();
    let mut t2 = vec![und(e2, e0)];

    // Degree bookkeeping for the spanning tree: e0, e2 and every special
    // vertex opposing an assigned vertex end up with one tree edge from
    // their region, everybody else with two.
    let mut law_one = vec![false; map.n];
    law_one[e0] = true;
    law_one[e2] = true;
    let mut picks = vec![0usize; map.n];

    for tri in &filled {
        let v0 = a.phi[&tri.verts];
        picks[v0] += 1;
        let hull = hull_of(map, tri.verts)?;
        let is_outer = tri.verts == outer_key;

        // Labels inside this triangle: the assigned vertex leads; e1 keeps
        // its middle role whenever it is a corner here; otherwise the
        // middle is the smallest corner that is not e0 or e2.
        let rest: Vec<usize> = tri.verts.iter().copied().filter(|&x| x != v0).collect();
        let (v1, v2) = if is_outer {
            (e1, if rest[0] == e1 { rest[1] } else { rest[0] })
        } else if v0 == e1 {
            return Err(Error::BadAssignment(format!(
                "triangle {:?} is assigned the middle label {}",
                tri.verts, e1
            )));
        } else if rest.contains(&e1) {
            let other = if rest[0] == e1 { rest[1] } else { rest[0] };
            (e1, other)
        } else {
            let mut cand: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&x| x != e0 && x != e2)
                .collect();
            if cand.is_empty() {
                return Err(Error::BadAssignment(format!(
                    "triangle {:?} leaves no middle label",
                    tri.verts
                )));
            }
            cand.sort_unstable();
            let v1 = cand[0];
            let v2 = *rest.iter().find(|&&x| x != v1).unwrap();
            (v1, v2)
        };

        if hull.map.n == 3 {
            // Nothing strictly inside the hull: the region contributes no
            // interior edges, only the assignment count for v0.
            // The special vertices of a bare triangle do not exist, so no
            // exemption is recorded either.
            continue;
        }

        let lx = hull
            .from_parent(v0)
            .ok_or_else(|| Error::Internal("corner missing from its own hull".into()))?;
        let ly = hull
            .from_parent(v1)
            .ok_or_else(|| Error::Internal("corner missing from its own hull".into()))?;
        let lz = hull
            .from_parent(v2)
            .ok_or_else(|| Error::Internal("corner missing from its own hull".into()))?;
        let d = inner_decomposition(&hull.map, lx, ly, lz)?;
        law_one[hull.to_parent[d.u[0]]] = true;
        for &(p, q) in &d.f_x {
            t0.push(und(hull.to_parent[p], hull.to_parent[q]));
        }
        for &(p, q) in &d.f_y {
            t1.push(und(hull.to_parent[p], hull.to_parent[q]));
        }
        for &(p, q) in &d.f_z {
            t2.push(und(hull.to_parent[p], hull.to_parent[q]));
        }
    }

    // The three parts must partition the edge set.
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in t0.iter().chain(t1.iter()).chain(t2.iter()) {
        if !seen.insert(*e) {
            return Err(Error::Internal(format!("edge {:?} placed twice", e)));
        }
    }
    let all: BTreeSet<(usize, usize)> = map.edges().into_iter().collect();
    if seen != all {
        return Err(Error::Internal(format!(
            "parts cover {} of {} edges",
            seen.len(),
            all.len()
        )));
    }

    // Exact degree law for the spanning tree.
    let mut deg = vec![0usize; map.n];
    for &(p, q) in &t0 {
        deg[p] += 1;
        deg[q] += 1;
    }
    for v in 0..map.n {
        let want = if law_one[v] { 1 } else { 2 } + picks[v];
        if deg[v] != want {
            return Err(Error::Internal(format!(
                "vertex {} has tree degree {}, law says {}",
                v, deg[v], want
            )));
        }
    }

    Ok(Decomposition {
        t0,
        t1,
        t2,
        shapes: [
            PartShape::SpanningTree {
                max_degree: a.k + 2,
            },
            PartShape::TreeAvoiding {
                missing: vec![und(e0, e2).0, und(e0, e2).1],
            },
            PartShape::TreeAvoiding { missing: vec![e1] },
        ],
    })
}

/// Decomposes a 4-connected triangulation; the spanning tree is a
/// Hamiltonian path.
///
/// Fails with the offending triangle when the map has a separating one.
pub fn four_connected(map: &PlaneMap) -> Result<Decomposition> {
    map.require(MapKind::Triangulation)?;
    let w = [map.outer[0], map.outer[1], map.outer[2]];
    if map.n == 3 {
        return from_assignment(
            map,
            &Assignment {
                k: 0,
                phi: BTreeMap::new(),
            },
            w,
        );
    }
    if let Some(t) = first_separating_triangle(map)? {
        return Err(Error::SeparatingTriangle(t));
    }
    let a = zero_assignment(map, w[0])?;
    from_assignment(map, &a, w)
}

/// Decomposes a triangulation along a Hamiltonian cycle; the spanning
/// tree has maximum degree 3.
///
/// The cycle is rerouted to an ear (a cycle face whose middle vertex has
/// no further neighbours inside), the map is rebuilt with that face
/// outside, and the cycle minus the ear's middle edge drives a capacity-1
/// assignment.  Both traversal directions of the cycle are attempted.
pub fn hamiltonian(map: &PlaneMap, cycle: &HamCycle) -> Result<Decomposition> {
    map.require(MapKind::Triangulation)?;
    check_cycle(map, &cycle.vertices)?;
    if map.n == 3 {
        return from_assignment(
            map,
            &Assignment {
                k: 1,
                phi: BTreeMap::new(),
            },
            [map.outer[0], map.outer[1], map.outer[2]],
        );
    }
    match ham_attempt(map, &cycle.vertices) {
        Ok(d) => Ok(d),
        Err(first) => {
            let rev: Vec<usize> = cycle.vertices.iter().rev().copied().collect();
            ham_attempt(map, &rev).map_err(|_| first)
        }
    }
}

pub(crate) fn check_cycle(map: &PlaneMap, cyc: &[usize]) -> Result<()> {
    if cyc.len() != map.n {
        return Err(Error::BadCycle(format!(
            "cycle visits {} of {} vertices",
            cyc.len(),
            map.n
        )));
    }
    let mut seen = vec![false; map.n];
    for &v in cyc {
        if v >= map.n || seen[v] {
            return Err(Error::BadCycle(format!("vertex {} repeats or overflows", v)));
        }
        seen[v] = true;
    }
    for i in 0..cyc.len() {
        let u = cyc[i];
        let v = cyc[(i + 1) % cyc.len()];
        if !map.has_edge(u, v) {
            return Err(Error::BadCycle(format!("{} and {} are not adjacent", u, v)));
        }
    }
    Ok(())
}

/// Whether the cycle, read in sequence order, goes counterclockwise.
///
/// At an outer vertex the rotation starts along the outer face; walking it
/// from the outer successor sweeps the interior wedge.  The cycle runs
/// counterclockwise exactly when its forward neighbour shows up in that
/// sweep before its backward neighbour.
pub(crate) fn cycle_ccw(map: &PlaneMap, cyc: &[usize], pos: &[usize]) -> Result<bool> {
    let o = map.outer[0];
    let n = cyc.len();
    let fwd = cyc[(pos[o] + 1) % n];
    let bwd = cyc[(pos[o] + n - 1) % n];
    let ring = &map.rot[o];
    let succ = map.outer_next(o)?;
    let start = ring
        .iter()
        .position(|&t| t == succ)
        .ok_or_else(|| Error::Internal("outer successor missing from ring".into()))?;
    let mut pf = None;
    let mut pb = None;
    for i in 0..ring.len() {
        let t = ring[(start + i) % ring.len()];
        if t == fwd {
            pf = Some(i);
        }
        if t == bwd {
            pb = Some(i);
        }
    }
    match (pf, pb) {
        (Some(f), Some(b)) => Ok(f < b),
        _ => Err(Error::Internal("cycle neighbours missing from ring".into())),
    }
}

/// Neighbours of `v` on the bounded side of the cycle, given the cycle
/// neighbours of `v` and the winding direction.
fn interior_neighbors(
    map: &PlaneMap,
    v: usize,
    prev_c: usize,
    next_c: usize,
    ccw: bool,
) -> Vec<usize> {
    let (from, to) = if ccw { (next_c, prev_c) } else { (prev_c, next_c) };
    let ring = &map.rot[v];
    let start = ring.iter().position(|&t| t == from).unwrap_or(0);
    let mut out = Vec::new();
    for i in 1..ring.len() {
        let t = ring[(start + i) % ring.len()];
        if t == to {
            break;
        }
        out.push(t);
    }
    out
}

fn ham_attempt(map: &PlaneMap, cyc: &[usize]) -> Result<Decomposition> {
    let n = map.n;
    let mut pos = vec![0usize; n];
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = i;
    }
    let ccw = cycle_ccw(map, cyc, &pos)?;

    // Every ear is a candidate: a cycle vertex with no neighbours strictly
    // inside closes a face with its cycle neighbours.
    let mut last = Error::Internal("cycle without an ear".into());
    for idx in 0..n {
        let v2 = cyc[idx];
        let v1 = cyc[(idx + n - 1) % n];
        let v0 = cyc[(idx + 1) % n];
        if !interior_neighbors(map, v2, v1, v0, ccw).is_empty() {
            continue;
        }
        if !map.has_edge(v1, v0) {
            return Err(Error::Internal("ear does not close a triangle".into()));
        }
        let m2 = map
            .reroot([v0, v1, v2])
            .map_err(|_| Error::Internal("ear triangle is not a face".into()))?;

        // The Hamiltonian path: the cycle from v0 around to v2.
        let mut path = Vec::with_capacity(n);
        for t in 0..n {
            path.push(cyc[(pos[v0] + t) % n]);
        }

        // The label order must put an edge avoiding separating triangles
        // between the first and last label, and the assignment must never
        // pick the middle label; both ear edges may qualify.
        let mut tries: Vec<[usize; 3]> = Vec::new();
        if !edge_in_separating_triangle(&m2, v1, v0)? {
            tries.push([v1, v2, v0]);
        }
        if !edge_in_separating_triangle(&m2, v1, v2)? {
            tries.push([v1, v0, v2]);
        }
        if tries.is_empty() {
            last = Error::Internal("no ear edge avoids separating triangles".into());
            continue;
        }
        for w in tries {
            match one_valid(&m2, &path, w[1]).and_then(|a| from_assignment(&m2, &a, w)) {
                Ok(d) => return Ok(d),
                Err(e) => last = e,
            }
        }
    }
    Err(last)
}

/// Decomposes any triangulation with at least one free edge; the spanning
/// tree has maximum degree 4.
///
/// A triangulation without a free edge cannot be split this way, and the
/// error says so.
pub fn general(map: &PlaneMap) -> Result<Decomposition> {
    map.require(MapKind::Triangulation)?;
    if map.n == 3 {
        return from_assignment(
            map,
            &Assignment {
                k: 2,
                phi: BTreeMap::new(),
            },
            [map.outer[0], map.outer[1], map.outer[2]],
        );
    }
    let (x, y) = find_free_edge(map)?;
    let on_outer = {
        let po = map.outer.iter().position(|&t| t == x);
        match po {
            Some(_) => map.outer_next(x)? == y || map.outer_prev(x)? == y,
            None => false,
        }
    };
    let m2 = if on_outer {
        map.clone()
    } else {
        map.reroot([x, y, map.apex_left(x, y)])?
    };
    let w0 = x.min(y);
    let w2 = x.max(y);
    let w1 = *m2
        .outer
        .iter()
        .find(|&&t| t != x && t != y)
        .ok_or_else(|| Error::Internal("outer face lost a corner".into()))?;
    let a = two_assignment(&m2, w0)?;
    from_assignment(&m2, &a, [w0, w1, w2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{apollonian, doublewheel, flipwalk, icosahedron, k4, triangle};

    fn check_partition(map: &PlaneMap, d: &Decomposition) {
        let mut seen = BTreeSet::new();
        for e in d.t0.iter().chain(d.t1.iter()).chain(d.t2.iter()) {
            assert!(seen.insert(*e), "duplicate edge {:?}", e);
        }
        let all: BTreeSet<(usize, usize)> = map.edges().into_iter().collect();
        assert_eq!(seen, all);
    }

    fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        let mut d = vec![0usize; n];
        for &(u, v) in edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    fn is_tree_over(edges: &[(usize, usize)], verts: &BTreeSet<usize>) -> bool {
        if edges.len() + 1 != verts.len() {
            return false;
        }
        let mut parent: BTreeMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, v: usize) -> usize {
            let mut r = v;
            while p[&r] != r {
                r = p[&r];
            }
            let mut c = v;
            while p[&c] != r {
                let nx = p[&c];
                p.insert(c, r);
                c = nx;
            }
            r
        }
        for &(u, v) in edges {
            if !verts.contains(&u) || !verts.contains(&v) {
                return false;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent.insert(ru, rv);
        }
        true
    }

    fn check_shapes(map: &PlaneMap, d: &Decomposition) {
        let everything: BTreeSet<usize> = (0..map.n).collect();
        for (part, shape) in [(&d.t0, &d.shapes[0]), (&d.t1, &d.shapes[1]), (&d.t2, &d.shapes[2])]
        {
            match shape {
                PartShape::SpanningTree { max_degree } => {
                    assert!(is_tree_over(part, &everything));
                    assert!(degrees(map.n, part).iter().all(|&x| x <= *max_degree));
                }
                PartShape::TreeAvoiding { missing } => {
                    let mut verts = everything.clone();
                    for m in missing {
                        verts.remove(m);
                    }
                    assert!(is_tree_over(part, &verts), "part {:?} not a tree over {:?}", part, verts);
                }
                other => panic!("builders never claim {:?}", other),
            }
        }
    }

    #[test]
    fn bare_triangle_splits_into_path_and_edge() {
        let m = triangle();
        let d = four_connected(&m).unwrap();
        assert_eq!(d.sizes(), (2, 0, 1));
        check_partition(&m, &d);
        check_shapes(&m, &d);
    }

    #[test]
    fn octahedron_tree_is_a_hamiltonian_path() {
        let m = doublewheel(4).unwrap();
        let d = four_connected(&m).unwrap();
        assert_eq!(d.sizes(), (5, 3, 4));
        check_partition(&m, &d);
        check_shapes(&m, &d);
        let deg = degrees(m.n, &d.t0);
        assert!(deg.iter().all(|&x| x <= 2));
        assert_eq!(deg.iter().filter(|&&x| x == 1).count(), 2);
        // One leaf is the last outer label, the other the special vertex
        // opposing the first.
        assert_eq!(deg[m.outer[2]], 1);
    }

    #[test]
    fn icosahedron_part_sizes() {
        let m = icosahedron();
        let d = four_connected(&m).unwrap();
        assert_eq!(d.sizes(), (11, 9, 10));
        check_partition(&m, &d);
        check_shapes(&m, &d);
    }

    #[test]
    fn doublewheel_family_stays_degree_two() {
        for c in 4..12 {
            let m = doublewheel(c).unwrap();
            let d = four_connected(&m).unwrap();
            check_partition(&m, &d);
            check_shapes(&m, &d);
            assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 2));
        }
    }

    #[test]
    fn separating_triangle_is_reported() {
        let m = apollonian(1, 7);
        match four_connected(&m) {
            Err(Error::SeparatingTriangle(t)) => {
                let first = first_separating_triangle(&m).unwrap();
                assert_eq!(Some(t), first);
            }
            other => panic!("expected a separating-triangle error, got {:?}", other),
        }
    }

    #[test]
    fn k4_cycle_gives_degree_three_tree() {
        let m = k4();
        let d = hamiltonian(&m, &HamCycle::new(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(d.sizes(), (3, 1, 2));
        check_partition(&m, &d);
        check_shapes(&m, &d);
        assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 3));
    }

    #[test]
    fn octahedron_cycle_through_the_hubs() {
        let m = doublewheel(4).unwrap();
        // 0-4-1-2-5-3 alternates rim and hub vertices.
        let d = hamiltonian(&m, &HamCycle::new(vec![0, 4, 1, 2, 5, 3])).unwrap();
        assert_eq!(d.sizes(), (5, 3, 4));
        check_partition(&m, &d);
        check_shapes(&m, &d);
        assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 3));
    }

    #[test]
    fn stacked_map_keeps_the_bound() {
        let mut m = doublewheel(4).unwrap();
        let f = [0, 1, 4];
        m = m.stack_into_face(f).unwrap();
        let d = hamiltonian(&m, &HamCycle::new(vec![0, 6, 1, 2, 5, 3, 4])).unwrap();
        assert_eq!(d.sizes(), (6, 4, 5));
        check_partition(&m, &d);
        check_shapes(&m, &d);
        assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 3));
    }

    #[test]
    fn both_cycle_orientations_accepted() {
        let m = doublewheel(4).unwrap();
        for cyc in [vec![0, 4, 1, 2, 5, 3], vec![3, 5, 2, 1, 4, 0]] {
            let d = hamiltonian(&m, &HamCycle::new(cyc)).unwrap();
            check_partition(&m, &d);
            check_shapes(&m, &d);
            assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 3));
        }
    }

    #[test]
    fn bad_cycles_are_rejected() {
        let m = doublewheel(4).unwrap();
        for cyc in [
            vec![0, 1, 2, 3, 4],          // too short
            vec![0, 1, 2, 3, 4, 4],       // repeats
            vec![0, 2, 4, 1, 3, 5],       // 0-2 is not an edge
        ] {
            match hamiltonian(&m, &HamCycle::new(cyc.clone())) {
                Err(Error::BadCycle(_)) => {}
                other => panic!("cycle {:?} gave {:?}", cyc, other),
            }
        }
    }

    #[test]
    fn apollonian_maps_decompose_with_degree_four() {
        for (t, seed) in [(3usize, 5u64), (10, 6), (25, 7)] {
            let m = apollonian(t, seed);
            let d = general(&m).unwrap();
            assert_eq!(d.sizes(), (m.n - 1, m.n - 3, m.n - 2));
            check_partition(&m, &d);
            check_shapes(&m, &d);
            assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 4));
        }
    }

    #[test]
    fn general_handles_four_connected_maps_too() {
        let m = doublewheel(5).unwrap();
        let d = general(&m).unwrap();
        check_partition(&m, &d);
        check_shapes(&m, &d);
        assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 4));
    }

    #[test]
    fn flipwalk_maps_decompose() {
        for seed in 0..6u64 {
            let (m, _) = flipwalk(14, 30, seed).unwrap();
            let d = general(&m).unwrap();
            assert_eq!(d.sizes(), (m.n - 1, m.n - 3, m.n - 2));
            check_partition(&m, &d);
            check_shapes(&m, &d);
            assert!(degrees(m.n, &d.t0).iter().all(|&x| x <= 4));
        }
    }

    #[test]
    fn assignment_must_match_the_map() {
        let m = doublewheel(4).unwrap();
        // Missing triangles.
        let empty = Assignment {
            k: 0,
            phi: BTreeMap::new(),
        };
        assert!(matches!(
            from_assignment(&m, &empty, [0, 1, 5]),
            Err(Error::BadAssignment(_))
        ));
        // Wrong outer pick.
        let mut phi = BTreeMap::new();
        phi.insert(sort3([0, 1, 5]), 1);
        let a = Assignment { k: 0, phi };
        assert!(matches!(
            from_assignment(&m, &a, [0, 1, 5]),
            Err(Error::BadAssignment(_))
        ));
    }

    #[test]
    fn blocked_root_labels_are_rejected() {
        // Stacking inside faces at both outer edges of 0 puts each of them
        // into a separating triangle, so no effective labeling exists.
        let mut m = doublewheel(4).unwrap();
        m = m.stack_into_face([0, 1, 4]).unwrap();
        m = m.stack_into_face([0, 3, 5]).unwrap();
        let a = two_assignment(&m, 0).unwrap();
        match from_assignment(&m, &a, [0, 1, 5]) {
            Err(Error::Param(_)) => {}
            other => panic!("expected a labeling failure, got {:?}", other),
        }
    }

    #[test]
    fn tree_degrees_follow_the_assignment_counts() {
        let m = doublewheel(6).unwrap();
        let a = zero_assignment(&m, m.outer[0]).unwrap();
        let d = from_assignment(&m, &a, [m.outer[0], m.outer[1], m.outer[2]]).unwrap();
        // Capacity zero: the tree is a path, so exactly two vertices of
        // degree one and the rest of degree two.
        let deg = degrees(m.n, &d.t0);
        assert_eq!(deg.iter().filter(|&&x| x == 1).count(), 2);
        assert_eq!(deg.iter().filter(|&&x| x == 2).count(), m.n - 2);
    }
}
