use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::planemap::{sort3, MapKind, PlaneMap, Region};

/// How a 3-clique sits in the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    /// Bounds a face; no vertex strictly inside.
    Face,
    /// The outer triangle of a map with interior vertices: filled but
    /// not separating.
    OuterFilled,
    /// Has vertices strictly inside and strictly outside.
    Separating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRecord {
    /// Sorted vertex triple.
    pub verts: [usize; 3],
    pub kind: TriangleKind,
    /// Vertices strictly inside, ascending. Empty iff `kind` is `Face`.
    pub inside: Vec<usize>,
}

impl TriangleRecord {
    pub fn is_filled(&self) -> bool {
        self.kind != TriangleKind::Face
    }
}

/// Containment order on the filled triangles, rooted at the outer one.
/// `nodes` is ascending by vertex triple; `parent[i]` is the index of the
/// inclusion-minimal filled triangle strictly containing node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationTree {
    pub nodes: Vec<TriangleRecord>,
    pub root: Option<usize>,
    pub parent: Vec<Option<usize>>,
}

impl SeparationTree {
    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&j| self.parent[j] == Some(i))
            .collect()
    }

    pub fn node_with(&self, tri: [usize; 3]) -> Option<usize> {
        let key = sort3(tri);
        self.nodes.iter().position(|r| r.verts == key)
    }
}

/// Every 3-clique of the triangulation, classified, ascending by triple.
pub fn classify_triangles(map: &PlaneMap) -> Result<Vec<TriangleRecord>> {
    map.require(MapKind::Triangulation)?;
    let face_sets: BTreeSet<[usize; 3]> = map
        .faces()
        .iter()
        .map(|f| sort3([f[0], f[1], f[2]]))
        .collect();
    let outer_key = sort3([map.outer[0], map.outer[1], map.outer[2]]);
    let mut records = Vec::new();
    for (u, v) in map.edges() {
        for &w in &map.rot[u] {
            if w > v && map.has_edge(v, w) {
                let key = [u, v, w];
                let rec = if key == outer_key && map.n > 3 {
                    TriangleRecord {
                        verts: key,
                        kind: TriangleKind::OuterFilled,
                        inside: (0..map.n).filter(|x| !key.contains(x)).collect(),
                    }
                } else if face_sets.contains(&key) {
                    TriangleRecord {
                        verts: key,
                        kind: TriangleKind::Face,
                        inside: Vec::new(),
                    }
                } else {
                    let inside = oriented_interior(map, key)?;
                    TriangleRecord {
                        verts: key,
                        kind: TriangleKind::Separating,
                        inside: inside.into_iter().collect(),
                    }
                };
                records.push(rec);
            }
        }
    }
    records.sort_by_key(|r| r.verts);
    Ok(records)
}

fn oriented_interior(map: &PlaneMap, tri: [usize; 3]) -> Result<BTreeSet<usize>> {
    match map.interior_of_cycle(&tri) {
        Ok(s) => Ok(s),
        Err(Error::BadCycle(_)) => map.interior_of_cycle(&[tri[0], tri[2], tri[1]]),
        Err(e) => Err(e),
    }
}

/// Filled triangles of the map, ascending by triple.
pub fn filled_triangles(map: &PlaneMap) -> Result<Vec<TriangleRecord>> {
    Ok(classify_triangles(map)?
        .into_iter()
        .filter(TriangleRecord::is_filled)
        .collect())
}

/// Separating triangles of the map, ascending by triple.
pub fn separating_triangles(map: &PlaneMap) -> Result<Vec<TriangleRecord>> {
    Ok(classify_triangles(map)?
        .into_iter()
        .filter(|r| r.kind == TriangleKind::Separating)
        .collect())
}

pub fn first_separating_triangle(map: &PlaneMap) -> Result<Option<[usize; 3]>> {
    Ok(separating_triangles(map)?.first().map(|r| r.verts))
}

fn is_strict_superset(a: &[usize], b: &[usize]) -> bool {
    if b.len() >= a.len() {
        return false;
    }
    b.iter().all(|x| a.binary_search(x).is_ok())
}

pub fn separation_tree(map: &PlaneMap) -> Result<SeparationTree> {
    let nodes = filled_triangles(map)?;
    let mut parent = Vec::with_capacity(nodes.len());
    for i in 0..nodes.len() {
        let mut best: Option<usize> = None;
        for j in 0..nodes.len() {
            if i == j || !is_strict_superset(&nodes[j].inside, &nodes[i].inside) {
                continue;
            }
            if best.map_or(true, |b| nodes[j].inside.len() < nodes[b].inside.len()) {
                best = Some(j);
            }
        }
        parent.push(best);
    }
    let root = nodes
        .iter()
        .position(|r| r.kind == TriangleKind::OuterFilled);
    Ok(SeparationTree {
        nodes,
        root,
        parent,
    })
}

/// The submap on `tri` and everything inside it; `tri` becomes the outer
/// triangle. Errors when `tri` has empty interior.
pub fn region_of(map: &PlaneMap, tri: [usize; 3]) -> Result<Region> {
    let key = sort3(tri);
    if map.outer.len() == 3 && key == sort3([map.outer[0], map.outer[1], map.outer[2]]) {
        if map.n == 3 {
            return Err(Error::NotFilled(key));
        }
        return map.region(&map.outer.clone());
    }
    let region = match map.region(&key) {
        Ok(r) => r,
        Err(Error::BadCycle(_)) => match map.region(&[key[0], key[2], key[1]]) {
            Ok(r) => r,
            Err(Error::BadCycle(_)) => return Err(Error::NotFilled(key)),
            Err(e) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    if region.map.n == 3 {
        return Err(Error::NotFilled(key));
    }
    Ok(region)
}

/// The region of `tri` with the interior of every separating triangle
/// emptied out. The result is a triangulation with no separating
/// triangles: either 4-connected or a 4-vertex map.
pub fn hull_of(map: &PlaneMap, tri: [usize; 3]) -> Result<Region> {
    let region = region_of(map, tri)?;
    let kill: BTreeSet<usize> = separating_triangles(&region.map)?
        .into_iter()
        .flat_map(|r| r.inside)
        .collect();
    if kill.is_empty() {
        return Ok(region);
    }
    let keep: Vec<usize> = (0..region.map.n).filter(|v| !kill.contains(v)).collect();
    let mut new_id = alloc::collections::BTreeMap::new();
    for (i, &v) in keep.iter().enumerate() {
        new_id.insert(v, i);
    }
    let rot = keep
        .iter()
        .map(|&v| {
            region.map.rot[v]
                .iter()
                .filter(|u| !kill.contains(u))
                .map(|u| new_id[u])
                .collect()
        })
        .collect();
    let outer = region.map.outer.iter().map(|v| new_id[v]).collect();
    let to_parent = keep.iter().map(|&v| region.to_parent[v]).collect();
    Ok(Region {
        map: PlaneMap {
            n: keep.len(),
            rot,
            outer,
        },
        to_parent,
    })
}

/// Edges of the region of `tri` having at least one endpoint strictly
/// inside, together with the region's vertices. For a region on `m`
/// vertices there are `3m - 9` such edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorEdges {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn g_bracket(map: &PlaneMap, tri: [usize; 3]) -> Result<InteriorEdges> {
    map.require(MapKind::Triangulation)?;
    let key = sort3(tri);
    let inside = if map.outer.len() == 3
        && key == sort3([map.outer[0], map.outer[1], map.outer[2]])
    {
        let s: BTreeSet<usize> = (0..map.n).filter(|x| !key.contains(x)).collect();
        if s.is_empty() {
            return Err(Error::NotFilled(key));
        }
        s
    } else {
        for i in 0..3 {
            let (a, b) = (key[i], key[(i + 1) % 3]);
            if !map.has_edge(a, b) {
                return Err(Error::NotFilled(key));
            }
        }
        let s = oriented_interior(map, key)?;
        if s.is_empty() {
            return Err(Error::NotFilled(key));
        }
        s
    };
    let mut vertices: Vec<usize> = key.to_vec();
    vertices.extend(inside.iter());
    vertices.sort_unstable();
    let edges = map
        .edges()
        .into_iter()
        .filter(|(u, v)| inside.contains(u) || inside.contains(v))
        .collect();
    Ok(InteriorEdges { vertices, edges })
}

/// For outer triangle `v0 v1 v2`, the i-th entry is the vertex opposing
/// `v_i`: the apex, in the hull of the whole map, of the inner face on
/// the outer edge `v_{i+1} v_{i+2}`. All three coincide iff the hull has
/// four vertices.
pub fn special_vertices(map: &PlaneMap) -> Result<[usize; 3]> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(format!(
            "special vertices need at least 4 vertices, got {}",
            map.n
        )));
    }
    let hull = hull_of(map, [map.outer[0], map.outer[1], map.outer[2]])?;
    let o = &hull.map.outer;
    let mut out = [0; 3];
    for i in 0..3 {
        let a = o[(i + 1) % 3];
        let b = o[(i + 2) % 3];
        out[i] = hull.to_parent[hull.map.apex_left(a, b)];
    }
    Ok(out)
}

/// The vertex opposing `v`, where `v` is a corner of the outer triangle.
pub fn special_opposing(map: &PlaneMap, v: usize) -> Result<usize> {
    let i = map.outer_pos(v).ok_or(Error::NotOnOuter(v))?;
    Ok(special_vertices(map)?[i])
}

pub fn edge_in_separating_triangle(map: &PlaneMap, u: usize, v: usize) -> Result<bool> {
    let key = (u.min(v), u.max(v));
    Ok(separating_triangles(map)?.iter().any(|r| {
        r.verts.contains(&key.0) && r.verts.contains(&key.1)
    }))
}

/// First edge, in ascending order, lying in no separating triangle.
pub fn find_free_edge(map: &PlaneMap) -> Result<(usize, usize)> {
    let seps = separating_triangles(map)?;
    let mut blocked = BTreeSet::new();
    for r in &seps {
        let [a, b, c] = r.verts;
        blocked.insert((a, b));
        blocked.insert((a, c));
        blocked.insert((b, c));
    }
    map.edges()
        .into_iter()
        .find(|e| !blocked.contains(e))
        .ok_or(Error::NoFreeEdge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn apollonian1() -> PlaneMap {
        let m = generate::k4();
        let f = m.face_with_set([1, 2, 3]).unwrap();
        m.stack_into_face([f[0], f[1], f[2]]).unwrap()
    }

    fn two_stacks() -> PlaneMap {
        let m = generate::k4();
        let f = m.face_with_set([1, 2, 3]).unwrap();
        let m = m.stack_into_face([f[0], f[1], f[2]]).unwrap();
        let f = m.face_with_set([0, 1, 3]).unwrap();
        m.stack_into_face([f[0], f[1], f[2]]).unwrap()
    }

    #[test]
    fn classify_octahedron() {
        let recs = classify_triangles(&generate::octahedron()).unwrap();
        let filled: Vec<_> = recs.iter().filter(|r| r.is_filled()).collect();
        let faces = recs.iter().filter(|r| r.kind == TriangleKind::Face).count();
        assert_eq!(filled.len(), 1);
        assert_eq!(filled[0].kind, TriangleKind::OuterFilled);
        assert_eq!(faces, 7);
    }

    #[test]
    fn classify_k4_and_triangle() {
        let recs = classify_triangles(&generate::k4()).unwrap();
        assert_eq!(recs.iter().filter(|r| r.is_filled()).count(), 1);
        assert_eq!(
            recs.iter().filter(|r| r.kind == TriangleKind::Face).count(),
            3
        );
        let recs = classify_triangles(&generate::triangle()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].kind, TriangleKind::Face);
    }

    #[test]
    fn classify_one_stack() {
        let recs = classify_triangles(&apollonian1()).unwrap();
        let filled: Vec<_> = recs.iter().filter(|r| r.is_filled()).collect();
        let faces = recs.iter().filter(|r| r.kind == TriangleKind::Face).count();
        assert_eq!(filled.len(), 2);
        assert_eq!(faces, 5);
        let sep: Vec<_> = recs
            .iter()
            .filter(|r| r.kind == TriangleKind::Separating)
            .collect();
        assert_eq!(sep.len(), 1);
        assert_eq!(sep[0].verts, [1, 2, 3]);
        assert_eq!(sep[0].inside, alloc::vec![4]);
    }

    #[test]
    fn tree_shapes() {
        let t = separation_tree(&generate::octahedron()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.parent, alloc::vec![None]);

        let t = separation_tree(&apollonian1()).unwrap();
        assert_eq!(t.nodes.len(), 2);
        let root = t.root.unwrap();
        assert_eq!(t.children(root).len(), 1);

        let t = separation_tree(&two_stacks()).unwrap();
        assert_eq!(t.nodes.len(), 3);
        let root = t.root.unwrap();
        assert_eq!(t.children(root).len(), 2);

        let t = separation_tree(&generate::triangle()).unwrap();
        assert!(t.nodes.is_empty());
        assert!(t.root.is_none());
    }

    #[test]
    fn region_and_hull_of_one_stack() {
        let m = apollonian1();
        let r = region_of(&m, [1, 2, 3]).unwrap();
        assert_eq!(r.map.n, 4);
        assert_eq!(r.to_parent, alloc::vec![1, 2, 3, 4]);
        assert!(r.map.validate(MapKind::Triangulation).is_empty());

        let h = hull_of(&m, [0, 1, 2]).unwrap();
        assert_eq!(h.map.n, 4);
        assert_eq!(h.to_parent, alloc::vec![0, 1, 2, 3]);
        assert!(h.map.validate(MapKind::Triangulation).is_empty());
        assert!(separating_triangles(&h.map).unwrap().is_empty());

        assert_eq!(region_of(&m, [0, 1, 3]), Err(Error::NotFilled([0, 1, 3])));
    }

    #[test]
    fn hull_fixed_point_when_four_connected() {
        let m = generate::octahedron();
        let h = hull_of(&m, [m.outer[0], m.outer[1], m.outer[2]]).unwrap();
        assert_eq!(h.map.canonical(), m.canonical());
        assert_eq!(h.to_parent, (0..m.n).collect::<Vec<_>>());
    }

    #[test]
    fn hull_edge_partition() {
        for m in [apollonian1(), two_stacks()] {
            let filled = filled_triangles(&m).unwrap();
            let mut total = 0;
            let mut seen = BTreeSet::new();
            for rec in &filled {
                let h = hull_of(&m, rec.verts).unwrap();
                for (u, v) in h.map.edges() {
                    let (pu, pv) = (h.to_parent[u], h.to_parent[v]);
                    if rec.verts.contains(&pu) && rec.verts.contains(&pv) {
                        continue;
                    }
                    assert!(seen.insert((pu.min(pv), pu.max(pv))));
                    total += 1;
                }
            }
            assert_eq!(total, m.edge_count() - 3);
        }
    }

    #[test]
    fn interior_edge_counts() {
        let e = g_bracket(&generate::k4(), [0, 1, 2]).unwrap();
        assert_eq!(e.edges.len(), 3);
        assert_eq!(e.vertices.len(), 4);
        let m = generate::octahedron();
        let e = g_bracket(&m, [m.outer[0], m.outer[1], m.outer[2]]).unwrap();
        assert_eq!(e.edges.len(), 9);
        assert_eq!(
            g_bracket(&generate::triangle(), [0, 1, 2]),
            Err(Error::NotFilled([0, 1, 2]))
        );
        let m = apollonian1();
        let e = g_bracket(&m, [1, 2, 3]).unwrap();
        assert_eq!(e.edges.len(), 3);
    }

    #[test]
    fn specials() {
        assert_eq!(special_vertices(&generate::k4()).unwrap(), [3, 3, 3]);
        let m = generate::octahedron();
        let u = special_vertices(&m).unwrap();
        for i in 0..3 {
            assert!(m.has_edge(u[i], m.outer[(i + 1) % 3]));
            assert!(m.has_edge(u[i], m.outer[(i + 2) % 3]));
            assert!(!m.is_outer(u[i]));
        }
        let m = apollonian1();
        let u = special_vertices(&m).unwrap();
        assert_eq!(u, [3, 3, 3]);
        assert_eq!(special_opposing(&m, m.outer[1]).unwrap(), 3);
    }

    #[test]
    fn free_edges() {
        let m = generate::octahedron();
        assert_eq!(find_free_edge(&m).unwrap(), (0, 1));
        assert!(!edge_in_separating_triangle(&m, 0, 1).unwrap());

        let m = apollonian1();
        assert!(edge_in_separating_triangle(&m, 1, 2).unwrap());
        assert!(edge_in_separating_triangle(&m, 2, 3).unwrap());
        assert!(!edge_in_separating_triangle(&m, 0, 1).unwrap());
        assert_eq!(find_free_edge(&m).unwrap(), (0, 1));
    }
}
