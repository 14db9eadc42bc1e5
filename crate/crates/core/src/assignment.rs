//! Assigning a vertex to every filled triangle, and splitting the strict
//! interior of a four-connected map into three forests.
//!
//! An *assignment at capacity k* maps every filled triangle to one of its
//! corners so that no vertex is chosen more than `k` times, except that
//! the vertex chosen for the outer triangle and vertices that oppose a
//! chosen corner inside some region may be chosen `k + 1` times. The
//! decomposition layer turns an assignment at capacity `k` into two
//! forests plus a connected part of maximum degree `k + 2`.
//!
//! Builders for capacities 0, 1 and 2 live here. Capacity 0 needs the map
//! to have no separating triangle; capacity 1 needs a Hamiltonian path
//! with endpoints on the outer triangle (or one that misses the third
//! corner); capacity 2 always works.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::planemap::{sort3, MapKind, PlaneMap, Region};
use crate::separation::{
    filled_triangles, first_separating_triangle, region_of, separation_tree, special_opposing,
    special_vertices, hull_of,
};
use crate::whitney::{whitney_color, Color};

/// A choice of corner for every filled triangle, meeting the capacity
/// rules for `k`. Keys are sorted triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub k: usize,
    pub phi: BTreeMap<[usize; 3], usize>,
}

/// The interior edges of a map without separating triangles, split into
/// three parts of `n - 3` edges each. With outer corners `v = [vx, vy, vz]`
/// and opposing vertices `u = [ux, uy, uz]`:
///
/// * `f_x` is a path on `n - 2` vertices from `vx` through `uy` to `ux`,
/// * `f_y` is a tree containing `vy` but neither `vx` nor `vz`,
/// * `f_z` is a forest of two trees, one holding `vz` and one holding `vx`,
///
/// and no part touches the three outer edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDecomposition {
    pub f_x: Vec<(usize, usize)>,
    pub f_y: Vec<(usize, usize)>,
    pub f_z: Vec<(usize, usize)>,
    /// Outer corners in role order.
    pub v: [usize; 3],
    /// `u[i]` opposes `v[i]`: it is the apex of the inner face on the
    /// outer edge avoiding `v[i]`. All three coincide on a 4-vertex map.
    pub u: [usize; 3],
}

fn und(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Deletes the three outer corners, keeping the rest as a region of the
/// input.
fn strip_outer(map: &PlaneMap) -> Result<Region> {
    let corners = [map.outer[0], map.outer[1], map.outer[2]];
    let mut reg = map.delete_outer_vertex(corners[0])?;
    for &c in &corners[1..] {
        let cur = reg.from_parent(c).ok_or_else(|| {
            Error::Internal(format!("outer corner {c} vanished while peeling"))
        })?;
        let next = reg.map.delete_outer_vertex(cur)?;
        let to_parent = next.to_parent.iter().map(|&v| reg.to_parent[v]).collect();
        reg = Region {
            map: next.map,
            to_parent,
        };
    }
    Ok(reg)
}

/// Splits the interior edges of a map without separating triangles into
/// the three parts described on [`InnerDecomposition`]. The roles
/// `(vx, vy, vz)` must name the three outer corners in any order.
pub fn inner_decomposition(
    hull: &PlaneMap,
    vx: usize,
    vy: usize,
    vz: usize,
) -> Result<InnerDecomposition> {
    hull.require(MapKind::Triangulation)?;
    if hull.n == 3 {
        return Err(Error::Param(String::from(
            "a bare triangle has no interior edges to split",
        )));
    }
    let px = hull.outer_pos(vx).ok_or(Error::NotOnOuter(vx))?;
    let py = hull.outer_pos(vy).ok_or(Error::NotOnOuter(vy))?;
    let pz = hull.outer_pos(vz).ok_or(Error::NotOnOuter(vz))?;
    if px == py || py == pz || px == pz {
        return Err(Error::Param(format!(
            "roles must name three distinct outer corners, got {vx}, {vy}, {vz}"
        )));
    }
    if let Some(t) = first_separating_triangle(hull)? {
        return Err(Error::SeparatingTriangle(t));
    }

    let sp = special_vertices(hull)?;
    let u = [sp[px], sp[py], sp[pz]];
    let v = [vx, vy, vz];

    if hull.n == 4 {
        return Ok(InnerDecomposition {
            f_x: vec![und(vx, u[0])],
            f_y: vec![und(vy, u[1])],
            f_z: vec![und(vz, u[2])],
            v,
            u,
        });
    }

    let w = strip_outer(hull)?;
    // The opposing vertices sit counterclockwise on the interior boundary
    // in the same cyclic order as the corners they oppose, so a cyclic
    // role order keeps the marks counterclockwise and an anticyclic one
    // needs the mirror image. Vertex ids survive mirroring.
    let cyclic = (py + 3 - px) % 3 == 1;
    let wm = if cyclic { w.map.clone() } else { w.map.mirror() };
    let local = |p: usize| -> Result<usize> {
        w.from_parent(p)
            .ok_or_else(|| Error::Internal(format!("vertex {p} missing from interior")))
    };
    let coloring = whitney_color(&wm, local(u[1])?, local(u[2])?, local(u[0])?)?;

    let mut f_x = Vec::new();
    let mut f_y = Vec::new();
    let mut f_z = Vec::new();
    for arc in &coloring.arcs {
        let e = und(w.to_parent[arc.tail], w.to_parent[arc.head]);
        match arc.color {
            Color::Black => f_x.push(e),
            Color::Blue => f_y.push(e),
            Color::Red => f_z.push(e),
        }
    }

    let fan = |c: usize| -> Vec<(usize, usize)> {
        hull.rot[c]
            .iter()
            .filter(|t| !v.contains(t))
            .map(|&t| und(c, t))
            .collect()
    };
    let bridge = und(vx, u[1]);
    f_x.push(bridge);
    f_y.extend(fan(vy));
    let mut vx_fan = fan(vx);
    let before = vx_fan.len();
    vx_fan.retain(|&e| e != bridge);
    if vx_fan.len() + 1 != before {
        return Err(Error::Internal(format!(
            "expected edge {}-{} once in the corner fan",
            bridge.0, bridge.1
        )));
    }
    f_z.extend(fan(vz));
    f_z.extend(vx_fan);

    f_x.sort_unstable();
    f_y.sort_unstable();
    f_z.sort_unstable();

    let want = hull.n - 3;
    if f_x.len() != want || f_y.len() != want || f_z.len() != want {
        return Err(Error::Internal(format!(
            "part sizes {}/{}/{} differ from {}",
            f_x.len(),
            f_y.len(),
            f_z.len(),
            want
        )));
    }
    let mut all: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in f_x.iter().chain(&f_y).chain(&f_z) {
        if !all.insert(*e) {
            return Err(Error::Internal(format!(
                "edge {}-{} landed in two parts",
                e.0, e.1
            )));
        }
    }
    let interior: BTreeSet<(usize, usize)> = hull
        .edges()
        .into_iter()
        .filter(|&(a, b)| !(hull.is_outer(a) && hull.is_outer(b)))
        .collect();
    if all != interior {
        return Err(Error::Internal(String::from(
            "parts do not cover the interior edges",
        )));
    }

    Ok(InnerDecomposition {
        f_x,
        f_y,
        f_z,
        v,
        u,
    })
}

/// For a map whose vertex `u` is the apex of an inner face on an outer
/// edge, picks one corner of every inner face: `u` for the face it tops,
/// and the vertex of middle height in a straight-line drawing with that
/// outer edge as the base for all others. Heights are compared as
/// `(y, x)` pairs, so the choice is total. Every outer vertex is chosen
/// zero times, `u` three times, every other inner vertex exactly twice;
/// this is checked and an internal error reports any violation.
pub fn middle_vertex_map(map: &PlaneMap, u: usize) -> Result<BTreeMap<[usize; 3], usize>> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(String::from(
            "a bare triangle has no inner faces to pick from",
        )));
    }
    let k = map.outer.len();
    let mut base = None;
    for i in 0..k {
        let (a, b) = (map.outer[i], map.outer[(i + 1) % k]);
        if map.apex_left(a, b) == u {
            base = Some((a, b));
            break;
        }
    }
    let (v1, v2) = base.ok_or_else(|| {
        Error::Param(format!("vertex {u} tops no inner face on an outer edge"))
    })?;
    let star = sort3([v1, v2, u]);

    let drawing = map.fpp_draw((v1, v2))?;
    let height = |v: usize| (drawing.coords[v].1, drawing.coords[v].0);

    let mut psi = BTreeMap::new();
    for f in map.inner_faces() {
        let key = sort3([f[0], f[1], f[2]]);
        let pick = if key == star {
            u
        } else {
            let mut vs = key;
            vs.sort_unstable_by_key(|&v| height(v));
            vs[1]
        };
        psi.insert(key, pick);
    }

    let mut count = vec![0usize; map.n];
    for &p in psi.values() {
        count[p] += 1;
    }
    for v in 0..map.n {
        let want = if map.is_outer(v) {
            0
        } else if v == u {
            3
        } else {
            2
        };
        if count[v] != want {
            return Err(Error::Internal(format!(
                "vertex {v} picked {} times instead of {want}",
                count[v]
            )));
        }
    }
    Ok(psi)
}

/// Assignment at capacity 0: only works when the map has no separating
/// triangle, so the outer triangle is the single filled one and gets `v`.
pub fn zero_assignment(map: &PlaneMap, v: usize) -> Result<Assignment> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(String::from(
            "a bare triangle has no filled triangle to assign",
        )));
    }
    if map.outer_pos(v).is_none() {
        return Err(Error::NotOnOuter(v));
    }
    if let Some(t) = first_separating_triangle(map)? {
        return Err(Error::SeparatingTriangle(t));
    }
    let mut phi = BTreeMap::new();
    phi.insert(sort3([map.outer[0], map.outer[1], map.outer[2]]), v);
    Ok(Assignment { k: 0, phi })
}

/// Assignment at capacity 2 for an arbitrary map, rooted at outer corner
/// `v`. Walks the containment order of the filled triangles from the
/// outside in; each region's choices for the filled triangles one level
/// deeper come from [`middle_vertex_map`] seeded at the vertex opposing
/// the region's own chosen corner, which is what keeps every vertex
/// within capacity.
pub fn two_assignment(map: &PlaneMap, v: usize) -> Result<Assignment> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(String::from(
            "a bare triangle has no filled triangle to assign",
        )));
    }
    if map.outer_pos(v).is_none() {
        return Err(Error::NotOnOuter(v));
    }
    let st = separation_tree(map)?;
    let root = st
        .root
        .ok_or_else(|| Error::Internal(String::from("missing outer filled triangle")))?;
    let mut phi = BTreeMap::new();
    phi.insert(st.nodes[root].verts, v);
    let mut queue = vec![root];
    while let Some(i) = queue.pop() {
        let kids = st.children(i);
        if kids.is_empty() {
            continue;
        }
        let tri = st.nodes[i].verts;
        let chosen = phi[&tri];
        let hull = hull_of(map, tri)?;
        let chosen_local = hull.from_parent(chosen).ok_or_else(|| {
            Error::Internal(format!("chosen corner {chosen} missing from its region"))
        })?;
        let u_local = special_opposing(&hull.map, chosen_local)?;
        let psi = middle_vertex_map(&hull.map, u_local)?;
        let mut lifted = BTreeMap::new();
        for (t, &p) in &psi {
            let key = sort3([
                hull.to_parent[t[0]],
                hull.to_parent[t[1]],
                hull.to_parent[t[2]],
            ]);
            lifted.insert(key, hull.to_parent[p]);
        }
        for kid in kids {
            let kt = st.nodes[kid].verts;
            let pick = *lifted.get(&kt).ok_or_else(|| {
                Error::Internal(format!(
                    "triangle {}-{}-{} is not an inner face of its region",
                    kt[0], kt[1], kt[2]
                ))
            })?;
            phi.insert(kt, pick);
            queue.push(kid);
        }
    }
    Ok(Assignment { k: 2, phi })
}

/// What a Hamiltonian path certifies for [`one_assignment`], and which
/// extra preimage bounds the result carries. Writing `v0` and `v2` for
/// the path's endpoints (always outer corners) and `v1` for the third
/// outer corner:
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneVariant {
    /// Path covers every vertex; `v1` and `v2` are each chosen at most
    /// once, `v0` never. The outer triangle gets `v1`.
    EndsBounded,
    /// Path covers every vertex; `v1` is chosen at most twice and the
    /// endpoints never. The outer triangle gets `v1`.
    MiddleOnly,
    /// Path covers every vertex except `v1`; `v2` is chosen at most
    /// once, `v0` and `v1` never. The outer triangle gets `v2`.
    SkipMiddle,
}

fn path_labels(map: &PlaneMap, path: &[usize]) -> Result<(usize, usize, usize)> {
    if path.len() < 2 {
        return Err(Error::BadCycle(String::from("path has fewer than 2 vertices")));
    }
    let v0 = path[0];
    let v2 = *path.last().expect("nonempty");
    if map.outer_pos(v0).is_none() || map.outer_pos(v2).is_none() || v0 == v2 {
        return Err(Error::BadCycle(format!(
            "path endpoints {v0} and {v2} must be two distinct outer corners"
        )));
    }
    let v1 = *map
        .outer
        .iter()
        .find(|c| **c != v0 && **c != v2)
        .expect("outer triangle has three corners");
    Ok((v0, v1, v2))
}

fn check_path(map: &PlaneMap, variant: OneVariant, path: &[usize]) -> Result<()> {
    let (_, v1, _) = path_labels(map, path)?;
    let skip = variant == OneVariant::SkipMiddle;
    let want = if skip { map.n - 1 } else { map.n };
    if path.len() != want {
        return Err(Error::BadCycle(format!(
            "path visits {} vertices, expected {want}",
            path.len()
        )));
    }
    let mut seen = vec![false; map.n];
    for &p in path {
        if p >= map.n || seen[p] {
            return Err(Error::BadCycle(format!("vertex {p} out of range or repeated")));
        }
        seen[p] = true;
    }
    if skip && seen[v1] {
        return Err(Error::BadCycle(format!(
            "path must avoid the third outer corner {v1}"
        )));
    }
    for w in path.windows(2) {
        if !map.has_edge(w[0], w[1]) {
            return Err(Error::BadCycle(format!("{}-{} is not an edge", w[0], w[1])));
        }
    }
    Ok(())
}

type Phi = BTreeMap<[usize; 3], usize>;
type DiveMemo = BTreeMap<(usize, usize, [usize; 3]), Option<(Phi, [usize; 3])>>;

/// One child separating triangle met by the path: the region it cuts off,
/// the stretch of path inside it (region labels), and its corners in
/// parent labels, run ends first, the corner off the run last.
struct Dive {
    reg: Region,
    sub: Vec<usize>,
    corners: [usize; 3],
}

/// Searches for a capacity-1 assignment of `g` sending the outer triangle
/// to `root` and picking each vertex `v` at most `caps[v]` times in total.
/// Vertices outside `caps` may be picked once, except the special vertex
/// opposing `root`, which the outer choice exempts up to twice. `Ok(None)`
/// means nothing fits the budget; `Err` means a structural invariant broke.
///
/// Each child separating triangle is handed a root corner and a budget for
/// its three corners and solved recursively; the corner picks its
/// sub-assignment actually makes are charged against this level's books.
/// Children are retried under every distinct grant before the level gives
/// up, so the search is exhaustive over rooted assignments within `caps`.
fn one_solve(
    g: &PlaneMap,
    path: &[usize],
    root: usize,
    caps: &BTreeMap<usize, usize>,
) -> Result<Option<Phi>> {
    let st = separation_tree(g)?;
    let top = st
        .root
        .ok_or_else(|| Error::Internal(String::from("missing outer filled triangle")))?;
    let special = special_opposing(g, root)?;
    let base = |v: usize| {
        if v == special {
            2
        } else {
            caps.get(&v).copied().unwrap_or(1)
        }
    };
    if base(root) == 0 {
        return Ok(None);
    }
    let mut phi = Phi::new();
    phi.insert(st.nodes[top].verts, root);
    let kids = st.children(top);
    if kids.is_empty() {
        return Ok(Some(phi));
    }

    let mut dives = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for kid in kids {
        let tri = st.nodes[kid].verts;
        let reg = region_of(g, tri)?;
        let mut inside = vec![false; g.n];
        for &p in &reg.to_parent {
            inside[p] = true;
        }
        let corner = |p: usize| tri.contains(&p);

        let mut run: Option<(usize, usize)> = None;
        for e in 0..path.len() - 1 {
            let (a, b) = (path[e], path[e + 1]);
            if !(inside[a] && inside[b]) || (corner(a) && corner(b)) {
                continue;
            }
            run = Some(match run {
                None => (e, e),
                Some((s, t)) if e == t + 1 => (s, e),
                Some(_) => {
                    return Err(Error::Internal(format!(
                        "path dives into triangle {}-{}-{} twice",
                        tri[0], tri[1], tri[2]
                    )))
                }
            });
        }
        let (s, t) = run.ok_or_else(|| {
            Error::Internal(format!(
                "path never enters triangle {}-{}-{}",
                tri[0], tri[1], tri[2]
            ))
        })?;
        spans.push((s, t));
        let a = path[s];
        let b = path[t + 1];
        if !corner(a) || !corner(b) || a == b {
            return Err(Error::Internal(String::from(
                "restricted path must end on two distinct corners",
            )));
        }
        let x = *tri
            .iter()
            .find(|&&c| c != a && c != b)
            .expect("three distinct corners");

        let sub: Vec<usize> = path[s..=t + 1]
            .iter()
            .map(|&p| {
                reg.from_parent(p)
                    .ok_or_else(|| Error::Internal(format!("vertex {p} missing from region")))
            })
            .collect::<Result<_>>()?;
        if sub.len() + 1 == reg.map.n {
            let mut seen = vec![false; reg.map.n];
            for &p in &sub {
                seen[p] = true;
            }
            let miss = (0..reg.map.n).find(|&p| !seen[p]).expect("one vertex unseen");
            if reg.to_parent[miss] != x {
                return Err(Error::Internal(format!(
                    "skipped vertex {} is not the free corner",
                    reg.to_parent[miss]
                )));
            }
        } else if sub.len() != reg.map.n {
            return Err(Error::Internal(String::from(
                "restricted path misses more than one region vertex",
            )));
        }
        dives.push(Dive { reg, sub, corners: [a, b, x] });
    }

    spans.sort_unstable();
    for w in spans.windows(2) {
        if w[0].1 >= w[1].0 {
            return Err(Error::Internal(String::from(
                "restricted paths share an edge",
            )));
        }
    }

    let mut avail: BTreeMap<usize, usize> = BTreeMap::new();
    avail.insert(root, base(root) - 1);
    for d in &dives {
        for &c in &d.corners {
            if !avail.contains_key(&c) {
                avail.insert(c, base(c));
            }
        }
    }
    let mut memo = DiveMemo::new();
    if place_kids(&dives, 0, &mut avail, &mut memo, &mut phi)? {
        if phi.len() != st.nodes.len() {
            return Err(Error::Internal(format!(
                "assigned {} of {} filled triangles",
                phi.len(),
                st.nodes.len()
            )));
        }
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

/// Places the children from `i` on within the remaining budget `avail`,
/// extending `out`. The grant lattice per child and root corner runs from
/// the widest affordable budget down to the stingiest; tighter grants only
/// matter after a wide success starved a later sibling, and a child that
/// fails wide open fails under every smaller grant too.
fn place_kids(
    dives: &[Dive],
    i: usize,
    avail: &mut BTreeMap<usize, usize>,
    memo: &mut DiveMemo,
    out: &mut Phi,
) -> Result<bool> {
    let Some(d) = dives.get(i) else {
        return Ok(true);
    };
    let corners = d.corners;
    // The corner off the run goes first: rooting there spares the run
    // ends, which are the corners later siblings can share.
    for r in [corners[2], corners[0], corners[1]] {
        let ri = corners.iter().position(|&c| c == r).expect("own corner");
        let lim = [
            avail[&corners[0]].min(2),
            avail[&corners[1]].min(2),
            avail[&corners[2]].min(2),
        ];
        if lim[ri] == 0 {
            continue;
        }
        let mut opts: Vec<[usize; 3]> = Vec::new();
        for ga in 0..=lim[0] {
            for gb in 0..=lim[1] {
                for gx in 0..=lim[2] {
                    let gam = [ga, gb, gx];
                    if gam[ri] > 0 {
                        opts.push(gam);
                    }
                }
            }
        }
        opts.sort_by_key(|gam| Reverse(gam.iter().sum::<usize>()));
        for gam in opts {
            let key = (i, r, gam);
            if !memo.contains_key(&key) {
                let sol = dive_solution(d, r, gam)?;
                memo.insert(key, sol);
            }
            let Some((sub, used)) = memo.get(&key).expect("just solved").clone() else {
                if gam == lim {
                    break;
                }
                continue;
            };
            for (j, &c) in corners.iter().enumerate() {
                let slot = avail.get_mut(&c).expect("tracked corner");
                *slot = slot.checked_sub(used[j]).ok_or_else(|| {
                    Error::Internal(String::from("child spent more than its grant"))
                })?;
            }
            let keys: Vec<[usize; 3]> = sub.keys().copied().collect();
            out.extend(sub);
            if place_kids(dives, i + 1, avail, memo, out)? {
                return Ok(true);
            }
            for k in &keys {
                out.remove(k);
            }
            for (j, &c) in corners.iter().enumerate() {
                *avail.get_mut(&c).expect("tracked corner") += used[j];
            }
        }
    }
    Ok(false)
}

/// Solves one child under root `r` and corner budget `gam`, both in parent
/// labels. Returns the sub-assignment translated back to parent labels
/// plus how many picks actually landed on each corner.
fn dive_solution(d: &Dive, r: usize, gam: [usize; 3]) -> Result<Option<(Phi, [usize; 3])>> {
    let relabel = |v: usize| {
        d.reg
            .from_parent(v)
            .ok_or_else(|| Error::Internal(format!("vertex {v} missing from region")))
    };
    let mut caps = BTreeMap::new();
    for (j, &c) in d.corners.iter().enumerate() {
        caps.insert(relabel(c)?, gam[j]);
    }
    let Some(sub) = one_solve(&d.reg.map, &d.sub, relabel(r)?, &caps)? else {
        return Ok(None);
    };
    let mut phi = Phi::new();
    let mut used = [0usize; 3];
    for (t, p) in sub {
        let key = sort3([
            d.reg.to_parent[t[0]],
            d.reg.to_parent[t[1]],
            d.reg.to_parent[t[2]],
        ]);
        let pick = d.reg.to_parent[p];
        if let Some(j) = d.corners.iter().position(|&c| c == pick) {
            used[j] += 1;
        }
        phi.insert(key, pick);
    }
    Ok(Some((phi, used)))
}

/// Assignment at capacity 1 from a Hamiltonian path. The path's endpoints
/// must be outer corners; see [`OneVariant`] for the exact hypothesis and
/// the extra bounds, which are verified before returning.
pub fn one_assignment(map: &PlaneMap, variant: OneVariant, path: &[usize]) -> Result<Assignment> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(String::from(
            "a bare triangle has no filled triangle to assign",
        )));
    }
    check_path(map, variant, path)?;
    let (v0, v1, v2) = path_labels(map, path)?;
    let (root, bounds) = match variant {
        OneVariant::EndsBounded => (v1, [(v0, 0), (v1, 1), (v2, 1)]),
        OneVariant::MiddleOnly => (v1, [(v0, 0), (v1, 2), (v2, 0)]),
        OneVariant::SkipMiddle => (v2, [(v0, 0), (v1, 0), (v2, 1)]),
    };
    let phi = one_solve(map, path, root, &BTreeMap::from(bounds))?.ok_or_else(|| {
        Error::Internal(format!(
            "no capacity-1 assignment fits the promised corner bounds (n = {}, path {:?})",
            map.n, path
        ))
    })?;
    let a = Assignment { k: 1, phi };
    finish_one(map, a, &bounds, path)
}

/// Capacity-1 assignment from a covering Hamiltonian path, sending the
/// outer triangle to the corner off the path's ends and keeping the
/// endpoint `avoid` out of the image entirely. The other endpoint may be
/// picked once and the rooted corner twice, which is everything plain
/// capacity permits, so this succeeds whenever any such assignment exists.
///
/// The decomposition pipeline needs exactly this budget: the part spanning
/// everything but the middle label cannot reattach around a pick there.
pub(crate) fn one_valid(map: &PlaneMap, path: &[usize], avoid: usize) -> Result<Assignment> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(String::from(
            "a bare triangle has no filled triangle to assign",
        )));
    }
    check_path(map, OneVariant::EndsBounded, path)?;
    let (v0, v1, v2) = path_labels(map, path)?;
    if avoid != v0 && avoid != v2 {
        return Err(Error::Param(format!(
            "avoided vertex {avoid} is not a path endpoint"
        )));
    }
    let free = if avoid == v0 { v2 } else { v0 };
    let bounds = [(avoid, 0), (v1, 2), (free, 1)];
    let phi = one_solve(map, path, v1, &BTreeMap::from(bounds))?.ok_or_else(|| {
        Error::Internal(format!(
            "no capacity-1 assignment rooted at {v1} avoiding {avoid} (n = {}, path {:?})",
            map.n, path
        ))
    })?;
    let a = Assignment { k: 1, phi };
    finish_one(map, a, &bounds, path)
}

fn finish_one(
    map: &PlaneMap,
    a: Assignment,
    bounds: &[(usize, usize); 3],
    path: &[usize],
) -> Result<Assignment> {
    let report = validate_assignment(map, &a)?;
    if let Some(first) = report.first() {
        return Err(Error::Internal(format!(
            "search broke capacity: {first} (n = {}, path {:?})",
            map.n, path
        )));
    }
    let mut count = vec![0usize; map.n];
    for &p in a.phi.values() {
        count[p] += 1;
    }
    for &(v, cap) in bounds {
        if count[v] > cap {
            return Err(Error::Internal(format!(
                "corner {v} chosen {} times, promised at most {cap} (n = {}, path {:?})",
                count[v], map.n, path
            )));
        }
    }
    Ok(a)
}

/// Checks an assignment against the capacity rules. An empty report means
/// the assignment is valid at its stated capacity.
pub fn validate_assignment(map: &PlaneMap, a: &Assignment) -> Result<Vec<String>> {
    map.require(MapKind::Triangulation)?;
    let mut report = Vec::new();
    let filled = filled_triangles(map)?;
    let keys: BTreeSet<[usize; 3]> = filled.iter().map(|r| r.verts).collect();
    for t in &keys {
        if !a.phi.contains_key(t) {
            report.push(format!("filled triangle {}-{}-{} unassigned", t[0], t[1], t[2]));
        }
    }
    for (t, &p) in &a.phi {
        if !keys.contains(t) {
            report.push(format!("{}-{}-{} is not a filled triangle", t[0], t[1], t[2]));
        } else if !t.contains(&p) {
            report.push(format!(
                "vertex {p} is not a corner of triangle {}-{}-{}",
                t[0], t[1], t[2]
            ));
        }
    }
    if !report.is_empty() {
        return Ok(report);
    }

    let mut exempt = vec![false; map.n];
    let outer_key = sort3([map.outer[0], map.outer[1], map.outer[2]]);
    if let Some(&w) = a.phi.get(&outer_key) {
        exempt[w] = true;
    }
    for (t, &p) in &a.phi {
        let hull = hull_of(map, *t)?;
        let local = hull.from_parent(p).ok_or_else(|| {
            Error::Internal(format!("corner {p} missing from its region"))
        })?;
        let opp = special_opposing(&hull.map, local)?;
        exempt[hull.to_parent[opp]] = true;
    }

    let mut count = vec![0usize; map.n];
    for &p in a.phi.values() {
        count[p] += 1;
    }
    for v in 0..map.n {
        let cap = a.k + usize::from(exempt[v]);
        if count[v] > cap {
            report.push(format!(
                "vertex {v} chosen {} times, capacity {cap}",
                count[v]
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn edge_set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        edges.iter().copied().collect()
    }

    /// Degrees over an edge list; the list must form a path on
    /// `verts` vertices.
    fn assert_path(edges: &[(usize, usize)], verts: usize) {
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in edges {
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
        }
        assert_eq!(deg.len(), verts, "vertex count");
        assert_eq!(edges.len() + 1, verts, "edge count");
        let ones = deg.values().filter(|&&d| d == 1).count();
        assert!(deg.values().all(|&d| d <= 2), "degree at most 2");
        assert_eq!(ones, 2, "exactly two endpoints");
        // Connected: walk from one endpoint.
        let start = *deg.iter().find(|(_, &d)| d == 1).unwrap().0;
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            stack.extend(adj[&v].iter().copied());
        }
        assert_eq!(seen.len(), verts, "path is connected");
    }

    #[test]
    fn k4_one_edge_per_corner() {
        let m = generate::k4();
        let d = inner_decomposition(&m, 0, 1, 2).unwrap();
        assert_eq!(d.f_x, vec![(0, 3)]);
        assert_eq!(d.f_y, vec![(1, 3)]);
        assert_eq!(d.f_z, vec![(2, 3)]);
        assert_eq!(d.u, [3, 3, 3]);
    }

    #[test]
    fn octahedron_parts_partition_interior() {
        let m = generate::octahedron();
        let d = inner_decomposition(&m, 0, 1, 5).unwrap();
        assert_eq!(d.f_x.len(), 3);
        assert_eq!(d.f_y.len(), 3);
        assert_eq!(d.f_z.len(), 3);
        let mut union = edge_set(&d.f_x);
        union.extend(&d.f_y);
        union.extend(&d.f_z);
        let interior: BTreeSet<(usize, usize)> = m
            .edges()
            .into_iter()
            .filter(|&(a, b)| !(m.is_outer(a) && m.is_outer(b)))
            .collect();
        assert_eq!(union, interior);
        assert_path(&d.f_x, 4);
    }

    #[test]
    fn anticyclic_roles_also_partition() {
        let m = generate::octahedron();
        let d = inner_decomposition(&m, 0, 5, 1).unwrap();
        assert_eq!(d.f_x.len(), 3);
        assert_eq!(d.f_y.len(), 3);
        assert_eq!(d.f_z.len(), 3);
        assert_path(&d.f_x, 4);
    }

    #[test]
    fn doublewheel_first_part_is_a_path() {
        let m = generate::doublewheel(6).unwrap();
        let d = inner_decomposition(&m, 0, 1, 7).unwrap();
        assert_eq!(d.f_x.len(), 5);
        assert_path(&d.f_x, 6);
        // Path starts at the corner, crosses its mark, ends opposite.
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &d.f_x {
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
        }
        assert_eq!(deg[&0], 1);
        assert_eq!(deg[&d.u[0]], 1);
    }

    #[test]
    fn separating_triangle_is_rejected() {
        let m = generate::apollonian(1, 7);
        let [a, b, c] = [m.outer[0], m.outer[1], m.outer[2]];
        match inner_decomposition(&m, a, b, c) {
            Err(Error::SeparatingTriangle(_)) => {}
            other => panic!("expected separating triangle error, got {other:?}"),
        }
    }

    #[test]
    fn middle_vertex_k4_all_to_center() {
        let m = generate::k4();
        let psi = middle_vertex_map(&m, 3).unwrap();
        assert_eq!(psi.len(), 3);
        assert!(psi.values().all(|&p| p == 3));
    }

    #[test]
    fn middle_vertex_octahedron_counts() {
        let m = generate::octahedron();
        let u = special_opposing(&m, m.outer[0]).unwrap();
        let psi = middle_vertex_map(&m, u).unwrap();
        assert_eq!(psi.len(), 7);
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in psi.values() {
            *count.entry(p).or_default() += 1;
        }
        assert_eq!(count[&u], 3);
        let mut others: Vec<usize> = count
            .iter()
            .filter(|(&v, _)| v != u)
            .map(|(_, &c)| c)
            .collect();
        others.sort_unstable();
        assert_eq!(others, vec![2, 2]);
    }

    #[test]
    fn middle_vertex_total_is_face_count() {
        let m = generate::doublewheel(10).unwrap();
        let u = special_opposing(&m, m.outer[1]).unwrap();
        let psi = middle_vertex_map(&m, u).unwrap();
        assert_eq!(psi.len(), 2 * m.n - 5);
    }

    #[test]
    fn middle_vertex_rejects_plain_inner_vertex() {
        let m = generate::doublewheel(6).unwrap();
        // Vertex 3 sits on the middle ring away from the outer corners.
        assert!(matches!(middle_vertex_map(&m, 3), Err(Error::Param(_))));
    }

    #[test]
    fn zero_assignment_on_octahedron() {
        let m = generate::octahedron();
        let a = zero_assignment(&m, 0).unwrap();
        assert_eq!(a.k, 0);
        assert_eq!(a.phi.len(), 1);
        assert_eq!(a.phi[&sort3([0, 1, 5])], 0);
        assert!(validate_assignment(&m, &a).unwrap().is_empty());
    }

    #[test]
    fn zero_assignment_needs_four_connectivity() {
        let m = generate::apollonian(1, 3);
        assert!(matches!(
            zero_assignment(&m, m.outer[0]),
            Err(Error::SeparatingTriangle(_))
        ));
        assert!(matches!(
            zero_assignment(&generate::triangle(), 0),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn two_assignment_covers_stacked_maps() {
        let m = generate::apollonian(6, 11);
        let a = two_assignment(&m, m.outer[0]).unwrap();
        assert_eq!(a.k, 2);
        assert_eq!(a.phi.len(), filled_triangles(&m).unwrap().len());
        assert!(validate_assignment(&m, &a).unwrap().is_empty());
    }

    #[test]
    fn two_assignment_on_four_connected_is_just_the_root() {
        let m = generate::octahedron();
        let a = two_assignment(&m, 1).unwrap();
        assert_eq!(a.phi.len(), 1);
        assert_eq!(a.phi[&sort3([0, 1, 5])], 1);
        assert!(validate_assignment(&m, &a).unwrap().is_empty());
    }

    #[test]
    fn one_assignment_base_case() {
        let m = generate::octahedron();
        let a = one_assignment(&m, OneVariant::EndsBounded, &[0, 3, 4, 2, 1, 5]).unwrap();
        assert_eq!(a.k, 1);
        assert_eq!(a.phi.len(), 1);
        assert_eq!(a.phi[&sort3([0, 1, 5])], 1);
        assert!(validate_assignment(&m, &a).unwrap().is_empty());
    }

    #[test]
    fn one_assignment_descends_into_a_stack() {
        let m = generate::octahedron();
        let f = m.face_with_set([0, 1, 4]).unwrap();
        let m = m.stack_into_face([f[0], f[1], f[2]]).unwrap();
        let a = one_assignment(&m, OneVariant::EndsBounded, &[0, 6, 4, 3, 2, 1, 5]).unwrap();
        assert_eq!(a.phi.len(), 2);
        assert_eq!(a.phi[&sort3([0, 1, 5])], 1);
        assert_eq!(a.phi[&sort3([0, 1, 4])], 4);
        assert!(validate_assignment(&m, &a).unwrap().is_empty());
    }

    #[test]
    fn one_assignment_rejects_bad_paths() {
        let m = generate::octahedron();
        // Endpoint off the outer triangle.
        assert!(matches!(
            one_assignment(&m, OneVariant::EndsBounded, &[0, 1, 5, 2, 3, 4]),
            Err(Error::BadCycle(_))
        ));
        // Not covering.
        assert!(matches!(
            one_assignment(&m, OneVariant::EndsBounded, &[0, 3, 4, 1, 5]),
            Err(Error::BadCycle(_))
        ));
        // Non-edge step.
        assert!(matches!(
            one_assignment(&m, OneVariant::EndsBounded, &[0, 2, 4, 3, 1, 5]),
            Err(Error::BadCycle(_))
        ));
    }

    #[test]
    fn validator_flags_overfull_vertices() {
        let m = generate::octahedron();
        let f = m.face_with_set([0, 1, 4]).unwrap();
        let m = m.stack_into_face([f[0], f[1], f[2]]).unwrap();
        let mut phi = BTreeMap::new();
        phi.insert(sort3([0, 1, 5]), 0);
        phi.insert(sort3([0, 1, 4]), 0);
        let a = Assignment { k: 0, phi };
        let report = validate_assignment(&m, &a).unwrap();
        assert!(report.iter().any(|l| l.contains("capacity")));
    }

    #[test]
    fn validator_flags_missing_triangles() {
        let m = generate::apollonian(2, 5);
        let mut a = two_assignment(&m, m.outer[0]).unwrap();
        let key = *a.phi.keys().next().unwrap();
        a.phi.remove(&key);
        let report = validate_assignment(&m, &a).unwrap();
        assert!(report.iter().any(|l| l.contains("unassigned")));
    }
}
