use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Which class of plane map an operation expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Every face is a triangle, the outer face included.
    Triangulation,
    /// Every inner face is a triangle; the outer face is any simple cycle.
    InnerDisk,
}

/// Plane graph given by a rotation system.
///
/// `rot[v]` lists the neighbors of `v` in counterclockwise order and `outer`
/// is the outer face boundary in counterclockwise order, so the interior
/// lies on the left when walking `outer`. Faces are always derived by
/// tracing, never stored: the face to the left of the dart `u -> v`
/// continues with `v -> w`, where `w` is the neighbor preceding `u` in
/// `rot[v]`. Inner faces trace counterclockwise; the outer face traces as
/// the reverse of `outer`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    pub n: usize,
    pub rot: Vec<Vec<usize>>,
    pub outer: Vec<usize>,
}

/// Counterclockwise path along an outer cycle, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterPath {
    pub vertices: Vec<usize>,
}

impl OuterPath {
    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// The path without its endpoints. A one-vertex path has no interior.
    pub fn interior(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// A submap together with the vertex relabeling back into its parent.
/// `to_parent[new_id] = old_id`; the list is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub map: PlaneMap,
    pub to_parent: Vec<usize>,
}

impl Region {
    pub fn from_parent(&self, old: usize) -> Option<usize> {
        self.to_parent.binary_search(&old).ok()
    }
}

/// Straight-line grid drawing; `coords[v] = (x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub coords: Vec<(i64, i64)>,
}

pub(crate) fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl PlaneMap {
    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.rot[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn ring_index(&self, v: usize, u: usize) -> Option<usize> {
        self.rot[v].iter().position(|&w| w == u)
    }

    /// Neighbor preceding `u` in the counterclockwise ring of `v`.
    /// Panics if `u` is not a neighbor of `v`.
    pub fn pred_in_rot(&self, v: usize, u: usize) -> usize {
        let i = self
            .ring_index(v, u)
            .unwrap_or_else(|| panic!("{u} not in rotation of {v}"));
        let ring = &self.rot[v];
        ring[(i + ring.len() - 1) % ring.len()]
    }

    /// Neighbor following `u` in the counterclockwise ring of `v`.
    /// Panics if `u` is not a neighbor of `v`.
    pub fn succ_in_rot(&self, v: usize, u: usize) -> usize {
        let i = self
            .ring_index(v, u)
            .unwrap_or_else(|| panic!("{u} not in rotation of {v}"));
        let ring = &self.rot[v];
        ring[(i + 1) % ring.len()]
    }

    /// Third vertex of the face to the left of the dart `u -> v`, assuming
    /// that face is a triangle.
    pub fn apex_left(&self, u: usize, v: usize) -> usize {
        self.pred_in_rot(v, u)
    }

    /// Vertex sequence of the face to the left of the dart `u -> v`.
    /// Call only on maps that passed validation.
    pub fn face_left_of(&self, u: usize, v: usize) -> Vec<usize> {
        self.trace_face(u, v, usize::MAX)
            .expect("face tracing on unvalidated map")
    }

    fn trace_face(&self, u: usize, v: usize, limit: usize) -> Option<Vec<usize>> {
        let mut seq = Vec::new();
        let (mut a, mut b) = (u, v);
        loop {
            seq.push(a);
            let i = self.ring_index(b, a)?;
            let ring = &self.rot[b];
            let w = ring[(i + ring.len() - 1) % ring.len()];
            a = b;
            b = w;
            if (a, b) == (u, v) {
                return Some(seq);
            }
            if seq.len() > limit {
                return None;
            }
        }
    }

    /// All face orbits, the outer one included, each rotated to start at
    /// its lexicographically smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.orbit_table().0
    }

    fn orbit_table(&self) -> (Vec<Vec<usize>>, BTreeMap<(usize, usize), usize>) {
        let mut orbits = Vec::new();
        let mut of_dart = BTreeMap::new();
        for u in 0..self.n {
            for &v in &self.rot[u] {
                if of_dart.contains_key(&(u, v)) {
                    continue;
                }
                let seq = self.face_left_of(u, v);
                let id = orbits.len();
                let len = seq.len();
                for i in 0..len {
                    of_dart.insert((seq[i], seq[(i + 1) % len]), id);
                }
                orbits.push(rotate_to_min_dart(seq));
            }
        }
        (orbits, of_dart)
    }

    /// The outer face orbit; equals `outer` reversed on valid maps.
    pub fn outer_trace(&self) -> Vec<usize> {
        self.face_left_of(self.outer[1], self.outer[0])
    }

    fn orbit_is_outer(&self, orbit: &[usize]) -> bool {
        let d = (self.outer[1], self.outer[0]);
        let len = orbit.len();
        (0..len).any(|i| (orbit[i], orbit[(i + 1) % len]) == d)
    }

    /// All faces except the outer one.
    pub fn inner_faces(&self) -> Vec<Vec<usize>> {
        self.faces()
            .into_iter()
            .filter(|f| !self.orbit_is_outer(f))
            .collect()
    }

    /// Face (outer included) whose vertex set is `tri`, in traced order.
    pub fn face_with_set(&self, tri: [usize; 3]) -> Option<Vec<usize>> {
        let key = sort3(tri);
        self.faces()
            .into_iter()
            .find(|f| f.len() == 3 && sort3([f[0], f[1], f[2]]) == key)
    }

    pub fn outer_pos(&self, v: usize) -> Option<usize> {
        self.outer.iter().position(|&w| w == v)
    }

    pub fn is_outer(&self, v: usize) -> bool {
        self.outer_pos(v).is_some()
    }

    pub fn outer_next(&self, v: usize) -> Result<usize> {
        let i = self.outer_pos(v).ok_or(Error::NotOnOuter(v))?;
        Ok(self.outer[(i + 1) % self.outer.len()])
    }

    pub fn outer_prev(&self, v: usize) -> Result<usize> {
        let i = self.outer_pos(v).ok_or(Error::NotOnOuter(v))?;
        Ok(self.outer[(i + self.outer.len() - 1) % self.outer.len()])
    }

    /// Structural diagnostics; empty iff the map is a valid `kind` map.
    pub fn validate(&self, kind: MapKind) -> Vec<String> {
        let mut bad = Vec::new();
        if self.rot.len() != self.n {
            bad.push(format!(
                "rotation table has {} entries for {} vertices",
                self.rot.len(),
                self.n
            ));
            return bad;
        }
        if self.n < 3 {
            bad.push(format!("{} vertices, need at least 3", self.n));
            return bad;
        }
        for v in 0..self.n {
            let ring = &self.rot[v];
            if ring.len() < 2 {
                bad.push(format!("vertex {v} has degree {}", ring.len()));
            }
            let mut seen = BTreeSet::new();
            for &u in ring {
                if u >= self.n {
                    bad.push(format!("vertex {v} lists out-of-range neighbor {u}"));
                } else if u == v {
                    bad.push(format!("vertex {v} lists itself as a neighbor"));
                } else if !seen.insert(u) {
                    bad.push(format!("vertex {v} lists neighbor {u} twice"));
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for v in 0..self.n {
            for &u in &self.rot[v] {
                if !self.has_edge(u, v) {
                    bad.push(format!("edge {v}-{u} is not symmetric"));
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        let mut reach = vec![false; self.n];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.rot[v] {
                if !reach[u] {
                    reach[u] = true;
                    stack.push(u);
                }
            }
        }
        if reach.iter().any(|r| !r) {
            bad.push(String::from("graph is not connected"));
            return bad;
        }
        if self.outer.len() < 3 {
            bad.push(format!("outer cycle has length {}", self.outer.len()));
            return bad;
        }
        let mut seen = BTreeSet::new();
        for (i, &v) in self.outer.iter().enumerate() {
            if v >= self.n {
                bad.push(format!("outer cycle lists out-of-range vertex {v}"));
                return bad;
            }
            if !seen.insert(v) {
                bad.push(format!("outer cycle repeats vertex {v}"));
                return bad;
            }
            let w = self.outer[(i + 1) % self.outer.len()];
            if !self.has_edge(v, w) {
                bad.push(format!("outer cycle entries {v} and {w} are not adjacent"));
                return bad;
            }
        }

        let e = self.edge_count();
        let limit = 2 * e + 2;
        let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut orbits = Vec::new();
        for u in 0..self.n {
            for &v in &self.rot[u] {
                if visited.contains(&(u, v)) {
                    continue;
                }
                match self.trace_face(u, v, limit) {
                    Some(seq) => {
                        let len = seq.len();
                        for i in 0..len {
                            visited.insert((seq[i], seq[(i + 1) % len]));
                        }
                        orbits.push(seq);
                    }
                    None => {
                        bad.push(format!("face tracing from dart {u}->{v} does not close"));
                        return bad;
                    }
                }
            }
        }
        let f = orbits.len();
        if self.n + f != e + 2 {
            bad.push(format!(
                "face tracing gives F={f}; V-E+F={}, Euler requires 2",
                self.n as i64 - e as i64 + f as i64
            ));
        }

        let mut expected = Vec::with_capacity(self.outer.len());
        for i in 0..self.outer.len() {
            let k = self.outer.len();
            expected.push(self.outer[(k + 1 - i) % k]);
        }
        let outer_orbit = orbits
            .iter()
            .find(|seq| {
                let len = seq.len();
                (0..len).any(|i| (seq[i], seq[(i + 1) % len]) == (self.outer[1], self.outer[0]))
            })
            .cloned();
        match outer_orbit {
            Some(seq) if cyclic_eq(&seq, &expected) => {}
            _ => bad.push(String::from("stored outer cycle does not bound a face")),
        }

        for seq in &orbits {
            let is_outer = {
                let len = seq.len();
                (0..len).any(|i| (seq[i], seq[(i + 1) % len]) == (self.outer[1], self.outer[0]))
            };
            if is_outer && kind == MapKind::InnerDisk {
                continue;
            }
            if seq.len() != 3 {
                bad.push(format!(
                    "face {:?} has length {}, expected a triangle",
                    seq,
                    seq.len()
                ));
            }
        }
        if kind == MapKind::Triangulation && bad.is_empty() {
            if e != 3 * self.n - 6 {
                bad.push(format!("{} edges, a triangulation needs {}", e, 3 * self.n - 6));
            }
            if f != 2 * self.n - 4 {
                bad.push(format!("{} faces, a triangulation needs {}", f, 2 * self.n - 4));
            }
        }
        bad
    }

    pub fn is_valid(&self, kind: MapKind) -> bool {
        self.validate(kind).is_empty()
    }

    pub fn require(&self, kind: MapKind) -> Result<()> {
        match self.validate(kind).into_iter().next() {
            None => Ok(()),
            Some(first) => Err(Error::Invalid(first)),
        }
    }

    /// Re-embed with `face` as the outer face. The rotation system is
    /// unchanged; only the distinguished outer cycle moves.
    pub fn reroot(&self, face: [usize; 3]) -> Result<PlaneMap> {
        for v in face {
            if v >= self.n {
                return Err(Error::FaceNotFound(sort3(face)));
            }
        }
        let orbit = self
            .face_with_set(face)
            .ok_or(Error::FaceNotFound(sort3(face)))?;
        let mut outer = orbit;
        outer.reverse();
        Ok(PlaneMap {
            n: self.n,
            rot: self.rot.clone(),
            outer,
        })
    }

    /// The same embedding with every ring and the outer cycle rotated to
    /// start at its smallest vertex. Two maps are equal as embeddings iff
    /// their canonical forms are equal.
    pub fn canonical(&self) -> PlaneMap {
        let rotate = |ring: &Vec<usize>| -> Vec<usize> {
            if ring.is_empty() {
                return Vec::new();
            }
            let k = ring
                .iter()
                .enumerate()
                .min_by_key(|&(_, v)| v)
                .map(|(i, _)| i)
                .unwrap_or(0);
            ring[k..].iter().chain(&ring[..k]).copied().collect()
        };
        PlaneMap {
            n: self.n,
            rot: self.rot.iter().map(rotate).collect(),
            outer: rotate(&self.outer),
        }
    }

    /// Reflect the embedding: all rings and the outer cycle reverse.
    pub fn mirror(&self) -> PlaneMap {
        let rot = self
            .rot
            .iter()
            .map(|ring| ring.iter().rev().copied().collect())
            .collect();
        let mut outer = self.outer.clone();
        outer.reverse();
        PlaneMap {
            n: self.n,
            rot,
            outer,
        }
    }

    /// Counterclockwise path from `u` to `v` along the outer cycle,
    /// endpoints included; `[u]` when `u = v`.
    pub fn outer_path(&self, u: usize, v: usize) -> Result<OuterPath> {
        let i = self.outer_pos(u).ok_or(Error::NotOnOuter(u))?;
        self.outer_pos(v).ok_or(Error::NotOnOuter(v))?;
        let k = self.outer.len();
        let mut vertices = vec![u];
        let mut j = i;
        while self.outer[j] != v {
            j = (j + 1) % k;
            vertices.push(self.outer[j]);
        }
        Ok(OuterPath { vertices })
    }

    fn check_cycle(&self, cycle: &[usize]) -> Result<()> {
        if cycle.len() < 3 {
            return Err(Error::BadCycle(format!("length {}", cycle.len())));
        }
        let mut seen = BTreeSet::new();
        for (i, &v) in cycle.iter().enumerate() {
            if v >= self.n {
                return Err(Error::BadCycle(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(Error::BadCycle(format!("vertex {v} repeats")));
            }
            let w = cycle[(i + 1) % cycle.len()];
            if !self.has_edge(v, w) {
                return Err(Error::BadCycle(format!("{v} and {w} are not adjacent")));
            }
        }
        Ok(())
    }

    /// Vertices strictly inside the given cycle, which must be oriented
    /// with its interior on the left (counterclockwise). Errors if the
    /// flood on the left side reaches the outer face.
    pub fn interior_of_cycle(&self, cycle: &[usize]) -> Result<BTreeSet<usize>> {
        self.check_cycle(cycle)?;
        let (orbits, of_dart) = self.orbit_table();
        let outer_id = of_dart[&(self.outer[1], self.outer[0])];
        let mut cyc_edges = BTreeSet::new();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            cyc_edges.insert((a.min(b), a.max(b)));
        }
        let mut seen = BTreeSet::new();
        let mut stack = Vec::new();
        for i in 0..cycle.len() {
            let d = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let id = of_dart[&d];
            if seen.insert(id) {
                stack.push(id);
            }
        }
        while let Some(id) = stack.pop() {
            if id == outer_id {
                return Err(Error::BadCycle(String::from(
                    "left side of the cycle reaches the outer face",
                )));
            }
            let seq = &orbits[id];
            let len = seq.len();
            for i in 0..len {
                let (a, b) = (seq[i], seq[(i + 1) % len]);
                if cyc_edges.contains(&(a.min(b), a.max(b))) {
                    continue;
                }
                let nb = of_dart[&(b, a)];
                if seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        let on_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
        let mut interior = BTreeSet::new();
        for &id in &seen {
            for &v in &orbits[id] {
                if !on_cycle.contains(&v) {
                    interior.insert(v);
                }
            }
        }
        Ok(interior)
    }

    /// Submap drawn inside the closed disk bounded by `cycle` (interior on
    /// the left). The result's outer cycle is `cycle`, relabeled. Edges of
    /// the parent embedded strictly outside the disk are dropped even when
    /// both endpoints lie on the cycle.
    pub fn region(&self, cycle: &[usize]) -> Result<Region> {
        let interior = self.interior_of_cycle(cycle)?;
        let mut verts: BTreeSet<usize> = interior.clone();
        verts.extend(cycle.iter().copied());
        let to_parent: Vec<usize> = verts.iter().copied().collect();
        let mut new_id = BTreeMap::new();
        for (i, &v) in to_parent.iter().enumerate() {
            new_id.insert(v, i);
        }
        let k = cycle.len();
        let mut rot = vec![Vec::new(); to_parent.len()];
        for (i, &c) in cycle.iter().enumerate() {
            let nxt = cycle[(i + 1) % k];
            let prv = cycle[(i + k - 1) % k];
            let ring = &self.rot[c];
            let start = self
                .ring_index(c, nxt)
                .expect("cycle consecutive entries adjacent");
            let mut wedge = Vec::new();
            let mut j = start;
            loop {
                let u = ring[j];
                wedge.push(u);
                if u == prv {
                    break;
                }
                j = (j + 1) % ring.len();
                if j == start {
                    return Err(Error::Internal(format!(
                        "wedge at cycle vertex {c} never reaches its predecessor"
                    )));
                }
            }
            for &u in &wedge {
                if !verts.contains(&u) {
                    return Err(Error::Internal(format!(
                        "wedge at cycle vertex {c} leaves the region at {u}"
                    )));
                }
            }
            rot[new_id[&c]] = wedge.into_iter().map(|u| new_id[&u]).collect();
        }
        for &v in &interior {
            rot[new_id[&v]] = self.rot[v].iter().map(|u| new_id[&u]).collect();
        }
        let outer = cycle.iter().map(|c| new_id[c]).collect();
        Ok(Region {
            map: PlaneMap {
                n: to_parent.len(),
                rot,
                outer,
            },
            to_parent,
        })
    }

    /// Remove an outer vertex, exposing its link as new boundary. The
    /// remaining vertices are relabeled in increasing order of their old
    /// ids. Errors if a link vertex already lies on the boundary, which
    /// would pinch the outer cycle.
    pub fn delete_outer_vertex(&self, v: usize) -> Result<Region> {
        if self.n < 4 {
            return Err(Error::Param(format!(
                "cannot delete from a map with {} vertices",
                self.n
            )));
        }
        let pos = self.outer_pos(v).ok_or(Error::NotOnOuter(v))?;
        let k = self.outer.len();
        let p = self.outer[(pos + k - 1) % k];
        let s = self.outer[(pos + 1) % k];
        let ring = &self.rot[v];
        let start = self.ring_index(v, s).ok_or(Error::Internal(format!(
            "outer successor {s} missing from rotation of {v}"
        )))?;
        let mut fan = Vec::with_capacity(ring.len());
        for i in 0..ring.len() {
            fan.push(ring[(start + i) % ring.len()]);
        }
        if *fan.last().unwrap() != p {
            return Err(Error::Internal(format!(
                "rotation of outer vertex {v} does not end at its boundary predecessor"
            )));
        }
        let link = &fan[1..fan.len() - 1];
        for &x in link {
            if self.is_outer(x) {
                return Err(Error::Internal(format!(
                    "deleting {v} would pinch the boundary at {x}"
                )));
            }
        }
        let mut outer = Vec::with_capacity(k - 1 + link.len());
        for (i, &w) in self.outer.iter().enumerate() {
            if i == pos {
                outer.extend(link.iter().rev());
            } else {
                outer.push(w);
            }
        }
        let to_parent: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        let mut new_id = BTreeMap::new();
        for (i, &u) in to_parent.iter().enumerate() {
            new_id.insert(u, i);
        }
        let rot = to_parent
            .iter()
            .map(|&u| {
                self.rot[u]
                    .iter()
                    .filter(|&&w| w != v)
                    .map(|w| new_id[w])
                    .collect()
            })
            .collect();
        let outer = outer.into_iter().map(|u| new_id[&u]).collect();
        Ok(Region {
            map: PlaneMap {
                n: self.n - 1,
                rot,
                outer,
            },
            to_parent,
        })
    }

    /// Subdivide the face `[f0, f1, f2]` (given in traced orbit order) by
    /// a new vertex adjacent to all three corners. The new vertex gets id
    /// `n`. Stacking into the outer orbit leaves `outer` stale; reroot
    /// afterwards.
    pub fn stack_into_face(&self, face: [usize; 3]) -> Result<PlaneMap> {
        for v in face {
            if v >= self.n {
                return Err(Error::FaceNotFound(sort3(face)));
            }
        }
        if !self.has_edge(face[0], face[1]) {
            return Err(Error::FaceNotFound(sort3(face)));
        }
        let traced = self.face_left_of(face[0], face[1]);
        if traced.len() != 3 || traced[2] != face[2] {
            return Err(Error::FaceNotFound(sort3(face)));
        }
        let mut rot = self.rot.clone();
        let v = self.n;
        for i in 0..3 {
            let fi = face[i];
            let prv = face[(i + 2) % 3];
            let pos = self
                .ring_index(fi, prv)
                .expect("face corners pairwise adjacent");
            debug_assert_eq!(self.pred_in_rot(fi, prv), face[(i + 1) % 3]);
            rot[fi].insert(pos, v);
        }
        rot.push(face.to_vec());
        Ok(PlaneMap {
            n: self.n + 1,
            rot,
            outer: self.outer.clone(),
        })
    }

    /// Replace the inner edge `uv` by the other diagonal of the
    /// quadrilateral formed by its two incident triangles.
    pub fn flip(&self, u: usize, v: usize) -> Result<PlaneMap> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(Error::Param(format!("{u}-{v} is not an edge")));
        }
        let k = self.outer.len();
        for i in 0..k {
            let (a, b) = (self.outer[i], self.outer[(i + 1) % k]);
            if (a, b) == (u, v) || (a, b) == (v, u) {
                return Err(Error::Param(format!("{u}-{v} lies on the outer cycle")));
            }
        }
        let fa = self.face_left_of(u, v);
        let fb = self.face_left_of(v, u);
        if fa.len() != 3 || fb.len() != 3 {
            return Err(Error::Param(format!("{u}-{v} is not between two triangles")));
        }
        let a = fa[2];
        let b = fb[2];
        if a == b || self.has_edge(a, b) {
            return Err(Error::Param(format!(
                "flipping {u}-{v} would duplicate edge {a}-{b}"
            )));
        }
        let mut rot = self.rot.clone();
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
        let pos_a = rot[a].iter().position(|&w| w == v).unwrap();
        debug_assert_eq!(self.pred_in_rot(a, v), u);
        rot[a].insert(pos_a, b);
        let pos_b = rot[b].iter().position(|&w| w == u).unwrap();
        debug_assert_eq!(self.pred_in_rot(b, u), v);
        rot[b].insert(pos_b, a);
        Ok(PlaneMap {
            n: self.n,
            rot,
            outer: self.outer.clone(),
        })
    }

    /// Straight-line grid drawing with `base` on the bottom at y = 0 and
    /// everything else strictly above, on a grid of at most
    /// `(2n-4) x (n-2)`. The base edge must lie on the outer face.
    pub fn fpp_draw(&self, base: (usize, usize)) -> Result<Drawing> {
        self.require(MapKind::Triangulation)?;
        let k = self.outer.len();
        let mut oriented = None;
        for i in 0..k {
            let (a, b) = (self.outer[i], self.outer[(i + 1) % k]);
            if (a, b) == (base.0, base.1) || (a, b) == (base.1, base.0) {
                oriented = Some((a, b));
                break;
            }
        }
        let (v1, v2) = oriented.ok_or(Error::Param(format!(
            "base edge {}-{} is not on the outer face",
            base.0, base.1
        )))?;

        // Peel boundary vertices without chords down to a triangle,
        // keeping original ids throughout.
        let mut ring: Vec<Vec<usize>> = self.rot.clone();
        let mut boundary: Vec<usize> = self.outer.clone();
        let mut alive = self.n;
        let mut steps: Vec<(usize, Vec<usize>)> = Vec::new();
        while alive > 3 {
            let mut on_b = vec![false; self.n];
            for &w in &boundary {
                on_b[w] = true;
            }
            let m = boundary.len();
            let mut pick = None;
            let mut cand: Vec<usize> = (0..m).collect();
            cand.sort_by_key(|&i| boundary[i]);
            for i in cand {
                let w = boundary[i];
                if w == v1 || w == v2 {
                    continue;
                }
                let p = boundary[(i + m - 1) % m];
                let s = boundary[(i + 1) % m];
                if ring[w].iter().all(|&u| !on_b[u] || u == p || u == s) {
                    pick = Some((i, w, p, s));
                    break;
                }
            }
            let (pos, w, p, s) = pick.ok_or(Error::Internal(String::from(
                "no chord-free boundary vertex found while peeling",
            )))?;
            let start = ring[w].iter().position(|&u| u == s).unwrap();
            let deg = ring[w].len();
            let fan: Vec<usize> = (0..deg).map(|j| ring[w][(start + j) % deg]).collect();
            if *fan.last().unwrap() != p {
                return Err(Error::Internal(format!(
                    "rotation of boundary vertex {w} does not end at its predecessor"
                )));
            }
            for &u in &fan {
                ring[u].retain(|&x| x != w);
            }
            let link: Vec<usize> = fan[1..fan.len() - 1].to_vec();
            let mut nb = Vec::with_capacity(m - 1 + link.len());
            for (i, &x) in boundary.iter().enumerate() {
                if i == pos {
                    nb.extend(link.iter().rev());
                } else {
                    nb.push(x);
                }
            }
            boundary = nb;
            alive -= 1;
            steps.push((w, fan));
        }
        debug_assert_eq!(boundary.len(), 3);
        let w3 = *boundary.iter().find(|&&x| x != v1 && x != v2).unwrap();

        let mut x = vec![0i64; self.n];
        let mut y = vec![0i64; self.n];
        let mut cover: Vec<Vec<usize>> = (0..self.n).map(|v| vec![v]).collect();
        x[v1] = 0;
        y[v1] = 0;
        x[v2] = 2;
        y[v2] = 0;
        x[w3] = 1;
        y[w3] = 1;
        let mut contour = vec![v1, w3, v2];
        for (v, fan) in steps.into_iter().rev() {
            let s = fan[0];
            let p = *fan.last().unwrap();
            let il = contour.iter().position(|&c| c == s).ok_or_else(|| {
                Error::Internal(format!("contour lost vertex {s}"))
            })?;
            let ir = contour.iter().position(|&c| c == p).ok_or_else(|| {
                Error::Internal(format!("contour lost vertex {p}"))
            })?;
            if ir <= il || contour[il..=ir] != fan[..] {
                return Err(Error::Internal(format!(
                    "fan of {v} is not a contour segment"
                )));
            }
            for (i, &c) in contour.iter().enumerate() {
                let delta = if i > il && i < ir {
                    1
                } else if i >= ir {
                    2
                } else {
                    continue;
                };
                for &u in &cover[c] {
                    x[u] += delta;
                }
            }
            let (xl, yl) = (x[s], y[s]);
            let (xr, yr) = (x[p], y[p]);
            debug_assert_eq!((xl + xr + yr - yl) % 2, 0);
            x[v] = (xl + xr + yr - yl) / 2;
            y[v] = (xr - xl + yl + yr) / 2;
            let mut lv = vec![v];
            for &c in &contour[il + 1..ir] {
                lv.extend(core::mem::take(&mut cover[c]));
            }
            cover[v] = lv;
            contour.splice(il + 1..ir, [v]);
        }
        let coords = (0..self.n).map(|v| (x[v], y[v])).collect();
        Ok(Drawing { coords })
    }
}

fn rotate_to_min_dart(seq: Vec<usize>) -> Vec<usize> {
    let len = seq.len();
    let best = (0..len)
        .min_by_key(|&i| (seq[i], seq[(i + 1) % len]))
        .unwrap();
    let mut out = Vec::with_capacity(len);
    out.extend_from_slice(&seq[best..]);
    out.extend_from_slice(&seq[..best]);
    out
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let len = a.len();
    (0..len).any(|s| (0..len).all(|i| a[(s + i) % len] == b[i]))
}

fn orient2d(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i128 {
    let a = (q.0 - p.0) as i128 * (r.1 - p.1) as i128;
    let b = (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
    a - b
}

fn strictly_inside(a: (i64, i64), b: (i64, i64), r: (i64, i64)) -> bool {
    r != a
        && r != b
        && orient2d(a, b, r) == 0
        && r.0 >= a.0.min(b.0)
        && r.0 <= a.0.max(b.0)
        && r.1 >= a.1.min(b.1)
        && r.1 <= a.1.max(b.1)
}

impl Drawing {
    /// Lexicographic (y, x) vertical key; total order on vertices of a
    /// valid drawing.
    pub fn key(&self, v: usize) -> (i64, i64) {
        let (x, y) = self.coords[v];
        (y, x)
    }

    pub fn below(&self, a: usize, b: usize) -> bool {
        self.key(a) < self.key(b)
    }

    /// Independent segment-intersection check of the straight-line
    /// drawing; empty report means planar.
    pub fn check_planar(&self, map: &PlaneMap) -> Vec<String> {
        let mut bad = Vec::new();
        for u in 0..map.n {
            for v in u + 1..map.n {
                if self.coords[u] == self.coords[v] {
                    bad.push(format!("vertices {u} and {v} share a point"));
                }
            }
        }
        let edges = map.edges();
        for &(a, b) in &edges {
            for w in 0..map.n {
                if w != a && w != b && strictly_inside(self.coords[a], self.coords[b], self.coords[w])
                {
                    bad.push(format!("vertex {w} lies on edge {a}-{b}"));
                }
            }
        }
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let (pa, pb, pc, pd) = (
                    self.coords[a],
                    self.coords[b],
                    self.coords[c],
                    self.coords[d],
                );
                let d1 = orient2d(pc, pd, pa);
                let d2 = orient2d(pc, pd, pb);
                let d3 = orient2d(pa, pb, pc);
                let d4 = orient2d(pa, pb, pd);
                if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))
                    && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))
                {
                    bad.push(format!("edges {a}-{b} and {c}-{d} cross"));
                }
            }
        }
        bad
    }
}
