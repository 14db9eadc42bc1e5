//! Independent verification and exhaustive search.
//!
//! Nothing in here trusts the constructive code: decompositions are checked
//! edge by edge against their claims, colorings against the eight path
//! properties, and [`brute_decide`] settles small instances by plain
//! backtracking so the builders have something to be measured against.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decompose::{check_cycle, Decomposition, HamCycle, PartShape};
use crate::error::{Error, Result};
use crate::planemap::{MapKind, PlaneMap};
use crate::separation::g_bracket;
use crate::whitney::{Color, Coloring};

/// What the third part of a decomposition is allowed to be, next to the
/// two forests. Degrees are capped by `d` in every case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThirdPart {
    /// Any edge set.
    Arbitrary,
    /// Acyclic.
    Forest,
    /// Connected on the vertices it touches.
    Connected,
    /// Connected and acyclic.
    Tree,
}

/// A decomposition family: two forests plus a third part of the given
/// kind with maximum degree `d`. `special_wrt` optionally lists filled
/// triangles inside which the third part must stay acyclic (only edges
/// strictly interior to the triangle count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionSpec {
    pub d: usize,
    pub third: ThirdPart,
    pub special_wrt: Option<Vec<[usize; 3]>>,
}

/// Outcome of an exhaustive decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Sat(Decomposition),
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub nodes_explored: u64,
}

fn und(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Disjoint sets with union by size and an undo trail, no compression.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    trail: Vec<(usize, usize)>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            trail: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// False when both ends already share a component.
    fn unite(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] > self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb;
        self.size[rb] += self.size[ra];
        self.trail.push((ra, rb));
        true
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (child, root) = self.trail.pop().unwrap();
            self.parent[child] = child;
            self.size[root] -= self.size[child];
        }
    }
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0usize; n];
    for &(u, v) in edges {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut dsu = Dsu::new(n);
    edges.iter().all(|&(u, v)| dsu.unite(u, v))
}

fn touched(edges: &[(usize, usize)]) -> BTreeSet<usize> {
    edges.iter().flat_map(|&(u, v)| [u, v]).collect()
}

fn connected_on_touched(n: usize, edges: &[(usize, usize)]) -> bool {
    let t = touched(edges);
    if t.is_empty() {
        return true;
    }
    let mut dsu = Dsu::new(n);
    for &(u, v) in edges {
        dsu.unite(u, v);
    }
    let first = *t.iter().next().unwrap();
    t.iter().all(|&v| dsu.find(v) == dsu.find(first))
}

fn check_degree_cap(
    report: &mut Vec<String>,
    label: &str,
    n: usize,
    edges: &[(usize, usize)],
    cap: usize,
) {
    for (v, d) in degrees(n, edges).into_iter().enumerate() {
        if d > cap {
            report.push(format!("{label}: vertex {v} has degree {d}, cap is {cap}"));
        }
    }
}

fn check_shape(report: &mut Vec<String>, label: &str, n: usize, edges: &[(usize, usize)], shape: &PartShape) {
    match shape {
        PartShape::SpanningTree { max_degree } => {
            if !acyclic(n, edges) {
                report.push(format!("{label}: claimed spanning tree has a cycle"));
            }
            if edges.len() + 1 != n {
                report.push(format!(
                    "{label}: spanning tree needs {} edges, has {}",
                    n - 1,
                    edges.len()
                ));
            }
            check_degree_cap(report, label, n, edges, *max_degree);
        }
        PartShape::TreeAvoiding { missing } => {
            let banned: BTreeSet<usize> = missing.iter().copied().collect();
            for &(u, v) in edges {
                if banned.contains(&u) || banned.contains(&v) {
                    report.push(format!("{label}: edge {u}-{v} touches an avoided vertex"));
                }
            }
            if !acyclic(n, edges) {
                report.push(format!("{label}: claimed tree has a cycle"));
            }
            let span = n - banned.len();
            if edges.len() + 1 != span {
                report.push(format!(
                    "{label}: tree over {} vertices needs {} edges, has {}",
                    span,
                    span - 1,
                    edges.len()
                ));
            }
        }
        PartShape::Forest { max_degree } => {
            if !acyclic(n, edges) {
                report.push(format!("{label}: claimed forest has a cycle"));
            }
            if let Some(cap) = max_degree {
                check_degree_cap(report, label, n, edges, *cap);
            }
        }
        PartShape::Tree { max_degree } => {
            if !acyclic(n, edges) {
                report.push(format!("{label}: claimed tree has a cycle"));
            }
            if !connected_on_touched(n, edges) {
                report.push(format!("{label}: claimed tree is disconnected"));
            }
            if let Some(cap) = max_degree {
                check_degree_cap(report, label, n, edges, *cap);
            }
        }
        PartShape::Connected { max_degree } => {
            if !connected_on_touched(n, edges) {
                report.push(format!("{label}: claimed connected part is disconnected"));
            }
            check_degree_cap(report, label, n, edges, *max_degree);
        }
        PartShape::BoundedDegree { max_degree } => {
            check_degree_cap(report, label, n, edges, *max_degree);
        }
    }
}

/// Checks disjointness and coverage, then each part against its own shape
/// claim. The report lists every violation; empty means clean.
pub fn check_decomposition(map: &PlaneMap, dec: &Decomposition) -> Vec<String> {
    let mut report: Vec<String> = map
        .validate(MapKind::Triangulation)
        .into_iter()
        .map(|m| format!("map: {m}"))
        .collect();
    if !report.is_empty() {
        return report;
    }
    check_cover(&mut report, map, [&dec.t0, &dec.t1, &dec.t2]);
    for (i, (part, shape)) in [(&dec.t0, &dec.shapes[0]), (&dec.t1, &dec.shapes[1]), (&dec.t2, &dec.shapes[2])]
        .into_iter()
        .enumerate()
    {
        let label = format!("part {i}");
        let normalized: Vec<(usize, usize)> = part.iter().map(|&(u, v)| und(u, v)).collect();
        check_shape(&mut report, &label, map.n, &normalized, shape);
    }
    report
}

fn check_cover(report: &mut Vec<String>, map: &PlaneMap, parts: [&Vec<(usize, usize)>; 3]) {
    let all: BTreeSet<(usize, usize)> = map.edges().into_iter().collect();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, part) in parts.iter().enumerate() {
        for &(u, v) in part.iter() {
            if u >= map.n || v >= map.n {
                report.push(format!("part {i}: edge {u}-{v} out of range"));
                continue;
            }
            let e = und(u, v);
            if !all.contains(&e) {
                report.push(format!("part {i}: {}-{} is not an edge of the map", e.0, e.1));
            }
            if !seen.insert(e) {
                report.push(format!("edge {}-{} appears in two parts", e.0, e.1));
            }
        }
    }
    for e in all.difference(&seen) {
        report.push(format!("edge {}-{} is in no part", e.0, e.1));
    }
}

/// Checks a decomposition against a family instead of its own claims:
/// part 0 is the degree-bounded third part, parts 1 and 2 must be forests.
pub fn check_against(map: &PlaneMap, dec: &Decomposition, spec: &DecisionSpec) -> Vec<String> {
    let mut report: Vec<String> = map
        .validate(MapKind::Triangulation)
        .into_iter()
        .map(|m| format!("map: {m}"))
        .collect();
    if !report.is_empty() {
        return report;
    }
    check_cover(&mut report, map, [&dec.t0, &dec.t1, &dec.t2]);
    let third: Vec<(usize, usize)> = dec.t0.iter().map(|&(u, v)| und(u, v)).collect();
    let shape = match spec.third {
        ThirdPart::Arbitrary => PartShape::BoundedDegree { max_degree: spec.d },
        ThirdPart::Forest => PartShape::Forest {
            max_degree: Some(spec.d),
        },
        ThirdPart::Connected => PartShape::Connected { max_degree: spec.d },
        ThirdPart::Tree => PartShape::Tree {
            max_degree: Some(spec.d),
        },
    };
    check_shape(&mut report, "third part", map.n, &third, &shape);
    for (label, part) in [("first forest", &dec.t1), ("second forest", &dec.t2)] {
        let normalized: Vec<(usize, usize)> = part.iter().map(|&(u, v)| und(u, v)).collect();
        if !acyclic(map.n, &normalized) {
            report.push(format!("{label}: has a cycle"));
        }
    }
    if let Some(tris) = &spec.special_wrt {
        for tri in tris {
            match g_bracket(map, *tri) {
                Ok(int) => {
                    let inside: BTreeSet<(usize, usize)> = int.edges.into_iter().collect();
                    let restricted: Vec<(usize, usize)> = third
                        .iter()
                        .copied()
                        .filter(|e| inside.contains(e))
                        .collect();
                    if !acyclic(map.n, &restricted) {
                        report.push(format!(
                            "third part has a cycle strictly inside triangle {:?}",
                            tri
                        ));
                    }
                }
                Err(e) => report.push(format!("special triangle {:?}: {:?}", tri, e)),
            }
        }
    }
    report
}

/// Checks an oriented coloring of an inner-triangulated disk for the eight
/// path properties with respect to boundary marks `(x, y, z)`:
///
/// 1. black arcs form a directed spanning path from `x` to `z`;
/// 2. every inner vertex has one outgoing red and one outgoing blue arc;
/// 3. strictly between `x` and `y` on the boundary: one blue out, no red;
/// 4. strictly between `y` and `z`: one red out, no blue;
/// 5. strictly between `z` and `x`: one blue out, no red;
/// 6. `y` and `z` have no outgoing colored arcs;
/// 7. when `x = y`, `x` has no outgoing colored arcs either;
/// 8. no directed cycle is monochromatic.
pub fn check_whitney_properties(
    disk: &PlaneMap,
    col: &Coloring,
    x: usize,
    y: usize,
    z: usize,
) -> Vec<String> {
    let mut report: Vec<String> = disk
        .validate(MapKind::InnerDisk)
        .into_iter()
        .map(|m| format!("map: {m}"))
        .collect();
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        if v >= disk.n || !disk.is_outer(v) {
            report.push(format!("mark {name}={v} is not a boundary vertex"));
        }
    }
    if !report.is_empty() {
        return report;
    }

    // Every edge carries exactly one arc.
    let all: BTreeSet<(usize, usize)> = disk.edges().into_iter().collect();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for arc in &col.arcs {
        let e = arc.edge();
        if !all.contains(&e) {
            report.push(format!("arc {}-{} is not an edge", arc.tail, arc.head));
        } else if !covered.insert(e) {
            report.push(format!("edge {}-{} carries two arcs", e.0, e.1));
        }
    }
    for e in all.difference(&covered) {
        report.push(format!("edge {}-{} carries no arc", e.0, e.1));
    }
    if !report.is_empty() {
        return report;
    }

    // (1) black arcs chain into a spanning path from x to z.
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    let blacks = col.of_color(Color::Black);
    for arc in &blacks {
        if succ.insert(arc.tail, arc.head).is_some() {
            report.push(format!("(1) two black arcs leave {}", arc.tail));
        }
    }
    if blacks.len() != disk.n - 1 {
        report.push(format!(
            "(1) {} black arcs, a spanning path needs {}",
            blacks.len(),
            disk.n - 1
        ));
    } else if succ.len() == blacks.len() {
        let mut at = x;
        let mut visited = vec![false; disk.n];
        visited[x] = true;
        let mut steps = 0;
        while let Some(&nx) = succ.get(&at) {
            if visited[nx] {
                report.push(format!("(1) black path revisits {nx}"));
                break;
            }
            visited[nx] = true;
            at = nx;
            steps += 1;
        }
        if steps == disk.n - 1 && at != z {
            report.push(format!("(1) black path ends at {at}, not z={z}"));
        }
        if steps < disk.n - 1 {
            report.push(format!(
                "(1) black path covers {} of {} vertices from x={x}",
                steps + 1,
                disk.n
            ));
        }
    }

    // Out-degree discipline per vertex class.
    let outs = |v: usize| {
        (
            col.out_count(v, Color::Red),
            col.out_count(v, Color::Blue),
        )
    };
    let strict = |path: &[usize]| -> Vec<usize> {
        if path.len() < 3 {
            Vec::new()
        } else {
            path[1..path.len() - 1].to_vec()
        }
    };
    for v in 0..disk.n {
        if !disk.is_outer(v) {
            let (r, b) = outs(v);
            if r != 1 || b != 1 {
                report.push(format!(
                    "(2) inner vertex {v} has {r} red and {b} blue outgoing"
                ));
            }
        }
    }
    if x != y {
        for v in strict(&disk.outer_path(x, y).unwrap().vertices) {
            let (r, b) = outs(v);
            if r != 0 || b != 1 {
                report.push(format!(
                    "(3) vertex {v} between x and y has {r} red and {b} blue outgoing"
                ));
            }
        }
    }
    for v in strict(&disk.outer_path(y, z).unwrap().vertices) {
        let (r, b) = outs(v);
        if r != 1 || b != 0 {
            report.push(format!(
                "(4) vertex {v} between y and z has {r} red and {b} blue outgoing"
            ));
        }
    }
    for v in strict(&disk.outer_path(z, x).unwrap().vertices) {
        let (r, b) = outs(v);
        if r != 0 || b != 1 {
            report.push(format!(
                "(5) vertex {v} between z and x has {r} red and {b} blue outgoing"
            ));
        }
    }
    for (name, v) in [("y", y), ("z", z)] {
        let (r, b) = outs(v);
        if r + b != 0 {
            report.push(format!("(6) {name}={v} has outgoing colored arcs"));
        }
    }
    if x == y {
        let (r, b) = outs(x);
        if r + b != 0 {
            report.push(format!("(7) x=y={x} has outgoing colored arcs"));
        }
    }

    // (8) no monochromatic directed cycle, checked per color by repeatedly
    // peeling vertices without outgoing arcs of that color.
    for color in [Color::Black, Color::Red, Color::Blue] {
        let arcs = col.of_color(color);
        let mut out_deg = vec![0usize; disk.n];
        let mut ins: Vec<Vec<usize>> = vec![Vec::new(); disk.n];
        for a in &arcs {
            out_deg[a.tail] += 1;
            ins[a.head].push(a.tail);
        }
        let mut queue: Vec<usize> = (0..disk.n).filter(|&v| out_deg[v] == 0).collect();
        let mut peeled = 0;
        while let Some(v) = queue.pop() {
            peeled += 1;
            for &t in &ins[v] {
                out_deg[t] -= 1;
                if out_deg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        if peeled != disk.n {
            report.push(format!("(8) directed cycle in color {:?}", color));
        }
    }
    report
}

/// Total number of tree components over all parts, where each part is
/// read as a spanning subgraph (isolated vertices count as trees). Every
/// component must be a tree or a cycle.
pub fn count_tree_components(n: usize, parts: &[Vec<(usize, usize)>]) -> Result<usize> {
    let mut total = 0;
    for part in parts {
        let mut dsu = Dsu::new(n);
        let mut edge_count: BTreeMap<usize, usize> = BTreeMap::new();
        let mut deg = vec![0usize; n];
        for &(u, v) in part {
            if u >= n || v >= n {
                return Err(Error::Param(format!("edge {u}-{v} out of range for n={n}")));
            }
            deg[u] += 1;
            deg[v] += 1;
            dsu.unite(u, v);
            *edge_count.entry(dsu.find(u)).or_insert(0) += 1;
        }
        // Re-key edge counts by final roots.
        let mut edges_at: BTreeMap<usize, usize> = BTreeMap::new();
        for (root, c) in edge_count {
            *edges_at.entry(dsu.find(root)).or_insert(0) += c;
        }
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            members.entry(dsu.find(v)).or_default().push(v);
        }
        for (root, verts) in members {
            let e = edges_at.get(&root).copied().unwrap_or(0);
            let s = verts.len();
            if e + 1 == s {
                total += 1;
            } else if e == s && verts.iter().all(|&v| deg[v] == 2) {
                // A cycle component: contributes no tree.
            } else {
                return Err(Error::Param(format!(
                    "component of {} vertices and {} edges is neither tree nor cycle",
                    s, e
                )));
            }
        }
    }
    Ok(total)
}

/// Backtracking search for a Hamiltonian cycle in rotation order from
/// vertex 0. Returns `None` when none exists or the node budget runs out.
pub fn find_ham_cycle(map: &PlaneMap, budget: u64) -> Result<Option<HamCycle>> {
    map.require(MapKind::Triangulation)?;
    let n = map.n;
    let mut path = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let mut nodes: u64 = 0;

    fn rec(
        map: &PlaneMap,
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if path.len() == map.n {
            return if map.has_edge(*path.last().unwrap(), path[0]) {
                Some(true)
            } else {
                Some(false)
            };
        }
        let at = *path.last().unwrap();
        for i in 0..map.rot[at].len() {
            let next = map.rot[at][i];
            if used[next] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            used[next] = true;
            path.push(next);
            match rec(map, path, used, nodes, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            path.pop();
            used[next] = false;
        }
        Some(false)
    }

    match rec(map, &mut path, &mut used, &mut nodes, budget) {
        Some(true) => {
            check_cycle(map, &path)?;
            Ok(Some(HamCycle { vertices: path }))
        }
        _ => Ok(None),
    }
}

enum Flow {
    Sat,
    Exhausted,
    Budget,
}

struct Search {
    n: usize,
    d: usize,
    third: ThirdPart,
    edges: Vec<(usize, usize)>,
    choice: Vec<u8>,
    dsu1: Dsu,
    dsu2: Dsu,
    dsu3: Option<Dsu>,
    specials: Vec<Dsu>,
    edge_special: Vec<Option<usize>>,
    deg3: Vec<usize>,
    c1: usize,
    c2: usize,
    c3: usize,
    nodes: u64,
    budget: u64,
    witness: Option<Vec<u8>>,
}

impl Search {
    fn third_cap(&self) -> usize {
        let slack = (self.n * self.d).saturating_sub(2 * self.c3) / 2;
        match self.third {
            ThirdPart::Forest | ThirdPart::Tree => slack.min(self.n - 1 - self.c3),
            _ => slack,
        }
    }

    fn connectable(&self, idx: usize) -> bool {
        let mut dsu = Dsu::new(self.n);
        for i in 0..self.edges.len() {
            if i >= idx || self.choice[i] == 2 {
                dsu.unite(self.edges[i].0, self.edges[i].1);
            }
        }
        let mut root = None;
        for i in 0..idx {
            if self.choice[i] == 2 {
                let r = dsu.find(self.edges[i].0);
                match root {
                    None => root = Some(r),
                    Some(r0) if r0 != r => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn rec(&mut self, idx: usize) -> Flow {
        let rem = self.edges.len() - idx;
        let cap1 = self.n - 1 - self.c1;
        let cap2 = self.n - 1 - self.c2;
        if rem > cap1 + cap2 + self.third_cap() {
            return Flow::Exhausted;
        }
        if matches!(self.third, ThirdPart::Connected | ThirdPart::Tree) && !self.connectable(idx)
        {
            return Flow::Exhausted;
        }
        if idx == self.edges.len() {
            self.witness = Some(self.choice.clone());
            return Flow::Sat;
        }
        let (u, v) = self.edges[idx];
        for ch in 0u8..3 {
            if ch == 1 && self.c1 == 0 && self.c2 == 0 {
                // The two forests are interchangeable until one holds an
                // edge, so the first forest edge always goes to the first.
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Flow::Budget;
            }
            match ch {
                0 | 1 => {
                    let dsu = if ch == 0 { &mut self.dsu1 } else { &mut self.dsu2 };
                    let m = dsu.mark();
                    if !dsu.unite(u, v) {
                        continue;
                    }
                    if ch == 0 {
                        self.c1 += 1;
                    } else {
                        self.c2 += 1;
                    }
                    self.choice[idx] = ch;
                    match self.rec(idx + 1) {
                        Flow::Exhausted => {}
                        stop => return stop,
                    }
                    if ch == 0 {
                        self.dsu1.undo_to(m);
                        self.c1 -= 1;
                    } else {
                        self.dsu2.undo_to(m);
                        self.c2 -= 1;
                    }
                }
                _ => {
                    if self.deg3[u] >= self.d || self.deg3[v] >= self.d {
                        continue;
                    }
                    let m3 = self.dsu3.as_ref().map(|d| d.mark());
                    if let Some(dsu) = self.dsu3.as_mut() {
                        if !dsu.unite(u, v) {
                            continue;
                        }
                    }
                    let ms = self.edge_special[idx].map(|s| (s, self.specials[s].mark()));
                    if let Some(s) = self.edge_special[idx] {
                        if !self.specials[s].unite(u, v) {
                            if let (Some(dsu), Some(m)) = (self.dsu3.as_mut(), m3) {
                                dsu.undo_to(m);
                            }
                            continue;
                        }
                    }
                    self.deg3[u] += 1;
                    self.deg3[v] += 1;
                    self.c3 += 1;
                    self.choice[idx] = ch;
                    match self.rec(idx + 1) {
                        Flow::Exhausted => {}
                        stop => return stop,
                    }
                    self.deg3[u] -= 1;
                    self.deg3[v] -= 1;
                    self.c3 -= 1;
                    if let (Some(dsu), Some(m)) = (self.dsu3.as_mut(), m3) {
                        dsu.undo_to(m);
                    }
                    if let Some((s, m)) = ms {
                        self.specials[s].undo_to(m);
                    }
                }
            }
        }
        Flow::Exhausted
    }
}

/// Decides by exhaustive backtracking whether the map splits into two
/// forests plus a third part as described by `spec`. Deterministic: edges
/// ascending, branches in the order first forest, second forest, third
/// part. `Unknown` when the node budget runs out.
pub fn brute_decide(map: &PlaneMap, spec: &DecisionSpec, budget: u64) -> Result<Verdict> {
    map.require(MapKind::Triangulation)?;
    let mut edges = map.edges();
    edges.sort_unstable();
    let mut edge_special = vec![None; edges.len()];
    let mut specials = Vec::new();
    if let Some(tris) = &spec.special_wrt {
        for (s, tri) in tris.iter().enumerate() {
            let int = g_bracket(map, *tri)?;
            let inside: BTreeSet<(usize, usize)> = int.edges.into_iter().collect();
            for (i, e) in edges.iter().enumerate() {
                if inside.contains(e) {
                    if edge_special[i].is_some() {
                        return Err(Error::Param(format!(
                            "edge {:?} is interior to two special triangles",
                            e
                        )));
                    }
                    edge_special[i] = Some(s);
                }
            }
            specials.push(Dsu::new(map.n));
        }
    }
    let uses_dsu3 = matches!(spec.third, ThirdPart::Forest | ThirdPart::Tree);
    let edge_count = edges.len();
    let mut search = Search {
        n: map.n,
        d: spec.d,
        third: spec.third,
        edges,
        choice: vec![0; edge_count],
        dsu1: Dsu::new(map.n),
        dsu2: Dsu::new(map.n),
        dsu3: if uses_dsu3 { Some(Dsu::new(map.n)) } else { None },
        specials,
        edge_special,
        deg3: vec![0; map.n],
        c1: 0,
        c2: 0,
        c3: 0,
        nodes: 0,
        budget,
        witness: None,
    };
    let flow = search.rec(0);
    let status = match flow {
        Flow::Budget => Status::Unknown,
        Flow::Exhausted => Status::Unsat,
        Flow::Sat => {
            let choices = search.witness.clone().unwrap();
            let pick = |want: u8| -> Vec<(usize, usize)> {
                search
                    .edges
                    .iter()
                    .zip(choices.iter())
                    .filter(|(_, &c)| c == want)
                    .map(|(&e, _)| e)
                    .collect()
            };
            let third_shape = match spec.third {
                ThirdPart::Arbitrary => PartShape::BoundedDegree { max_degree: spec.d },
                ThirdPart::Forest => PartShape::Forest {
                    max_degree: Some(spec.d),
                },
                ThirdPart::Connected => PartShape::Connected { max_degree: spec.d },
                ThirdPart::Tree => PartShape::Tree {
                    max_degree: Some(spec.d),
                },
            };
            let dec = Decomposition {
                t0: pick(2),
                t1: pick(0),
                t2: pick(1),
                shapes: [
                    third_shape,
                    PartShape::Forest { max_degree: None },
                    PartShape::Forest { max_degree: None },
                ],
            };
            let complaints = check_against(map, &dec, spec);
            if !complaints.is_empty() {
                return Err(Error::Internal(format!(
                    "search produced an invalid witness: {}",
                    complaints[0]
                )));
            }
            Status::Sat(dec)
        }
    };
    Ok(Verdict {
        status,
        nodes_explored: search.nodes,
    })
}
