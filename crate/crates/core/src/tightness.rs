//! Stacked-vertex constructions showing the degree bounds cannot drop.
//!
//! A [`SubPair`] couples a triangulation with an induced sub-triangulation
//! on at least four of its vertices. Every face of the small map either
//! survives as a face of the big one or holds the new vertices stacked
//! inside it; `k` counts the faces that do not survive. Once `k` clears
//! certain thresholds, counting the edges available inside the destroyed
//! faces rules out whole decomposition families on the big map, so these
//! pairs certify that the degree bounds realised elsewhere in the crate
//! are the best possible.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::decompose::{check_cycle, cycle_ccw, HamCycle};
use crate::error::{Error, Result};
use crate::planemap::{sort3, MapKind, PlaneMap};
use crate::separation::g_bracket;

/// True when the map has more edges than two spanning forests and a
/// perfect matching can carry: `m > 2(n - 1) + n/2`. Every triangulation
/// on nine or more vertices qualifies.
pub fn exceeds_two_forests_and_matching(map: &PlaneMap) -> bool {
    let n = map.n;
    map.edges().len() > 2 * n.saturating_sub(1) + n / 2
}

/// A triangulation `g` with an induced sub-triangulation on the vertex
/// set `sub`, whose outer triangle is `sub_outer`.
///
/// `faces_gone` lists the faces of the small map that are not faces of
/// `g`, each with the sorted new vertices lying in its region; the region
/// of the small map's outer face is the unbounded side of `sub_outer`.
/// `k = |faces_gone|` and `n = |sub|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPair {
    pub g: PlaneMap,
    pub sub: Vec<usize>,
    pub sub_outer: [usize; 3],
    pub faces_gone: Vec<([usize; 3], Vec<usize>)>,
    pub k: usize,
    pub n: usize,
}

impl SubPair {
    /// Destroyed faces whose region in `g` is the bounded side of the
    /// triangle, which is the reading a search spec expects. Drops the
    /// small map's outer face when that was destroyed too.
    pub fn bounded_faces_gone(&self) -> Vec<[usize; 3]> {
        let skip = sort3(self.sub_outer);
        self.faces_gone
            .iter()
            .map(|(t, _)| *t)
            .filter(|t| *t != skip)
            .collect()
    }
}

fn outer_key(map: &PlaneMap) -> [usize; 3] {
    sort3([map.outer[0], map.outer[1], map.outer[2]])
}

/// Couples `g` with the sub-triangulation induced on `sub`, locating
/// every new vertex inside a destroyed face of the small map. Fails when
/// `sub` does not induce a triangulation with outer face `sub_outer`, or
/// when some face of the small map is neither a face of `g` nor filled.
pub fn subtriangulation_pair(
    g: &PlaneMap,
    sub: &[usize],
    sub_outer: [usize; 3],
) -> Result<SubPair> {
    g.require(MapKind::Triangulation)?;
    let mut sub: Vec<usize> = sub.to_vec();
    sub.sort_unstable();
    if sub.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Param("sub-triangulation vertices repeat".into()));
    }
    if sub.len() < 4 {
        return Err(Error::Param(format!(
            "sub-triangulation needs at least 4 vertices, got {}",
            sub.len()
        )));
    }
    if *sub.last().expect("nonempty") >= g.n {
        return Err(Error::Param("sub-triangulation vertex out of range".into()));
    }
    let sub_outer = sort3(sub_outer);
    let local = |v: usize| sub.binary_search(&v).ok();
    let lo = match (
        local(sub_outer[0]),
        local(sub_outer[1]),
        local(sub_outer[2]),
    ) {
        (Some(a), Some(b), Some(c)) => [a, b, c],
        _ => {
            return Err(Error::Param(
                "outer triangle is not part of the vertex set".into(),
            ))
        }
    };
    let rot: Vec<Vec<usize>> = sub
        .iter()
        .map(|&v| g.rot[v].iter().filter_map(|&u| local(u)).collect())
        .collect();
    let mut small = PlaneMap {
        n: sub.len(),
        rot,
        outer: vec![lo[0], lo[1], lo[2]],
    };
    if !small.validate(MapKind::Triangulation).is_empty() {
        small.outer = vec![lo[0], lo[2], lo[1]];
        if !small.validate(MapKind::Triangulation).is_empty() {
            return Err(Error::Param(
                "vertex set does not induce a triangulation on the given outer face".into(),
            ));
        }
    }

    let sub_outer_key = sort3(sub_outer);
    let mut y_small: BTreeSet<[usize; 3]> = small
        .inner_faces()
        .iter()
        .map(|f| sort3([sub[f[0]], sub[f[1]], sub[f[2]]]))
        .collect();
    y_small.insert(sub_outer_key);
    let mut y_big: BTreeSet<[usize; 3]> = g
        .inner_faces()
        .iter()
        .map(|f| sort3([f[0], f[1], f[2]]))
        .collect();
    y_big.insert(outer_key(g));

    let in_sub = {
        let mut mark = vec![false; g.n];
        for &v in &sub {
            mark[v] = true;
        }
        mark
    };
    let mut placed = vec![false; g.n];
    let mut faces_gone: Vec<([usize; 3], Vec<usize>)> = Vec::new();
    let mut outer_slot = None;
    for &t in y_small.difference(&y_big) {
        if t == sub_outer_key {
            outer_slot = Some(faces_gone.len());
            faces_gone.push((t, Vec::new()));
            continue;
        }
        let region = g_bracket(g, t).map_err(|_| {
            Error::Param(format!(
                "face {} {} {} of the small map is neither a face of the big map nor filled",
                t[0], t[1], t[2]
            ))
        })?;
        let inside: Vec<usize> = region
            .vertices
            .into_iter()
            .filter(|v| !t.contains(v))
            .collect();
        for &v in &inside {
            if in_sub[v] || placed[v] {
                return Err(Error::Param(format!(
                    "vertex {v} sits inside two faces of the small map or belongs to it"
                )));
            }
            placed[v] = true;
        }
        faces_gone.push((t, inside));
    }
    let leftovers: Vec<usize> = (0..g.n).filter(|&v| !in_sub[v] && !placed[v]).collect();
    match outer_slot {
        Some(i) => faces_gone[i].1 = leftovers,
        None if leftovers.is_empty() => {}
        None => {
            return Err(Error::Param(format!(
                "{} new vertices lie in no destroyed face of the small map",
                leftovers.len()
            )))
        }
    }
    for (t, inside) in &faces_gone {
        if inside.is_empty() {
            return Err(Error::Internal(format!(
                "destroyed face {} {} {} holds no new vertex",
                t[0], t[1], t[2]
            )));
        }
    }
    let k = faces_gone.len();
    let n = sub.len();
    Ok(SubPair {
        g: g.clone(),
        sub,
        sub_outer,
        faces_gone,
        k,
        n,
    })
}

/// Rebuilds a pair from the vertex set alone, working out the small
/// map's outer face: the big map's outer triangle when that is a face of
/// the small map, otherwise the unique face of the induced embedding
/// whose region holds the vertices left over by all the bounded ones.
pub fn pair_with_vertices(g: &PlaneMap, sub: &[usize]) -> Result<SubPair> {
    g.require(MapKind::Triangulation)?;
    let mut sorted: Vec<usize> = sub.to_vec();
    sorted.sort_unstable();
    let g_outer = [g.outer[0], g.outer[1], g.outer[2]];
    if g_outer.iter().all(|v| sorted.binary_search(v).is_ok()) {
        if let Ok(pair) = subtriangulation_pair(g, sub, g_outer) {
            return Ok(pair);
        }
    }
    if sorted.is_empty() || *sorted.last().expect("nonempty") >= g.n {
        return Err(Error::Param("sub-triangulation vertex out of range".into()));
    }
    let local = |v: usize| sorted.binary_search(&v).ok();
    let rot: Vec<Vec<usize>> = sorted
        .iter()
        .map(|&v| g.rot[v].iter().filter_map(|&u| local(u)).collect())
        .collect();
    // Only the face orbits of this map are consulted, so the stale outer
    // ring does not matter.
    let probe = PlaneMap {
        n: sorted.len(),
        rot,
        outer: Vec::new(),
    };
    for f in probe.faces() {
        if f.len() != 3 {
            continue;
        }
        let t = [sorted[f[0]], sorted[f[1]], sorted[f[2]]];
        if let Ok(pair) = subtriangulation_pair(g, sub, t) {
            return Ok(pair);
        }
    }
    Err(Error::Param(
        "vertex set does not induce a sub-triangulation of the map".into(),
    ))
}

/// True when every destroyed face holds exactly one new vertex. The new
/// vertex then contributes two of its three edges to the forest parts of
/// any decomposition, so every decomposition of the big map restricts to
/// a special one; vacuously true when nothing was stacked.
pub fn special_forced(pair: &SubPair) -> bool {
    pair.faces_gone.iter().all(|(_, inside)| inside.len() == 1)
}

/// One decomposition family ruled out on the big map of a pair: two
/// forests plus a third part of maximum degree `d`, connected if
/// `connected` is set. With `special_only` the exclusion covers only the
/// decompositions that restrict to forests inside every destroyed face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuledOut {
    pub d: usize,
    pub connected: bool,
    pub special_only: bool,
}

/// Families whose impossibility on the big map follows from the pair's
/// face count: `k >= 6` and `k >= 9` exclude degree 2 with connected and
/// arbitrary third part, `k >= n + 6` and `k >= n + 9` the same for
/// degree 3. When the pair forces every decomposition to be special the
/// exclusions hold outright and `special_only` is cleared.
pub fn threshold_certificates(pair: &SubPair) -> Vec<RuledOut> {
    let special_only = !special_forced(pair);
    let rows = [
        (2, true, 6),
        (2, false, 9),
        (3, true, pair.n + 6),
        (3, false, pair.n + 9),
    ];
    rows.iter()
        .filter(|&&(_, _, bound)| pair.k >= bound)
        .map(|&(d, connected, _)| RuledOut {
            d,
            connected,
            special_only,
        })
        .collect()
}

/// Stacks one vertex into the inner face on the interior side of every
/// other edge of a hamiltonian cycle. The cycle length must be even; the
/// chosen edges then form a perfect matching, so the picked faces are
/// pairwise distinct and each destroyed face of the pair holds exactly
/// one new vertex. The returned cycle reroutes through the stacked
/// vertices, keeping the big map hamiltonian, and `k = n / 2`.
pub fn stack_along_cycle(
    map: &PlaneMap,
    cycle: &HamCycle,
) -> Result<(PlaneMap, HamCycle, SubPair)> {
    map.require(MapKind::Triangulation)?;
    let cyc = &cycle.vertices;
    check_cycle(map, cyc)?;
    let nv = map.n;
    if nv % 2 != 0 {
        return Err(Error::Param(format!(
            "alternate edges need an even cycle, got length {nv}"
        )));
    }
    let mut pos = vec![0usize; nv];
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = i;
    }
    let ccw = cycle_ccw(map, cyc, &pos)?;
    let mut targets = Vec::with_capacity(nv / 2);
    for i in (0..nv).step_by(2) {
        let (u, v) = (cyc[i], cyc[(i + 1) % nv]);
        let f = if ccw {
            map.face_left_of(u, v)
        } else {
            map.face_left_of(v, u)
        };
        if f.len() != 3 {
            return Err(Error::Internal(format!(
                "interior side of {u} {v} is not a triangle"
            )));
        }
        targets.push([f[0], f[1], f[2]]);
    }
    let mut g = map.clone();
    for t in &targets {
        g = g.stack_into_face(*t)?;
    }
    let mut rerouted = Vec::with_capacity(nv + nv / 2);
    for i in 0..nv {
        rerouted.push(cyc[i]);
        if i % 2 == 0 {
            rerouted.push(nv + i / 2);
        }
    }
    let sub: Vec<usize> = (0..nv).collect();
    let pair = subtriangulation_pair(&g, &sub, [map.outer[0], map.outer[1], map.outer[2]])?;
    if pair.k != nv / 2 {
        return Err(Error::Internal(format!(
            "stacking along the cycle destroyed {} faces instead of {}",
            pair.k,
            nv / 2
        )));
    }
    Ok((g, HamCycle::new(rerouted), pair))
}

/// Stacks one vertex into every face, the unbounded one included. The
/// input needs at least four vertices; for `n` of them the big map ends
/// up with `3n - 4` vertices, its outer face is one of the three corners
/// cut off the former outer triangle, and the pair loses all `2n - 4`
/// faces of the small map, one new vertex in each.
pub fn stack_every_face(map: &PlaneMap) -> Result<(PlaneMap, SubPair)> {
    map.require(MapKind::Triangulation)?;
    if map.n < 4 {
        return Err(Error::Param(format!(
            "stacking every face needs at least 4 vertices, got {}",
            map.n
        )));
    }
    let mut g = map.clone();
    for f in map.inner_faces() {
        g = g.stack_into_face([f[0], f[1], f[2]])?;
    }
    // The unbounded region is the face traced on the reversed outer
    // cycle. Stacking there leaves `outer` stale until the reroot.
    let w = g.n;
    let (a, b, c) = (map.outer[0], map.outer[1], map.outer[2]);
    g = g.stack_into_face([b, a, c])?;
    g = g.reroot([a, b, w])?;
    let sub: Vec<usize> = (0..map.n).collect();
    let pair = subtriangulation_pair(&g, &sub, [a, b, c])?;
    if pair.k != 2 * map.n - 4 {
        return Err(Error::Internal(format!(
            "stacking every face destroyed {} faces instead of {}",
            pair.k,
            2 * map.n - 4
        )));
    }
    Ok((g, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::hamiltonian;
    use crate::generate::{doublewheel, icosahedron, k4, octahedron, triangle};

    fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        let mut d = vec![0; n];
        for &(u, v) in edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    #[test]
    fn edge_count_threshold() {
        assert!(exceeds_two_forests_and_matching(&icosahedron()));
        assert!(!exceeds_two_forests_and_matching(&octahedron()));
        // 21 edges against 2 * 8 + 4; nine vertices is the cutoff.
        assert!(exceeds_two_forests_and_matching(&doublewheel(7).unwrap()));
    }

    #[test]
    fn single_stack_pair() {
        let m = octahedron();
        let g = m.stack_into_face([0, 1, 4]).unwrap();
        let pair = subtriangulation_pair(&g, &[0, 1, 2, 3, 4, 5], [0, 1, 5]).unwrap();
        assert_eq!(pair.k, 1);
        assert_eq!(pair.n, 6);
        assert_eq!(pair.faces_gone, vec![([0, 1, 4], vec![6])]);
        assert!(special_forced(&pair));
        assert!(threshold_certificates(&pair).is_empty());
    }

    #[test]
    fn two_stacks_in_one_face_are_not_forced() {
        let m = octahedron();
        let g = m.stack_into_face([0, 1, 4]).unwrap();
        let f = g.face_with_set([0, 1, 6]).unwrap();
        let g = g.stack_into_face([f[0], f[1], f[2]]).unwrap();
        let pair = subtriangulation_pair(&g, &[0, 1, 2, 3, 4, 5], [0, 1, 5]).unwrap();
        assert_eq!(pair.k, 1);
        assert_eq!(pair.faces_gone, vec![([0, 1, 4], vec![6, 7])]);
        assert!(!special_forced(&pair));
    }

    #[test]
    fn vacuous_pair_is_forced() {
        let m = octahedron();
        let pair = subtriangulation_pair(&m, &[0, 1, 2, 3, 4, 5], [0, 1, 5]).unwrap();
        assert_eq!(pair.k, 0);
        assert!(special_forced(&pair));
    }

    #[test]
    fn bad_vertex_sets_are_rejected() {
        let m = octahedron();
        let g = m.stack_into_face([0, 1, 4]).unwrap();
        // Induced graph on four vertices with five edges, so no triangulation.
        assert!(matches!(
            subtriangulation_pair(&g, &[0, 1, 2, 5], [0, 1, 5]),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            subtriangulation_pair(&g, &[0, 1, 2, 4], [0, 1, 5]),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            subtriangulation_pair(&g, &[0, 1, 2], [0, 1, 2]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn alternate_cycle_stacking() {
        let m = octahedron();
        let (g, rerouted, pair) = stack_along_cycle(&m, &HamCycle::new(vec![0, 4, 1, 2, 5, 3])).unwrap();
        assert_eq!(g.n, 9);
        assert!(g.validate(MapKind::Triangulation).is_empty());
        assert_eq!(pair.k, 3);
        assert!(special_forced(&pair));
        assert!(threshold_certificates(&pair).is_empty());
        assert_eq!(rerouted.vertices.len(), 9);
        let d = hamiltonian(&g, &rerouted).unwrap();
        assert!(degrees(g.n, &d.t0).into_iter().max().unwrap() <= 3);
    }

    #[test]
    fn alternate_cycle_needs_even_length() {
        let m = doublewheel(5).unwrap();
        let c = HamCycle::new(vec![0, 5, 1, 2, 6, 3, 4]);
        assert!(matches!(stack_along_cycle(&m, &c), Err(Error::Param(_))));
    }

    #[test]
    fn alternate_cycle_at_the_lower_threshold() {
        let m = doublewheel(16).unwrap();
        let mut cyc = vec![0, 16];
        cyc.extend(1..16);
        cyc.push(17);
        let (g, rerouted, pair) = stack_along_cycle(&m, &HamCycle::new(cyc)).unwrap();
        assert_eq!(pair.k, 9);
        assert!(special_forced(&pair));
        let certs = threshold_certificates(&pair);
        assert_eq!(
            certs,
            vec![
                RuledOut { d: 2, connected: true, special_only: false },
                RuledOut { d: 2, connected: false, special_only: false },
            ]
        );
        let d = hamiltonian(&g, &rerouted).unwrap();
        assert!(degrees(g.n, &d.t0).into_iter().max().unwrap() <= 3);
    }

    #[test]
    fn extra_stack_downgrades_the_certificates() {
        let m = doublewheel(16).unwrap();
        let mut cyc = vec![0, 16];
        cyc.extend(1..16);
        cyc.push(17);
        let (g, _, _) = stack_along_cycle(&m, &HamCycle::new(cyc)).unwrap();
        // Vertex 18 was stacked beside the cycle edge 0-16; doubling up
        // inside that face breaks the one vertex per face pattern.
        let f = g.face_with_set([0, 16, 18]).unwrap();
        let g = g.stack_into_face([f[0], f[1], f[2]]).unwrap();
        let sub: Vec<usize> = (0..18).collect();
        let pair = subtriangulation_pair(&g, &sub, [0, 1, 17]).unwrap();
        assert_eq!(pair.k, 9);
        assert!(!special_forced(&pair));
        let certs = threshold_certificates(&pair);
        assert_eq!(certs.len(), 2);
        assert!(certs.iter().all(|c| c.special_only));
    }

    #[test]
    fn every_face_of_k4() {
        assert!(matches!(
            stack_every_face(&triangle()),
            Err(Error::Param(_))
        ));
        let (g, pair) = stack_every_face(&k4()).unwrap();
        assert_eq!(g.n, 8);
        assert!(g.validate(MapKind::Triangulation).is_empty());
        assert_eq!(pair.k, 4);
        assert!(special_forced(&pair));
        assert!(threshold_certificates(&pair).is_empty());
        assert_eq!(pair.bounded_faces_gone().len(), 3);
        for t in pair.bounded_faces_gone() {
            assert_ne!(t, [0, 1, 2]);
        }
    }

    #[test]
    fn every_face_of_the_icosahedron() {
        let (g, pair) = stack_every_face(&icosahedron()).unwrap();
        assert_eq!(g.n, 32);
        assert_eq!(pair.k, 20);
        assert!(special_forced(&pair));
        // One short of the n + 9 threshold, so degree 3 with an
        // unconstrained third part is not excluded here.
        assert_eq!(
            threshold_certificates(&pair),
            vec![
                RuledOut { d: 2, connected: true, special_only: false },
                RuledOut { d: 2, connected: false, special_only: false },
                RuledOut { d: 3, connected: true, special_only: false },
            ]
        );
    }

    #[test]
    fn pairs_rebuild_from_their_vertex_sets() {
        let m = octahedron();
        let (g, _, direct) = stack_along_cycle(&m, &HamCycle::new(vec![0, 4, 1, 2, 5, 3])).unwrap();
        let rebuilt = pair_with_vertices(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(rebuilt, direct);

        // The big map's outer face is part of the outward stack here, so
        // the small outer triangle has to be found among the induced faces.
        let (g, direct) = stack_every_face(&k4()).unwrap();
        let rebuilt = pair_with_vertices(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(rebuilt.sub_outer, [0, 1, 2]);
        assert_eq!(rebuilt, direct);

        assert!(matches!(
            pair_with_vertices(&g, &[0, 1, 2, 9]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn every_face_clears_all_thresholds_at_thirteen() {
        let m = doublewheel(11).unwrap();
        let (_, pair) = stack_every_face(&m).unwrap();
        assert_eq!(pair.n, 13);
        assert_eq!(pair.k, 22);
        let certs = threshold_certificates(&pair);
        assert_eq!(certs.len(), 4);
        assert!(certs.contains(&RuledOut { d: 3, connected: false, special_only: false }));
    }
}
