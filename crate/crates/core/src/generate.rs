//! Instance families used by the test suites and the command-line
//! generator. Every family is deterministic in its parameters: the same
//! seed always yields the same map, bit for bit, on every platform.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::planemap::PlaneMap;
use crate::separation;

/// SplitMix64, Vigna's constants. Small, portable, and good enough for
/// picking faces and edges; not for cryptography.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `0..n`. The modulo bias is irrelevant at the
    /// sizes used here and keeps the stream portable.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

pub fn triangle() -> PlaneMap {
    PlaneMap {
        n: 3,
        rot: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        outer: vec![0, 1, 2],
    }
}

pub fn k4() -> PlaneMap {
    PlaneMap {
        n: 4,
        rot: vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        outer: vec![0, 1, 2],
    }
}

pub fn octahedron() -> PlaneMap {
    doublewheel(4).expect("c = 4 is valid")
}

pub fn icosahedron() -> PlaneMap {
    PlaneMap {
        n: 12,
        rot: vec![
            vec![5, 4, 3, 2, 1],
            vec![5, 0, 2, 7, 6],
            vec![1, 0, 3, 8, 7],
            vec![2, 0, 4, 9, 8],
            vec![3, 0, 5, 10, 9],
            vec![4, 0, 1, 6, 10],
            vec![7, 11, 10, 5, 1],
            vec![8, 11, 6, 1, 2],
            vec![9, 11, 7, 2, 3],
            vec![10, 11, 8, 3, 4],
            vec![6, 11, 9, 4, 5],
            vec![6, 7, 8, 9, 10],
        ],
        outer: vec![0, 1, 2],
    }
}

/// Cycle `0..c` plus an inner hub `c` and an outer hub `c + 1`, both
/// joined to every cycle vertex. 4-connected for every `c >= 4`;
/// `doublewheel(4)` is the octahedron.
pub fn doublewheel(c: usize) -> Result<PlaneMap> {
    if c < 4 {
        return Err(Error::Param(format!(
            "doublewheel needs a cycle of length at least 4, got {c}"
        )));
    }
    let n = c + 2;
    let mut rot = Vec::with_capacity(n);
    for v in 0..c {
        rot.push(vec![(v + 1) % c, c, (v + c - 1) % c, c + 1]);
    }
    rot.push((0..c).collect());
    rot.push((0..c).rev().collect());
    let map = PlaneMap {
        n,
        rot,
        outer: vec![0, 1, c + 1],
    };
    map.reroot([0, 1, c + 1])
}

/// Stacked triangulation: `t` random face subdivisions starting from K4.
/// Has exactly `t + 1` filled triangles.
pub fn apollonian(t: usize, seed: u64) -> PlaneMap {
    let mut rng = SplitMix64::new(seed);
    let mut map = k4();
    for _ in 0..t {
        let faces = map.inner_faces();
        let f = &faces[rng.below(faces.len())];
        map = map
            .stack_into_face([f[0], f[1], f[2]])
            .expect("inner faces of a triangulation are stackable");
    }
    map
}

/// A triangulation with the Hamiltonian cycle `0, 1, .., n-1`: a convex
/// polygon triangulated randomly on the inside and fanned from an ear on
/// the outside. Returns the map and the cycle.
pub fn polygon_ham(n: usize, seed: u64) -> Result<(PlaneMap, Vec<usize>)> {
    if n < 3 {
        return Err(Error::Param(format!(
            "polygon_ham needs at least 3 vertices, got {n}"
        )));
    }
    if n == 3 {
        return Ok((triangle(), vec![0, 1, 2]));
    }
    let mut rng = SplitMix64::new(seed);
    let off = |v: usize, w: usize| (w + n - v) % n;

    // Triangulate the polygon interior by repeatedly picking a random
    // apex for the chain between two endpoints.
    let mut chords: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let m = lo + 1 + rng.below(hi - lo - 1);
        for (a, b) in [(lo, m), (m, hi)] {
            if b - a > 1 && (a, b) != (0, n - 1) {
                chords[a].push(b);
                chords[b].push(a);
            }
        }
        stack.push((lo, m));
        stack.push((m, hi));
    }

    // Fan the outside from an ear, a cycle vertex no chord touches, so
    // the fan duplicates nothing.
    let ears: Vec<usize> = (0..n).filter(|&v| chords[v].is_empty()).collect();
    let b = ears[rng.below(ears.len())];

    let mut rot = Vec::with_capacity(n);
    for v in 0..n {
        if v == b {
            let mut ring = vec![(b + 1) % n];
            ring.extend((2..n).rev().map(|o| (b + o) % n));
            rot.push(ring);
        } else {
            let mut ring = vec![(v + 1) % n, (v + n - 1) % n];
            ring.extend(&chords[v]);
            ring.sort_by_key(|&w| off(v, w));
            if off(b, v) >= 2 && off(v, b) >= 2 {
                ring.push(b);
            }
            rot.push(ring);
        }
    }
    let map = PlaneMap {
        n,
        rot,
        outer: vec![b, (b + 1) % n, (b + 2) % n],
    };
    let map = map.reroot([b, (b + 1) % n, (b + 2) % n])?;
    Ok((map, (0..n).collect()))
}

/// Random walk in the flip graph starting from `doublewheel(n - 2)`.
/// Returns the final map and whether it is free of separating triangles.
pub fn flipwalk(n: usize, steps: usize, seed: u64) -> Result<(PlaneMap, bool)> {
    if n < 6 {
        return Err(Error::Param(format!(
            "flipwalk needs at least 6 vertices, got {n}"
        )));
    }
    let mut map = doublewheel(n - 2)?;
    let mut rng = SplitMix64::new(seed);
    'walk: for _ in 0..steps {
        let edges = map.edges();
        for _ in 0..20 * edges.len() {
            let (u, v) = edges[rng.below(edges.len())];
            if let Ok(next) = map.flip(u, v) {
                map = next;
                continue 'walk;
            }
        }
        break;
    }
    let four = separation::first_separating_triangle(&map)?.is_none();
    Ok((map, four))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Triangle,
    K4,
    Octahedron,
    Icosahedron,
    Doublewheel { c: usize },
    Apollonian { t: usize, seed: u64 },
    PolygonHam { n: usize, seed: u64 },
    Flipwalk { n: usize, steps: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub map: PlaneMap,
    /// A Hamiltonian cycle, for families that certify one.
    pub cycle: Option<Vec<usize>>,
    /// Whether the map ended up free of separating triangles, for
    /// families that track it.
    pub four_connected: Option<bool>,
}

pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    let plain = |map: PlaneMap, four: Option<bool>| Generated {
        map,
        cycle: None,
        four_connected: four,
    };
    Ok(match *spec {
        FamilySpec::Triangle => plain(triangle(), None),
        FamilySpec::K4 => plain(k4(), None),
        FamilySpec::Octahedron => plain(octahedron(), Some(true)),
        FamilySpec::Icosahedron => plain(icosahedron(), Some(true)),
        FamilySpec::Doublewheel { c } => plain(doublewheel(c)?, Some(true)),
        FamilySpec::Apollonian { t, seed } => plain(apollonian(t, seed), None),
        FamilySpec::PolygonHam { n, seed } => {
            let (map, cycle) = polygon_ham(n, seed)?;
            Generated {
                map,
                cycle: Some(cycle),
                four_connected: None,
            }
        }
        FamilySpec::Flipwalk { n, steps, seed } => {
            let (map, four) = flipwalk(n, steps, seed)?;
            plain(map, Some(four))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planemap::MapKind;
    use alloc::string::String;

    #[test]
    fn splitmix_reference_stream() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn fixed_families_validate() {
        for map in [triangle(), k4(), octahedron(), icosahedron()] {
            assert_eq!(map.validate(MapKind::Triangulation), Vec::<String>::new());
        }
    }

    #[test]
    fn octahedron_shape() {
        let m = octahedron();
        assert_eq!(m, doublewheel(4).unwrap());
        assert_eq!(m.n, 6);
        assert_eq!(m.edge_count(), 12);
        assert!((0..6).all(|v| m.degree(v) == 4));
        assert!(separation::first_separating_triangle(&m).unwrap().is_none());
    }

    #[test]
    fn icosahedron_shape() {
        let m = icosahedron();
        assert_eq!(m.n, 12);
        assert_eq!(m.edge_count(), 30);
        assert!((0..12).all(|v| m.degree(v) == 5));
        assert!(separation::first_separating_triangle(&m).unwrap().is_none());
    }

    #[test]
    fn doublewheels_validate() {
        for c in 4..=12 {
            let m = doublewheel(c).unwrap();
            assert_eq!(m.validate(MapKind::Triangulation), Vec::<String>::new());
            assert!(separation::first_separating_triangle(&m).unwrap().is_none());
        }
        assert!(matches!(doublewheel(3), Err(Error::Param(_))));
    }

    #[test]
    fn apollonian_counts() {
        for t in [0, 1, 2, 5] {
            let m = apollonian(t, 9);
            assert_eq!(m.n, 4 + t);
            assert_eq!(m.validate(MapKind::Triangulation), Vec::<String>::new());
            assert_eq!(separation::filled_triangles(&m).unwrap().len(), t + 1);
        }
        assert_eq!(apollonian(0, 123), k4());
    }

    #[test]
    fn polygon_ham_has_its_cycle() {
        for n in 3..=12 {
            for seed in 0..4 {
                let (m, cycle) = polygon_ham(n, seed).unwrap();
                assert_eq!(m.validate(MapKind::Triangulation), Vec::<String>::new());
                assert_eq!(cycle.len(), n);
                for i in 0..n {
                    assert!(m.has_edge(cycle[i], cycle[(i + 1) % n]));
                }
            }
        }
        let (a, _) = polygon_ham(11, 5).unwrap();
        let (b, _) = polygon_ham(11, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn flipwalk_stays_valid() {
        let (m, _) = flipwalk(8, 40, 7).unwrap();
        assert_eq!(m.validate(MapKind::Triangulation), Vec::<String>::new());
        let (m2, _) = flipwalk(8, 40, 7).unwrap();
        assert_eq!(m, m2);
        let (m3, four) = flipwalk(9, 0, 1).unwrap();
        assert_eq!(m3, doublewheel(7).unwrap());
        assert!(four);
    }
}
