//! Perfect matchings of embedded planar graphs by the FKT method: a
//! Kasteleyn orientation makes every perfect matching contribute to the
//! Pfaffian of the signed adjacency matrix with the same sign.

pub mod generators;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::scalar::{one, parse_scalar, signum, zero, Scalar};
use crate::exact::{pfaffian, SkewMatrix};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

/// A connected simple graph with a rotation system: `rotation[v]` lists the
/// neighbours of `v` in counterclockwise order. Vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    weights: Vec<Scalar>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl EmbeddedGraph {
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotation.len();
        let mut keys = BTreeSet::new();
        for (u, nbrs) in rotation.iter().enumerate() {
            for (k, &v) in nbrs.iter().enumerate() {
                if v >= n {
                    return Err(Error::Invalid(format!("vertex {u} lists neighbour {v}, but there are {n} vertices")));
                }
                if v == u {
                    return Err(Error::Invalid(format!("self-loop at vertex {u}")));
                }
                if nbrs[..k].contains(&v) {
                    return Err(Error::Invalid(format!("vertex {u} lists neighbour {v} twice")));
                }
                if !rotation[v].contains(&u) {
                    return Err(Error::Invalid(format!("edge {u}-{v} is missing from the rotation of {v}")));
                }
                keys.insert(key(u, v));
            }
        }
        let edges: Vec<(usize, usize)> = keys.into_iter().collect();
        let index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let g = EmbeddedGraph {
            weights: vec![one(); edges.len()],
            rotation,
            edges,
            index,
        };
        if !g.is_connected() {
            return Err(Error::Invalid("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Parses `{"vertices": V, "rotation": [[...], ...], "weights": {"u-v": "p/q"}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            vertices: usize,
            rotation: Vec<Vec<usize>>,
            #[serde(default)]
            weights: BTreeMap<String, serde_json::Value>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        if raw.rotation.len() != raw.vertices {
            return Err(Error::Invalid(format!(
                "{} rotation lists for {} vertices",
                raw.rotation.len(),
                raw.vertices
            )));
        }
        let mut g = EmbeddedGraph::new(raw.rotation)?;
        for (name, value) in raw.weights {
            let bad = || Error::parse(format!("weight {name:?}"), "expected a key \"u-v\" naming an edge");
            let (u, v) = name.split_once('-').ok_or_else(bad)?;
            let (u, v) = (u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?);
            let w = match value {
                serde_json::Value::String(s) => parse_scalar(&s)?,
                serde_json::Value::Number(n) => parse_scalar(&n.to_string())?,
                _ => return Err(Error::parse(format!("weight {name:?}"), "expected a string or integer")),
            };
            g.set_weight(u, v, w)?;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&key(u, v)).copied()
    }

    pub fn weight(&self, e: usize) -> &Scalar {
        &self.weights[e]
    }

    pub fn set_weight(&mut self, u: usize, v: usize, w: Scalar) -> Result<()> {
        let e = self
            .edge_index(u, v)
            .ok_or_else(|| Error::Invalid(format!("no edge {u}-{v}")))?;
        self.weights[e] = w;
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        bfs_tree(self, 0).iter().filter(|p| p.is_some()).count() == n
    }

    /// The neighbour preceding `u` in the counterclockwise rotation at `v`.
    fn before(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let k = rot.iter().position(|&x| x == u).expect("symmetric rotation");
        rot[(k + rot.len() - 1) % rot.len()]
    }
}

/// BFS parents from `root`; the root is its own parent.
fn bfs_tree(g: &EmbeddedGraph, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; g.num_vertices()];
    parent[root] = Some(root);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &g.rotation[u] {
            if parent[v].is_none() {
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

/// A face as its boundary walk `v_0 → v_1 → ... → v_0`, with the face on the
/// left; bounded faces are walked counterclockwise.
pub type Face = Vec<usize>;

/// Traces every face of the rotation system and checks `V - E + F = 2`.
pub fn trace_faces(g: &EmbeddedGraph) -> Result<Vec<Face>> {
    if g.num_edges() == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut seen = BTreeMap::new();
    let mut faces = Vec::new();
    for &(a, b) in &g.edges {
        for start in [(a, b), (b, a)] {
            if seen.contains_key(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut dart = start;
            while seen.insert(dart, faces.len()).is_none() {
                face.push(dart.0);
                let (u, v) = dart;
                dart = (v, g.before(v, u));
            }
            if dart != start {
                return Err(Error::NotPlanar("face walk does not close".into()));
            }
            faces.push(face);
        }
    }
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::NotPlanar(format!(
            "V - E + F = {} - {} + {} = {euler}, not 2",
            g.num_vertices(),
            g.num_edges(),
            faces.len()
        )));
    }
    Ok(faces)
}

/// Face index of the outer face: of the two faces on the edge from vertex 0 to
/// its smallest neighbour, the longer one (the first on a tie).
pub fn default_outer_face(g: &EmbeddedGraph, faces: &[Face]) -> usize {
    let Some(&(u, v)) = g.edges.first() else {
        return 0;
    };
    let containing = |a: usize, b: usize| {
        faces
            .iter()
            .position(|f| (0..f.len()).any(|k| f[k] == a && f[(k + 1) % f.len()] == b))
            .expect("every dart is on a face")
    };
    let (f1, f2) = (containing(u, v), containing(v, u));
    if faces[f2].len() > faces[f1].len() {
        f2
    } else {
        f1
    }
}

/// `forward[e]` is true when edge `e = (u, v)`, `u < v`, points `u → v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub forward: Vec<bool>,
}

impl Orientation {
    /// Whether the edge under the dart `a → b` points from `a` to `b`.
    pub fn along(&self, g: &EmbeddedGraph, a: usize, b: usize) -> bool {
        let e = g.edge_index(a, b).expect("dart of the graph");
        self.forward[e] == (a < b)
    }
}

fn clockwise_count(g: &EmbeddedGraph, face: &Face, o: &Orientation) -> usize {
    (0..face.len())
        .filter(|&k| !o.along(g, face[k], face[(k + 1) % face.len()]))
        .count()
}

/// Whether every face except `outer` has an odd number of clockwise edges.
pub fn is_kasteleyn(g: &EmbeddedGraph, faces: &[Face], outer: usize, o: &Orientation) -> bool {
    faces
        .iter()
        .enumerate()
        .all(|(i, f)| i == outer || clockwise_count(g, f, o) % 2 == 1)
}

pub fn kasteleyn_orient(g: &EmbeddedGraph) -> Result<Orientation> {
    let faces = trace_faces(g)?;
    let outer = default_outer_face(g, &faces);
    kasteleyn_orient_from(g, &faces, 0, outer)
}

/// Spanning tree from `root` oriented away from the root; the remaining
/// edges form a tree in the dual graph and are fixed leaves-first toward
/// `outer`.
pub fn kasteleyn_orient_from(g: &EmbeddedGraph, faces: &[Face], root: usize, outer: usize) -> Result<Orientation> {
    let m = g.num_edges();
    if m == 0 {
        return Ok(Orientation { forward: Vec::new() });
    }
    if root >= g.num_vertices() || outer >= faces.len() {
        return Err(Error::Invalid("root vertex or outer face out of range".into()));
    }
    let mut forward = vec![false; m];
    let mut fixed = vec![false; m];
    for (v, p) in bfs_tree(g, root).into_iter().enumerate() {
        let p = p.expect("connected");
        if p != v {
            let e = g.edge_index(p, v).expect("tree edge");
            forward[e] = p < v;
            fixed[e] = true;
        }
    }
    // faces on each side of every edge
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, f) in faces.iter().enumerate() {
        for k in 0..f.len() {
            sides[g.edge_index(f[k], f[(k + 1) % f.len()]).expect("face dart")].push(i);
        }
    }
    let mut open: Vec<usize> = faces
        .iter()
        .map(|f| {
            (0..f.len())
                .filter(|&k| !fixed[g.edge_index(f[k], f[(k + 1) % f.len()]).unwrap()])
                .count()
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..faces.len()).filter(|&i| i != outer && open[i] == 1).collect();
    while let Some(fi) = queue.pop_front() {
        if open[fi] != 1 {
            continue;
        }
        let f = &faces[fi];
        let k = (0..f.len())
            .find(|&k| !fixed[g.edge_index(f[k], f[(k + 1) % f.len()]).unwrap()])
            .expect("one open edge");
        let (a, b) = (f[k], f[(k + 1) % f.len()]);
        let e = g.edge_index(a, b).unwrap();
        // clockwise edges among the fixed ones
        let cw = (0..f.len())
            .filter(|&j| j != k)
            .filter(|&j| !fixed_along(g, &forward, f[j], f[(j + 1) % f.len()]))
            .count();
        // make the open edge clockwise (against a → b) iff cw is even
        let along = cw % 2 == 1;
        forward[e] = along == (a < b);
        fixed[e] = true;
        for &other in &sides[e] {
            open[other] -= 1;
            if other != outer && open[other] == 1 {
                queue.push_back(other);
            }
        }
    }
    if fixed.iter().any(|&x| !x) {
        return Err(Error::NotPlanar("dual of the cotree is not a tree".into()));
    }
    Ok(Orientation { forward })
}

fn fixed_along(g: &EmbeddedGraph, forward: &[bool], a: usize, b: usize) -> bool {
    forward[g.edge_index(a, b).unwrap()] == (a < b)
}

/// The skew matrix with `w(e)` at `(u, v)` when `e` points `u → v`.
pub fn kasteleyn_matrix(g: &EmbeddedGraph, o: &Orientation, unit: bool) -> SkewMatrix {
    let mut m = SkewMatrix::zeros(g.num_vertices());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let w = if unit { one() } else { g.weights[e].clone() };
        m.set(u, v, if o.forward[e] { w } else { -w });
    }
    m
}

/// Weighted perfect-matching count `Σ_M Π_{e∈M} w(e)`.
pub fn fkt_count(g: &EmbeddedGraph) -> Result<Scalar> {
    let o = kasteleyn_orient(g)?;
    Ok(count_with(g, &o))
}

/// All matchings enter `Pf` with one common sign, read off from unit weights;
/// this stays exact when some weights are negative.
pub(crate) fn count_with(g: &EmbeddedGraph, o: &Orientation) -> Scalar {
    if g.num_vertices() % 2 == 1 {
        return zero();
    }
    let unit = pfaffian(&kasteleyn_matrix(g, o, true));
    if unit.is_zero() {
        return zero();
    }
    let pf = pfaffian(&kasteleyn_matrix(g, o, false));
    if signum(&unit) < 0 {
        -pf
    } else {
        pf
    }
}

/// Enumerates perfect matchings by always matching the smallest free vertex.
pub fn brute_force_matchings(g: &EmbeddedGraph) -> Result<Scalar> {
    let n = g.num_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Resource {
            what: "vertex count",
            got: n,
            cap: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    if n % 2 == 1 {
        return Ok(zero());
    }
    fn go(g: &EmbeddedGraph, free: u32) -> Scalar {
        if free == 0 {
            return one();
        }
        let u = free.trailing_zeros() as usize;
        let rest = free & !(1 << u);
        g.rotation[u]
            .iter()
            .filter(|&&v| rest >> v & 1 == 1)
            .fold(zero(), |acc, &v| {
                let w = g.weight(g.edge_index(u, v).unwrap());
                if w.is_zero() {
                    acc
                } else {
                    acc + w * go(g, rest & !(1 << v))
                }
            })
    }
    Ok(go(g, ((1u64 << n) - 1) as u32))
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;
    use crate::exact::scalar::{int, ratio};
    use crate::sampling;
    use proptest::prelude::*;

    fn triangle() -> EmbeddedGraph {
        EmbeddedGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(trace_faces(&triangle()).unwrap().len(), 2);
        assert_eq!(trace_faces(&cycle(4).unwrap()).unwrap().len(), 2);
        assert_eq!(trace_faces(&k4()).unwrap().len(), 4);
        let edge = EmbeddedGraph::new(vec![vec![1], vec![0]]).unwrap();
        assert_eq!(trace_faces(&edge).unwrap().len(), 1);
    }

    #[test]
    fn bounded_faces_walk_counterclockwise() {
        let faces = trace_faces(&triangle()).unwrap();
        assert_eq!(faces, vec![vec![0, 1, 2], vec![1, 0, 2]]);
    }

    #[test]
    fn bad_rotation_is_not_planar() {
        // K4 with one rotation reversed is a torus-like embedding
        let g = EmbeddedGraph::new(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![2, 1, 0]]).unwrap();
        assert!(matches!(trace_faces(&g), Err(Error::NotPlanar(_))));
        assert!(fkt_count(&g).is_err());
    }

    #[test]
    fn structural_validation() {
        assert!(EmbeddedGraph::new(vec![vec![1], vec![]]).is_err());
        assert!(EmbeddedGraph::new(vec![vec![0]]).is_err());
        assert!(EmbeddedGraph::new(vec![vec![1], vec![0], vec![]]).is_err());
        assert!(EmbeddedGraph::new(vec![vec![1, 1], vec![0]]).is_err());
    }

    #[test]
    fn small_counts() {
        let mut edge = EmbeddedGraph::new(vec![vec![1], vec![0]]).unwrap();
        edge.set_weight(0, 1, ratio(5, 3)).unwrap();
        assert_eq!(fkt_count(&edge).unwrap(), ratio(5, 3));
        assert_eq!(fkt_count(&cycle(4).unwrap()).unwrap(), int(2));
        assert_eq!(fkt_count(&grid(2, 3).unwrap()).unwrap(), int(3));
        assert_eq!(brute_force_matchings(&triangle()).unwrap(), int(0));
        assert_eq!(fkt_count(&triangle()).unwrap(), int(0));
    }

    #[test]
    fn k33_oracle() {
        // any rotation will do for the oracle
        let rot = vec![vec![3, 4, 5], vec![3, 4, 5], vec![3, 4, 5], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
        let g = EmbeddedGraph::new(rot).unwrap();
        assert_eq!(brute_force_matchings(&g).unwrap(), int(6));
        assert!(trace_faces(&g).is_err());
    }

    #[test]
    fn four_cycle_orientation_is_odd() {
        let g = cycle(4).unwrap();
        let o = kasteleyn_orient(&g).unwrap();
        let faces = trace_faces(&g).unwrap();
        let outer = default_outer_face(&g, &faces);
        assert!(is_kasteleyn(&g, &faces, outer, &o));
        let inner = &faces[1 - outer];
        assert_eq!(clockwise_count(&g, inner, &o) % 2, 1);
    }

    #[test]
    fn negative_weights_keep_their_sign() {
        let mut g = cycle(4).unwrap();
        g.set_weight(0, 1, int(-3)).unwrap();
        assert_eq!(fkt_count(&g).unwrap(), brute_force_matchings(&g).unwrap());
    }

    #[test]
    fn json_round() {
        let g = EmbeddedGraph::from_json(
            r#"{"vertices": 4, "rotation": [[1,3],[2,0],[3,1],[0,2]], "weights": {"0-1": "1/2", "3-2": 4}}"#,
        )
        .unwrap();
        assert_eq!(fkt_count(&g).unwrap(), ratio(1, 2) * int(4) + int(1));
        assert!(EmbeddedGraph::from_json(r#"{"vertices": 2, "rotation": [[1],[0]], "weights": {"0-5": "1"}}"#).is_err());
        assert!(matches!(
            EmbeddedGraph::from_json("{\"vertices\": 2,\n\"rotation\": [[1],[0]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn grids_cycles_ladders() {
        for (r, c) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
            let g = grid(r, c).unwrap();
            assert_eq!(fkt_count(&g).unwrap(), brute_force_matchings(&g).unwrap(), "{r}x{c}");
        }
        assert_eq!(fkt_count(&grid(4, 4).unwrap()).unwrap(), int(36));
        for n in 4..=12 {
            let g = cycle(n).unwrap();
            let expect = if n % 2 == 0 { 2 } else { 0 };
            assert_eq!(fkt_count(&g).unwrap(), int(expect));
        }
        // ladders count Fibonacci numbers
        let fib = [1, 2, 3, 5, 8, 13, 21];
        for (k, f) in fib.iter().enumerate() {
            assert_eq!(fkt_count(&ladder(k + 1).unwrap()).unwrap(), int(*f));
        }
    }

    #[test]
    fn outer_face_and_root_do_not_matter() {
        let mut rng = sampling::rng(9);
        for _ in 0..5 {
            let g = with_random_weights(&random_triangulation(&mut rng, 10).unwrap(), &mut rng);
            let faces = trace_faces(&g).unwrap();
            let expect = brute_force_matchings(&g).unwrap();
            for (root, outer) in [(0, 0), (3, faces.len() - 1), (9, faces.len() / 2)] {
                let o = kasteleyn_orient_from(&g, &faces, root, outer).unwrap();
                assert!(is_kasteleyn(&g, &faces, outer, &o));
                assert_eq!(count_with(&g, &o), expect);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_triangulations(seed in any::<u64>(), v in 4usize..=14, drop in 0usize..6, weighted: bool) {
            let mut rng = sampling::rng(seed);
            let mut g = random_triangulation(&mut rng, v).unwrap();
            g = delete_random_edges(&g, &mut rng, drop).unwrap();
            if weighted {
                g = with_random_weights(&g, &mut rng);
            }
            let faces = trace_faces(&g).unwrap();
            let o = kasteleyn_orient(&g).unwrap();
            prop_assert!(is_kasteleyn(&g, &faces, default_outer_face(&g, &faces), &o));
            prop_assert_eq!(fkt_count(&g).unwrap(), brute_force_matchings(&g).unwrap());
        }
    }
}
