//! Planar test graphs with their counterclockwise rotation systems.

use rand::seq::SliceRandom;
use rand::Rng;

use super::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::sampling;

/// `rows x cols` grid; vertex `(i, j)` is `i * cols + j`, drawn at `(j, i)`.
pub fn grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::Invalid("grid needs at least one row and column".into()));
    }
    let id = |i: usize, j: usize| i * cols + j;
    let rotation = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| {
            // east, north, west, south
            let mut r = Vec::new();
            if j + 1 < cols {
                r.push(id(i, j + 1));
            }
            if i + 1 < rows {
                r.push(id(i + 1, j));
            }
            if j > 0 {
                r.push(id(i, j - 1));
            }
            if i > 0 {
                r.push(id(i - 1, j));
            }
            r
        })
        .collect();
    EmbeddedGraph::new(rotation)
}

/// The `2 x n` ladder.
pub fn ladder(n: usize) -> Result<EmbeddedGraph> {
    grid(2, n)
}

pub fn cycle(n: usize) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::Invalid("cycle needs at least 3 vertices".into()));
    }
    EmbeddedGraph::new((0..n).map(|k| vec![(k + 1) % n, (k + n - 1) % n]).collect())
}

/// `K_4`: triangle 0, 1, 2 with vertex 3 inside.
pub fn k4() -> EmbeddedGraph {
    EmbeddedGraph::new(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![2, 0, 1]]).expect("K4 rotation is valid")
}

fn insert_after(rot: &mut Vec<usize>, after: usize, v: usize) {
    let k = rot.iter().position(|&x| x == after).expect("neighbour present");
    rot.insert(k + 1, v);
}

/// Stacked triangulation: start from a triangle and repeatedly put a new
/// vertex inside a random bounded triangular face.
pub fn random_triangulation(rng: &mut impl Rng, vertices: usize) -> Result<EmbeddedGraph> {
    if vertices < 3 {
        return Err(Error::Invalid("triangulation needs at least 3 vertices".into()));
    }
    let mut rot = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // bounded faces, each walked counterclockwise
    let mut faces = vec![[0usize, 1, 2]];
    for d in 3..vertices {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        insert_after(&mut rot[a], b, d);
        insert_after(&mut rot[b], c, d);
        insert_after(&mut rot[c], a, d);
        rot.push(vec![a, b, c]);
        faces.extend([[a, b, d], [b, c, d], [c, a, d]]);
    }
    EmbeddedGraph::new(rot)
}

/// Removes up to `count` random edges, skipping any whose removal would
/// disconnect the graph. Removing an edge keeps the embedding planar.
pub fn delete_random_edges(g: &EmbeddedGraph, rng: &mut impl Rng, count: usize) -> Result<EmbeddedGraph> {
    let mut current = g.clone();
    let mut candidates = g.edges().to_vec();
    candidates.shuffle(rng);
    let mut removed = 0;
    for (u, v) in candidates {
        if removed == count {
            break;
        }
        let mut rot: Vec<Vec<usize>> = (0..current.num_vertices()).map(|x| current.rotation(x).to_vec()).collect();
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        if let Ok(mut next) = EmbeddedGraph::new(rot) {
            for (a, b) in next.edges().to_vec() {
                let w = current.weight(current.edge_index(a, b).expect("subgraph edge")).clone();
                next.set_weight(a, b, w)?;
            }
            current = next;
            removed += 1;
        }
    }
    Ok(current)
}

/// The same graph with small random nonzero rational weights.
pub fn with_random_weights(g: &EmbeddedGraph, rng: &mut impl Rng) -> EmbeddedGraph {
    let mut out = g.clone();
    for &(u, v) in g.edges() {
        let w = loop {
            let w = sampling::small_rational(rng);
            if w != num_traits::Zero::zero() {
                break w;
            }
        };
        out.set_weight(u, v, w).expect("edge of g");
    }
    out
}
