use crate::boundary::{bdm, BoundaryDistanceMatrix};
use crate::error::{Error, Result};
use crate::families::{is_chordal, is_distance_hereditary};
use crate::graph_core::Graph;

use super::consistent::{consistent_filtered, DEFAULT_FREE_BIT_LIMIT};

fn is_ptolemaic(g: &Graph) -> bool {
    is_chordal(g) && is_distance_hereditary(g)
}

#[derive(Clone, Copy, Debug)]
enum Op {
    /// `vertex` was a twin of `of`.
    Twin { vertex: usize, of: usize, adjacent: bool },
    /// `vertex` was a leaf hanging on `on`.
    Leaf { vertex: usize, on: usize },
}

/// Rebuilds the Ptolemaic graph with boundary distance matrix `b`.
///
/// Every non-cut vertex of a Ptolemaic graph is on the boundary, so the
/// hidden vertices are all cut vertices. The matrix is peeled the way a
/// distance-hereditary graph is pruned: twins are recognised by equal rows,
/// leaves by rows that are a neighbour's row plus one, and a vertex whose
/// neighbours are all still hidden is replaced by a fresh vertex one step
/// closer to everything. When the known vertices account for the whole
/// remaining graph their unit entries are its edges, and the recorded steps
/// are replayed backwards.
///
/// The result is checked against `b`. If the peeling gets stuck or the check
/// fails, an exhaustive search over Ptolemaic candidates decides.
pub fn reconstruct_ptolemaic(b: &BoundaryDistanceMatrix) -> Result<Graph> {
    if let Some(h) = peel(b) {
        if is_ptolemaic(&h) && bdm(&h).is_ok_and(|hb| hb == *b) {
            return Ok(h);
        }
    }
    let found = consistent_filtered(b, usize::MAX, DEFAULT_FREE_BIT_LIMIT, is_ptolemaic)?;
    match found.len() {
        0 => Err(Error::NoPtolemaicGraph),
        1 => Ok(found.into_iter().next().unwrap()),
        k => Err(Error::TheoremViolation(k)),
    }
}

fn peel(b: &BoundaryDistanceMatrix) -> Option<Graph> {
    let n = b.n;
    let k = b.kappa();
    // Vertex ids: boundary positions 0..k, then created vertices.
    let mut dist: Vec<Vec<u32>> = b.entries.clone();
    let mut known: Vec<usize> = (0..k).collect();
    let mut order = n;
    let mut ops = Vec::new();
    let mut created = 0usize;

    while known.len() < order {
        if let Some(op) = find_twin(&dist, &known).or_else(|| find_leaf(&dist, &known)) {
            let gone = match op {
                Op::Twin { vertex, .. } | Op::Leaf { vertex, .. } => vertex,
            };
            known.retain(|&v| v != gone);
            ops.push(op);
            order -= 1;
            continue;
        }
        let x = find_hidden_attachment(&dist, &known)?;
        let h = k + created;
        created += 1;
        if created > n - k {
            return None;
        }
        let mut row: Vec<u32> = vec![0; h + 1];
        for &z in &known {
            if z != x {
                row[z] = dist[x][z] - 1;
            }
        }
        for r in dist.iter_mut() {
            r.push(0);
        }
        for &z in &known {
            dist[z][h] = row[z];
        }
        dist.push(row);
        known.retain(|&v| v != x);
        known.push(h);
        ops.push(Op::Leaf { vertex: x, on: h });
        order -= 1;
    }
    if known.len() != order || created != n - k {
        return None;
    }

    let total = k + created;
    let mut g = Graph::empty(total);
    for (i, &u) in known.iter().enumerate() {
        for &v in &known[i + 1..] {
            if dist[u][v] == 1 {
                g.add_edge(u, v);
            }
        }
    }
    for op in ops.iter().rev() {
        match *op {
            Op::Twin { vertex, of, adjacent } => {
                let nbrs: Vec<usize> = g.neighbors(of).collect();
                for u in nbrs {
                    g.add_edge(vertex, u);
                }
                if adjacent {
                    g.add_edge(vertex, of);
                }
            }
            Op::Leaf { vertex, on } => g.add_edge(vertex, on),
        }
    }

    let bnd = b.boundary.vertices();
    let mut rest = (0..n).filter(|v| !b.boundary.contains(*v));
    let perm: Vec<usize> = (0..total)
        .map(|v| if v < k { bnd[v] } else { rest.next().unwrap() })
        .collect();
    Some(g.permuted(&perm))
}

fn same_elsewhere(dist: &[Vec<u32>], known: &[usize], x: usize, y: usize, shift: u32) -> bool {
    known
        .iter()
        .all(|&z| z == x || z == y || dist[x][z] == dist[y][z] + shift)
}

fn find_twin(dist: &[Vec<u32>], known: &[usize]) -> Option<Op> {
    // Two known vertices at distance 2 with nothing else known are the ends
    // of a P3, and dropping one would turn the middle into a non-cut vertex.
    if known.len() < 3 {
        return None;
    }
    for (i, &x) in known.iter().enumerate() {
        for &y in &known[i + 1..] {
            let d = dist[x][y];
            if (d == 1 || d == 2) && same_elsewhere(dist, known, x, y, 0) {
                let (vertex, of) = (x.max(y), x.min(y));
                return Some(Op::Twin {
                    vertex,
                    of,
                    adjacent: d == 1,
                });
            }
        }
    }
    None
}

fn find_leaf(dist: &[Vec<u32>], known: &[usize]) -> Option<Op> {
    for &x in known {
        for &p in known {
            if p != x && dist[x][p] == 1 && same_elsewhere(dist, known, x, p, 1) {
                return Some(Op::Leaf { vertex: x, on: p });
            }
        }
    }
    None
}

/// A known vertex with no known neighbour such that every other pair is at
/// least as close through a common neighbour of it.
fn find_hidden_attachment(dist: &[Vec<u32>], known: &[usize]) -> Option<usize> {
    known.iter().copied().find(|&x| {
        let others: Vec<usize> = known.iter().copied().filter(|&z| z != x).collect();
        !others.is_empty()
            && others.iter().all(|&z| dist[x][z] >= 2)
            && others.iter().enumerate().all(|(i, &a)| {
                others[i + 1..]
                    .iter()
                    .all(|&c| dist[a][c] + 2 <= dist[x][a] + dist[x][c])
            })
    })
}
