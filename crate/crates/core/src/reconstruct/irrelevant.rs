use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph_core::Graph;

/// Whether the edge `xy` is `x`-irrelevant: once it is deleted, every
/// neighbour of `x` is still within distance 2 of `y`. A neighbour cut off
/// from `y` counts as too far.
pub fn is_irrelevant_edge(g: &Graph, x: usize, y: usize) -> Result<bool> {
    let n = g.order();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
    }
    if !g.has_edge(x, y) {
        return Err(Error::NotAnEdge(format!("{}-{}", x + 1, y + 1)));
    }
    let mut h = g.clone();
    h.remove_edge(x, y);
    let mut dist = vec![u32::MAX; n];
    dist[y] = 0;
    let mut queue = VecDeque::from([y]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == 2 {
            continue;
        }
        for u in h.neighbors(v) {
            if dist[u] == u32::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(g.neighbors(x).all(|z| dist[z] <= 2))
}
