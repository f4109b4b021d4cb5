use super::graph::Graph;
use crate::error::Result;

/// Blocks (maximal 2-connected pieces and bridges) and cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Sorted vertex sets, ordered by their smallest vertex.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// `(block index, cut vertex)` pairs.
    pub incidence: Vec<(usize, usize)>,
}

impl BlockCutTree {
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }
}

pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    g.require_connected()?;
    let n = g.order();
    if n == 1 {
        return Ok(BlockCutTree {
            blocks: vec![vec![0]],
            cut_vertices: vec![],
            incidence: vec![],
        });
    }

    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut time = 0;

    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let u = adj[v][*idx];
            *idx += 1;
            if disc[u] == usize::MAX {
                edge_stack.push((v, u));
                disc[u] = time;
                low[u] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((u, v, 0));
            } else if u != parent && disc[u] < disc[v] {
                edge_stack.push((v, u));
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent != 0 {
                        is_cut[parent] = true;
                    }
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }

    blocks.sort();
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
    let mut incidence = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if is_cut[v] {
                incidence.push((i, v));
            }
        }
    }
    Ok(BlockCutTree {
        blocks,
        cut_vertices,
        incidence,
    })
}

/// Cut vertices of a connected graph with at most 64 vertices, by deletion.
/// Cheap enough for the enumerator's inner loop.
pub(crate) fn small_cut_mask(g: &Graph) -> u64 {
    let n = g.order();
    if n <= 2 {
        return 0;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cuts = 0u64;
    for v in 0..n {
        let allowed = full & !(1u64 << v);
        let start = allowed.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= g.mask(w);
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        if seen != allowed {
            cuts |= 1 << v;
        }
    }
    cuts
}
