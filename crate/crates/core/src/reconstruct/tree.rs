use crate::boundary::{check_distance_square, BoundaryDistanceMatrix};
use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, Graph};

/// The unique tree whose leaves `0..k` have the given pairwise distances.
/// Internal vertices are numbered from `k` on.
///
/// Leaves are inserted one at a time. For a new leaf `c`, the length of its
/// pendant path is the least `(d(c,i) + d(c,j) - d(i,j)) / 2` over placed
/// leaves `i, j`, and the path hangs off the `i`-`j` path of a minimising
/// pair at the matching offset.
pub fn tree_from_leaf_distances(entries: &[Vec<u32>]) -> Result<Graph> {
    let k = entries.len();
    check_distance_square(entries, k)?;
    if k < 2 {
        return Err(Error::NotRealizable("need at least two leaves".into()));
    }
    let d = |i: usize, j: usize| entries[i][j] as i64;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    hang(&mut adj, 0, 1, d(0, 1));

    for c in 2..k {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..c {
            for j in i + 1..c {
                let twice = d(c, i) + d(c, j) - d(i, j);
                if twice % 2 != 0 {
                    return Err(Error::NotRealizable(format!(
                        "odd branch length for leaf {}",
                        c + 1
                    )));
                }
                if best.is_none_or(|(b, _, _)| twice / 2 < b) {
                    best = Some((twice / 2, i, j));
                }
            }
        }
        let (len, i, j) = best.unwrap();
        let offset = d(c, i) - len;
        if len < 1 || offset < 1 || offset >= d(i, j) {
            return Err(Error::NotRealizable(format!(
                "leaf {} would not hang off an internal vertex",
                c + 1
            )));
        }
        let path = tree_path(&adj, i, j);
        if path.len() as i64 != d(i, j) + 1 {
            return Err(Error::NotRealizable("inconsistent leaf distances".into()));
        }
        let at = path[offset as usize];
        hang(&mut adj, at, c, len);
    }

    let mut g = Graph::empty(adj.len());
    for (a, nb) in adj.iter().enumerate() {
        for &b in nb {
            if a < b {
                g.add_edge(a, b);
            }
        }
    }
    let dist = all_pairs_distances(&g);
    for i in 0..k {
        if g.degree(i) != 1 {
            return Err(Error::NotRealizable(format!("leaf {} is not a leaf", i + 1)));
        }
        for j in 0..k {
            if dist.get(i, j) != entries[i][j] {
                return Err(Error::NotRealizable(format!(
                    "distance ({},{}) not reproduced",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(g)
}

fn link(adj: &mut [Vec<usize>], a: usize, b: usize) {
    adj[a].push(b);
    adj[b].push(a);
}

/// Appends a path of `len` edges from `from` ending at `leaf`.
fn hang(adj: &mut Vec<Vec<usize>>, from: usize, leaf: usize, len: i64) {
    let mut prev = from;
    for _ in 1..len {
        adj.push(Vec::new());
        let v = adj.len() - 1;
        link(adj, prev, v);
        prev = v;
    }
    link(adj, prev, leaf);
}

fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &u in &adj[v] {
            if parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Tree reconstruction keyed by a boundary record: leaves keep their labels,
/// internal vertices take the remaining labels in increasing order, and the
/// implied order must equal `b.n`.
pub fn tree_from_bdm(b: &BoundaryDistanceMatrix) -> Result<Graph> {
    let t = tree_from_leaf_distances(&b.entries)?;
    if t.order() != b.n {
        return Err(Error::NotRealizable(format!(
            "leaf distances imply {} vertices, record says {}",
            t.order(),
            b.n
        )));
    }
    let leaves = b.boundary.vertices();
    let mut rest = (0..b.n).filter(|v| !b.boundary.contains(*v));
    let perm: Vec<usize> = (0..t.order())
        .map(|v| if v < leaves.len() { leaves[v] } else { rest.next().unwrap() })
        .collect();
    Ok(t.permuted(&perm))
}
