//! Independent reference implementations used as test oracles. They work on
//! plain adjacency lists and share no code with the library beyond the
//! `Graph` container.
#![allow(dead_code)]

use std::collections::VecDeque;

use bdmlab::Graph;
use rand::Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).collect()).collect()
}

/// Queue BFS from every vertex; `usize::MAX` marks unreachable pairs.
pub fn distances(g: &Graph) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    let n = adj.len();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &u in &adj[v] {
                    if d[u] == usize::MAX {
                        d[u] = d[v] + 1;
                        q.push_back(u);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn connected(g: &Graph) -> bool {
    g.order() > 0 && distances(g)[0].iter().all(|&x| x != usize::MAX)
}

/// Straight from the definition: `v` is maximally distant from some `u`.
pub fn boundary(g: &Graph) -> Vec<usize> {
    let d = distances(g);
    let adj = adjacency(g);
    let n = g.order();
    (0..n)
        .filter(|&v| (0..n).any(|u| adj[v].iter().all(|&w| d[u][w] <= d[u][v])))
        .collect()
}

/// Every pair `x, y` has some `s` in `set` with `y` on an `x`-`s`
/// geodesic or `x` on a `y`-`s` geodesic.
pub fn strong_resolving(g: &Graph, set: &[usize]) -> bool {
    let d = distances(g);
    let n = g.order();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            set.iter()
                .any(|&s| d[x][s] == d[x][y] + d[y][s] || d[y][s] == d[y][x] + d[x][s])
        })
    })
}

/// Cut vertices by deleting each vertex and counting components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&v| {
            let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let h = g.induced(&keep);
            h.order() > 0 && !connected(&h)
        })
        .collect()
}

pub fn diameter(g: &Graph) -> usize {
    distances(g).into_iter().flatten().max().unwrap_or(0)
}

/// Whether the two matrices agree under some simultaneous permutation of
/// rows and columns, by trying all of them.
pub fn permutation_equivalent(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    let k = a.len();
    if b.len() != k {
        return false;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    fn rec(i: usize, perm: &mut Vec<usize>, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
        let k = perm.len();
        if i == k {
            return true;
        }
        for j in i..k {
            perm.swap(i, j);
            if (0..=i).all(|t| a[perm[i]][perm[t]] == b[i][t]) && rec(i + 1, perm, a, b) {
                return true;
            }
            perm.swap(i, j);
        }
        false
    }
    rec(0, &mut perm, a, b)
}

/// Brute-force isomorphism for small graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let to_m = |g: &Graph| -> Vec<Vec<u32>> {
        (0..g.order())
            .map(|u| (0..g.order()).map(|v| g.has_edge(u, v) as u32).collect())
            .collect()
    };
    a.order() == b.order() && a.size() == b.size() && permutation_equivalent(&to_m(a), &to_m(b))
}

/// Random connected graph: a random spanning tree plus each further pair
/// with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permuted(&perm)
}

pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    random_connected(n, 0.0, rng)
}

/// Published boundary matrices of the known colliding graphs.
pub mod printed {
    pub fn g1() -> Vec<Vec<u32>> {
        vec![
            vec![0, 1, 2, 3, 2, 1],
            vec![1, 0, 1, 2, 3, 2],
            vec![2, 1, 0, 1, 2, 2],
            vec![3, 2, 1, 0, 1, 2],
            vec![2, 3, 2, 1, 0, 1],
            vec![1, 2, 2, 2, 1, 0],
        ]
    }

    pub fn g3() -> Vec<Vec<u32>> {
        vec![
            vec![0, 1, 2, 3, 2, 1],
            vec![1, 0, 1, 2, 2, 2],
            vec![2, 1, 0, 1, 1, 2],
            vec![3, 2, 1, 0, 1, 2],
            vec![2, 2, 1, 1, 0, 1],
            vec![1, 2, 2, 2, 1, 0],
        ]
    }

    pub fn g5() -> Vec<Vec<u32>> {
        vec![
            vec![0, 2, 2, 2, 1, 1, 3],
            vec![2, 0, 2, 2, 1, 3, 1],
            vec![2, 2, 0, 2, 3, 1, 1],
            vec![2, 2, 2, 0, 3, 1, 1],
            vec![1, 1, 3, 3, 0, 2, 2],
            vec![1, 3, 1, 1, 2, 0, 2],
            vec![3, 1, 1, 1, 2, 2, 0],
        ]
    }

    pub fn g7() -> Vec<Vec<u32>> {
        vec![
            vec![0, 1, 2, 1, 3, 2, 1],
            vec![1, 0, 1, 2, 2, 1, 2],
            vec![2, 1, 0, 1, 1, 2, 1],
            vec![1, 2, 1, 0, 2, 1, 2],
            vec![3, 2, 1, 2, 0, 1, 2],
            vec![2, 1, 2, 1, 1, 0, 1],
            vec![1, 2, 1, 2, 2, 1, 0],
        ]
    }

    pub fn g9() -> Vec<Vec<u32>> {
        vec![
            vec![0, 3, 2, 2, 1, 2, 2, 1, 1],
            vec![3, 0, 2, 2, 2, 1, 1, 2, 2],
            vec![2, 2, 0, 2, 2, 1, 2, 1, 2],
            vec![2, 2, 2, 0, 2, 2, 1, 2, 1],
            vec![1, 2, 2, 2, 0, 1, 1, 1, 1],
            vec![2, 1, 1, 2, 1, 0, 1, 1, 1],
            vec![2, 1, 2, 1, 1, 1, 0, 1, 1],
            vec![1, 2, 1, 2, 1, 1, 1, 0, 1],
            vec![1, 2, 2, 1, 1, 1, 1, 1, 0],
        ]
    }
}
