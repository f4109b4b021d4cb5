//! Recognisers for the graph classes the boundary results are stated for,
//! the 3-fan centre detector, and a random Ptolemaic graph generator.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph_core::{block_cut_tree, Graph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFlags {
    pub bipartite: bool,
    pub chordal: bool,
    pub split: bool,
    pub distance_hereditary: bool,
    pub ptolemaic: bool,
    pub interval: bool,
    pub block_graph: bool,
    pub tree: bool,
    pub unicyclic: bool,
}

/// Named family, as accepted by filters on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bipartite,
    Chordal,
    Split,
    DistanceHereditary,
    Ptolemaic,
    Interval,
    BlockGraph,
    Tree,
    Unicyclic,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Bipartite,
        Family::Chordal,
        Family::Split,
        Family::DistanceHereditary,
        Family::Ptolemaic,
        Family::Interval,
        Family::BlockGraph,
        Family::Tree,
        Family::Unicyclic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bipartite => "bipartite",
            Family::Chordal => "chordal",
            Family::Split => "split",
            Family::DistanceHereditary => "distance-hereditary",
            Family::Ptolemaic => "ptolemaic",
            Family::Interval => "interval",
            Family::BlockGraph => "block-graph",
            Family::Tree => "tree",
            Family::Unicyclic => "unicyclic",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        let s = s.to_ascii_lowercase().replace('_', "-");
        let s = match s.as_str() {
            "dh" => "distance-hereditary",
            "block" => "block-graph",
            other => other,
        };
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Direct test for this one family, without computing the others.
    pub fn test(self, g: &Graph) -> bool {
        match self {
            Family::Bipartite => is_bipartite(g),
            Family::Chordal => is_chordal(g),
            Family::Split => split_partition(g).is_some(),
            Family::DistanceHereditary => is_distance_hereditary(g),
            Family::Ptolemaic => is_chordal(g) && is_distance_hereditary(g),
            Family::Interval => interval_clique_order(g).is_some(),
            Family::BlockGraph => is_block_graph(g),
            Family::Tree => g.is_connected() && g.size() + 1 == g.order(),
            Family::Unicyclic => g.is_connected() && g.size() == g.order(),
        }
    }

    pub fn get(self, f: &FamilyFlags) -> bool {
        match self {
            Family::Bipartite => f.bipartite,
            Family::Chordal => f.chordal,
            Family::Split => f.split,
            Family::DistanceHereditary => f.distance_hereditary,
            Family::Ptolemaic => f.ptolemaic,
            Family::Interval => f.interval,
            Family::BlockGraph => f.block_graph,
            Family::Tree => f.tree,
            Family::Unicyclic => f.unicyclic,
        }
    }
}

pub fn recognize(g: &Graph) -> Result<FamilyFlags> {
    g.require_connected()?;
    let chordal = is_chordal(g);
    let dh = is_distance_hereditary(g);
    let m = g.size();
    Ok(FamilyFlags {
        bipartite: is_bipartite(g),
        chordal,
        split: split_partition(g).is_some(),
        distance_hereditary: dh,
        ptolemaic: chordal && dh,
        interval: chordal && interval_clique_order(g).is_some(),
        block_graph: is_block_graph(g),
        tree: m + 1 == g.order(),
        unicyclic: m == g.order(),
    })
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if side[u] == u8::MAX {
                    side[u] = side[v] ^ 1;
                    stack.push(u);
                } else if side[u] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographic breadth-first search order (first visited first). Ties go
/// to the smallest vertex.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| labels[a].cmp(&labels[b]).then(b.cmp(&a)))
            .unwrap();
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                labels[u].push(n - step);
            }
        }
    }
    order
}

/// A perfect elimination ordering (simplicial-first), if the graph is chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = lex_bfs(g);
    peo.reverse();
    is_perfect_elimination_order(g, &peo).then_some(peo)
}

pub fn is_perfect_elimination_order(g: &Graph, peo: &[usize]) -> bool {
    let n = g.order();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in peo {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != p && !g.has_edge(u, p)) {
                return false;
            }
        }
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// Maximal cliques of a chordal graph (at most `n` of them), each sorted,
/// listed in sorted order.
pub fn chordal_maximal_cliques(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let peo = perfect_elimination_order(g)?;
    let n = g.order();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut cands: Vec<Vec<usize>> = peo
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    cands.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in cands {
        let contained = out
            .iter()
            .any(|big| c.iter().all(|v| big.binary_search(v).is_ok()));
        if !contained {
            out.push(c);
        }
    }
    out.sort();
    Some(out)
}

/// An ordering of the maximal cliques in which the cliques containing any
/// given vertex are consecutive, if one exists (i.e. the graph is a connected
/// interval graph).
pub fn interval_clique_order(g: &Graph) -> Option<Vec<Vec<usize>>> {
    if !g.is_connected() {
        return None;
    }
    let cliques = chordal_maximal_cliques(g)?;
    let order = consecutive_clique_order(g.order(), &cliques)?;
    Some(order.into_iter().map(|i| cliques[i].clone()).collect())
}

struct CliquePath<'a> {
    cliques: &'a [Vec<usize>],
    member_of: Vec<Vec<usize>>,
    placed: Vec<bool>,
    closed: Vec<bool>,
    order: Vec<usize>,
    failed: HashSet<(Vec<bool>, usize)>,
}

impl CliquePath<'_> {
    fn extend(&mut self) -> bool {
        if self.order.len() == self.cliques.len() {
            return true;
        }
        let last = *self.order.last().unwrap();
        let key = (self.placed.clone(), last);
        if self.failed.contains(&key) {
            return false;
        }
        for c in 0..self.cliques.len() {
            if self.placed[c] || !self.can_follow(last, c) {
                continue;
            }
            let closing: Vec<usize> = self.cliques[last]
                .iter()
                .copied()
                .filter(|v| self.cliques[c].binary_search(v).is_err())
                .collect();
            for &v in &closing {
                self.closed[v] = true;
            }
            self.placed[c] = true;
            self.order.push(c);
            if self.extend() {
                return true;
            }
            self.order.pop();
            self.placed[c] = false;
            for &v in &closing {
                self.closed[v] = false;
            }
        }
        self.failed.insert(key);
        false
    }

    fn can_follow(&self, last: usize, c: usize) -> bool {
        let (a, b) = (&self.cliques[last], &self.cliques[c]);
        if !a.iter().any(|v| b.binary_search(v).is_ok()) {
            return false;
        }
        if b.iter().any(|&v| self.closed[v]) {
            return false;
        }
        // Vertices leaving here must already have all their cliques placed.
        a.iter()
            .filter(|v| b.binary_search(v).is_err())
            .all(|&v| self.member_of[v].iter().all(|&k| self.placed[k]))
    }
}

/// Backtracking search for a consecutive ordering of `cliques` over `n`
/// vertices; returns clique indices.
pub fn consecutive_clique_order(n: usize, cliques: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut member_of = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            member_of[v].push(i);
        }
    }
    let mut st = CliquePath {
        cliques,
        member_of,
        placed: vec![false; cliques.len()],
        closed: vec![false; n],
        order: Vec::new(),
        failed: HashSet::new(),
    };
    for start in 0..cliques.len() {
        st.placed[start] = true;
        st.order.push(start);
        if st.extend() {
            return Some(st.order);
        }
        st.order.pop();
        st.placed[start] = false;
    }
    None
}

/// Clique / independent-set partition, if the graph is split.
pub fn split_partition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = by_deg.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=n).filter(|&i| deg[i - 1] + 1 >= i).max().unwrap_or(0);
    let lhs: usize = deg[..m].iter().sum();
    let rhs: usize = m * m.saturating_sub(1) + deg[m..].iter().sum::<usize>();
    if lhs != rhs {
        return None;
    }
    let clique = by_deg[..m].to_vec();
    let indep = by_deg[m..].to_vec();
    let ok = clique
        .iter()
        .enumerate()
        .all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        && indep
            .iter()
            .enumerate()
            .all(|(i, &a)| indep[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
    ok.then(|| {
        let (mut c, mut s) = (clique, indep);
        c.sort_unstable();
        s.sort_unstable();
        (c, s)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneStep {
    Pendant { vertex: usize, neighbor: usize },
    TrueTwin { vertex: usize, twin: usize },
    FalseTwin { vertex: usize, twin: usize },
}

/// Pruning sequence down to one vertex, if the graph is distance-hereditary.
/// Pendant vertices go first, then twins; smallest labels win ties.
pub fn dh_pruning_sequence(g: &Graph) -> Option<Vec<PruneStep>> {
    let n = g.order();
    let words = n.div_ceil(64).max(1);
    let mut alive = vec![0u64; words];
    for v in 0..n {
        alive[v / 64] |= 1 << (v % 64);
    }
    let is_alive = |alive: &[u64], v: usize| alive[v / 64] >> (v % 64) & 1 == 1;
    let live_row = |alive: &[u64], v: usize, drop: usize| -> Vec<u64> {
        let mut r: Vec<u64> = g.row(v).iter().zip(alive).map(|(a, b)| a & b).collect();
        r[drop / 64] &= !(1 << (drop % 64));
        r
    };
    let mut steps = Vec::new();
    let mut left = n;
    'outer: while left > 1 {
        for v in (0..n).filter(|&v| is_alive(&alive, v)) {
            let row = live_row(&alive, v, v);
            if row.iter().map(|w| w.count_ones()).sum::<u32>() == 1 {
                let neighbor = row
                    .iter()
                    .enumerate()
                    .find(|(_, w)| **w != 0)
                    .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
                    .unwrap();
                steps.push(PruneStep::Pendant { vertex: v, neighbor });
                alive[v / 64] &= !(1 << (v % 64));
                left -= 1;
                continue 'outer;
            }
        }
        for u in (0..n).filter(|&v| is_alive(&alive, v)) {
            for v in (u + 1..n).filter(|&v| is_alive(&alive, v)) {
                if live_row(&alive, u, v) == live_row(&alive, v, u) {
                    steps.push(if g.has_edge(u, v) {
                        PruneStep::TrueTwin { vertex: v, twin: u }
                    } else {
                        PruneStep::FalseTwin { vertex: v, twin: u }
                    });
                    alive[v / 64] &= !(1 << (v % 64));
                    left -= 1;
                    continue 'outer;
                }
            }
        }
        return None;
    }
    Some(steps)
}

pub fn is_distance_hereditary(g: &Graph) -> bool {
    g.is_connected() && dh_pruning_sequence(g).is_some()
}

pub fn is_block_graph(g: &Graph) -> bool {
    let Ok(t) = block_cut_tree(g) else {
        return false;
    };
    t.blocks.iter().all(|b| {
        b.iter()
            .enumerate()
            .all(|(i, &x)| b[i + 1..].iter().all(|&y| g.has_edge(x, y)))
    })
}

/// Vertices `u` with four neighbours inducing a path: centres of an induced
/// 3-fan (path on four vertices plus `u` joined to all of them).
pub fn fan3_centers(g: &Graph) -> Result<Vec<usize>> {
    g.require_connected()?;
    Ok((0..g.order()).filter(|&u| is_fan3_center(g, u)).collect())
}

fn is_fan3_center(g: &Graph, u: usize) -> bool {
    let nb: Vec<usize> = g.neighbors(u).collect();
    let k = nb.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let q = [nb[a], nb[b], nb[c], nb[d]];
                    let mut deg = [0u8; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(q[i], q[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    if edges == 3 && deg == [1, 1, 2, 2] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Random Ptolemaic graph built from a single vertex by `n - 1` operations:
/// attach a leaf, add a true twin, or add a false twin of a vertex whose
/// (non-empty) neighbourhood is a clique. The operation is drawn uniformly
/// among the applicable ones, then the target uniformly.
pub fn generate_ptolemaic(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_ptolemaic_with(n, &mut rng)
}

pub fn generate_ptolemaic_with(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    let mut g = Graph::empty(1);
    while g.order() < n {
        let k = g.order();
        let simplicial: Vec<usize> = (0..k)
            .filter(|&v| {
                let nb: Vec<usize> = g.neighbors(v).collect();
                !nb.is_empty()
                    && nb
                        .iter()
                        .enumerate()
                        .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            })
            .collect();
        let mut ops = vec![0u8, 1];
        if !simplicial.is_empty() {
            ops.push(2);
        }
        let op = *ops.choose(rng).unwrap();
        g = match op {
            0 => {
                let v = rng.gen_range(0..k);
                g.with_vertex([v])
            }
            1 => {
                let v = rng.gen_range(0..k);
                g.with_vertex(g.neighbors(v).chain([v]).collect::<Vec<_>>())
            }
            _ => {
                let v = *simplicial.choose(rng).unwrap();
                g.with_vertex(g.neighbors(v).collect::<Vec<_>>())
            }
        };
    }
    g
}
