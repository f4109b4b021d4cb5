//! Canonical forms of small edge-weighted complete graphs.
//!
//! A structure is an `n x n` symmetric matrix of `u32` weights (0 means "no
//! relation"). Plain graphs use 0/1 entries; boundary distance matrices use
//! distances. The canonical form is the lexicographically largest upper
//! triangle reachable at a leaf of the individualization-refinement tree.
//! Refinement is 1-dimensional colour refinement; automorphisms found at
//! equivalent leaves, together with twin transpositions detected up front,
//! prune the tree.

use std::cmp::Ordering;

use super::graph::Graph;

/// Canonical byte string of a graph's isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(pub Vec<u8>);

impl Certificate {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `lab[i]` is the vertex placed at canonical position `i`.
    pub lab: Vec<usize>,
    /// Upper triangle (row-major, `i < j`) of the relabelled matrix.
    pub form: Vec<u32>,
}

impl CanonicalForm {
    /// Inverse of `lab`: canonical position of every vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (i, &v) in self.lab.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn certificate(g: &Graph) -> Certificate {
    certificate_from_form(g.order(), &canonical_form_of_graph(g).form)
}

pub(crate) fn certificate_from_form(n: usize, form: &[u32]) -> Certificate {
    let mut bytes = Vec::with_capacity(4 + form.len().div_ceil(8));
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for chunk in form.chunks(8) {
        let mut b = 0u8;
        for (k, &w) in chunk.iter().enumerate() {
            b |= ((w != 0) as u8) << (7 - k);
        }
        bytes.push(b);
    }
    Certificate(bytes)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && certificate(a) == certificate(b)
}

pub fn canonical_form_of_graph(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut m = vec![0u32; n * n];
    for (u, v) in g.edges() {
        m[u * n + v] = 1;
        m[v * n + u] = 1;
    }
    canonical_form(n, &m, None)
}

/// Canonical form of the weighted structure `m` (row-major `n x n`,
/// symmetric). Optional `colors` fix an ordered initial partition: vertices
/// are only ever mapped onto vertices of equal colour, and cells are ordered
/// by colour value.
pub fn canonical_form(n: usize, m: &[u32], colors: Option<&[u32]>) -> CanonicalForm {
    assert_eq!(m.len(), n * n);
    if n == 0 {
        return CanonicalForm {
            lab: vec![],
            form: vec![],
        };
    }
    let mut search = Search::new(n, m, colors);
    let root = search.initial_partition(colors);
    let mut prefix = Vec::new();
    search.descend(root, 0, 0, true, &mut prefix);
    let best = search.best.expect("search reaches at least one leaf");
    CanonicalForm {
        lab: best.lab,
        form: best.form,
    }
}

#[derive(Clone)]
struct Partition {
    elems: Vec<usize>,
    /// Start position of the cell holding each vertex.
    cell_of: Vec<usize>,
    /// Cells as `(start, end)` in position order.
    cells: Vec<(usize, usize)>,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells.len() == self.elems.len()
    }

    fn individualize(&self, v: usize) -> Partition {
        let mut p = self.clone();
        let start = p.cell_of[v];
        let ci = p.cells.iter().position(|&(s, _)| s == start).unwrap();
        let (s, e) = p.cells[ci];
        let at = p.elems[s..e].iter().position(|&x| x == v).unwrap() + s;
        p.elems.swap(s, at);
        p.cells[ci] = (s, s + 1);
        p.cells.insert(ci + 1, (s + 1, e));
        for &x in &p.elems[s + 1..e] {
            p.cell_of[x] = s + 1;
        }
        p
    }
}

struct Leaf {
    lab: Vec<usize>,
    form: Vec<u32>,
}

struct Search<'a> {
    n: usize,
    m: &'a [u32],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    sig: Vec<u64>,
}

#[inline]
fn mix(w: u32, cell: usize) -> u64 {
    // splitmix64 finaliser
    let mut z = ((w as u64) << 32 | cell as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl<'a> Search<'a> {
    fn new(n: usize, m: &'a [u32], colors: Option<&[u32]>) -> Self {
        let mut s = Search {
            n,
            m,
            first: None,
            best: None,
            generators: Vec::new(),
            sig: vec![0; n],
        };
        s.seed_twin_generators(colors);
        s
    }

    /// Twins (rows equal outside the pair itself) can be swapped by an
    /// automorphism fixing every other vertex.
    fn seed_twin_generators(&mut self, colors: Option<&[u32]>) {
        let n = self.n;
        let m = self.m;
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for u in 0..n {
            if owner[u].is_some() {
                continue;
            }
            for v in u + 1..n {
                if owner[v].is_some() {
                    continue;
                }
                if let Some(c) = colors {
                    if c[u] != c[v] {
                        continue;
                    }
                }
                let same = (0..n)
                    .all(|x| x == u || x == v || m[u * n + x] == m[v * n + x]);
                if same {
                    owner[v] = Some(u);
                    let mut g: Vec<usize> = (0..n).collect();
                    g.swap(u, v);
                    self.generators.push(g);
                }
            }
        }
    }

    fn initial_partition(&mut self, colors: Option<&[u32]>) -> Partition {
        let n = self.n;
        let mut elems: Vec<usize> = (0..n).collect();
        let mut cells = Vec::new();
        let mut cell_of = vec![0; n];
        match colors {
            None => cells.push((0, n)),
            Some(c) => {
                elems.sort_by_key(|&v| (c[v], v));
                let mut s = 0;
                for i in 1..=n {
                    if i == n || c[elems[i]] != c[elems[s]] {
                        cells.push((s, i));
                        s = i;
                    }
                }
            }
        }
        for &(s, e) in &cells {
            for &v in &elems[s..e] {
                cell_of[v] = s;
            }
        }
        let mut p = Partition {
            elems,
            cell_of,
            cells,
        };
        self.refine(&mut p);
        p
    }

    /// Colour refinement to the coarsest equitable partition finer than `p`.
    fn refine(&mut self, p: &mut Partition) {
        let n = self.n;
        loop {
            for x in 0..n {
                let row = &self.m[x * n..(x + 1) * n];
                let mut s = 0u64;
                for (y, &w) in row.iter().enumerate() {
                    if w != 0 {
                        s = s.wrapping_add(mix(w, p.cell_of[y]));
                    }
                }
                self.sig[x] = s;
            }
            let before = p.cells.len();
            let mut cells = Vec::with_capacity(n);
            for &(s, e) in &p.cells {
                if e - s == 1 {
                    cells.push((s, e));
                    continue;
                }
                let sig = &self.sig;
                let slice = &mut p.elems[s..e];
                let k0 = sig[slice[0]];
                if slice.iter().all(|&x| sig[x] == k0) {
                    cells.push((s, e));
                    continue;
                }
                slice.sort_unstable_by_key(|&x| sig[x]);
                let mut a = s;
                for i in s + 1..=e {
                    if i == e || sig[p.elems[i]] != sig[p.elems[a]] {
                        cells.push((a, i));
                        a = i;
                    }
                }
            }
            for &(s, e) in &cells {
                for &v in &p.elems[s..e] {
                    p.cell_of[v] = s;
                }
            }
            p.cells = cells;
            if p.cells.len() == before {
                return;
            }
        }
    }

    fn leaf_form(&self, lab: &[usize]) -> Vec<u32> {
        let n = self.n;
        let mut f = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            let row = &self.m[lab[i] * n..(lab[i] + 1) * n];
            for &lj in &lab[i + 1..] {
                f.push(row[lj]);
            }
        }
        f
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut g = vec![0; self.n];
        for (&a, &b) in from.iter().zip(to) {
            g[a] = b;
        }
        if g.iter().enumerate().any(|(i, &x)| i != x) && !self.generators.contains(&g) {
            self.generators.push(g);
        }
    }

    /// Returns `Some(depth)` to unwind to the first-path node at `depth`.
    fn descend(
        &mut self,
        p: Partition,
        depth: usize,
        first_anc: usize,
        on_first: bool,
        prefix: &mut Vec<usize>,
    ) -> Option<usize> {
        if p.is_discrete() {
            return self.visit_leaf(p.elems, first_anc);
        }
        let &(s, e) = p.cells.iter().find(|&&(s, e)| e - s > 1).unwrap();
        let mut candidates = p.elems[s..e].to_vec();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let mut child = p.individualize(v);
            self.refine(&mut child);
            let child_first = on_first && tried.len() == 1;
            let anc = if child_first { depth + 1 } else { first_anc };
            prefix.push(v);
            let r = self.descend(child, depth + 1, anc, child_first, prefix);
            prefix.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, lab: Vec<usize>, first_anc: usize) -> Option<usize> {
        let form = self.leaf_form(&lab);
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                lab: lab.clone(),
                form: form.clone(),
            });
            self.first = Some(Leaf { lab, form });
            return None;
        };
        if form == first.form {
            let from = first.lab.clone();
            self.record_automorphism(&from, &lab);
            return Some(first_anc);
        }
        let best = self.best.as_ref().unwrap();
        match form.cmp(&best.form) {
            Ordering::Greater => self.best = Some(Leaf { lab, form }),
            Ordering::Equal => {
                let from = best.lab.clone();
                self.record_automorphism(&from, &lab);
            }
            Ordering::Less => {}
        }
        None
    }

    fn equivalent_to_tried(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for g in &self.generators {
            if prefix.iter().any(|&p| g[p] != p) {
                continue;
            }
            any = true;
            for i in 0..n {
                let (a, b) = (find(&mut parent, i), find(&mut parent, g[i]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}
