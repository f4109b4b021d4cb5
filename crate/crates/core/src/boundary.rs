//! Boundary vertices, boundary distance matrices and strong resolving sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, DistanceMatrix, Graph};

/// Sorted set of boundary vertices (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundarySet(Vec<usize>);

impl BoundarySet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn kappa(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// 1-based labels joined by commas.
    pub fn label_list(&self) -> String {
        self.0
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Vertices `v` none of whose neighbours is farther from `u` than `v`.
pub fn boundary_of(g: &Graph, d: &DistanceMatrix, u: usize) -> Result<Vec<usize>> {
    g.require_connected()?;
    if u >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: u + 1,
            n: g.order(),
        });
    }
    Ok((0..g.order())
        .filter(|&v| is_maximally_distant(g, d, u, v))
        .collect())
}

#[inline]
fn is_maximally_distant(g: &Graph, d: &DistanceMatrix, u: usize, v: usize) -> bool {
    let row = d.row(u);
    g.neighbors(v).all(|w| row[w] <= row[v])
}

pub fn boundary_set(g: &Graph) -> Result<BoundarySet> {
    g.require_connected()?;
    Ok(boundary_set_with(g, &all_pairs_distances(g)))
}

/// Boundary from a precomputed distance matrix of a connected graph.
pub fn boundary_set_with(g: &Graph, d: &DistanceMatrix) -> BoundarySet {
    let n = g.order();
    BoundarySet(
        (0..n)
            .filter(|&v| (0..n).any(|u| is_maximally_distant(g, d, u, v)))
            .collect(),
    )
}

/// The `kappa x kappa` distance matrix on the boundary, together with the
/// graph order. Rows and columns follow the sorted boundary labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryDistanceMatrix {
    pub n: usize,
    pub boundary: BoundarySet,
    pub entries: Vec<Vec<u32>>,
}

impl BoundaryDistanceMatrix {
    /// Checks shape, symmetry, zero diagonal and positive off-diagonal
    /// entries.
    pub fn new(n: usize, boundary: Vec<usize>, entries: Vec<Vec<u32>>) -> Result<Self> {
        if boundary.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Matrix("boundary labels must be strictly increasing".into()));
        }
        if let Some(&v) = boundary.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        check_distance_square(&entries, boundary.len())?;
        Ok(Self {
            n,
            boundary: BoundarySet(boundary),
            entries,
        })
    }

    pub fn kappa(&self) -> usize {
        self.boundary.kappa()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    /// Row-major flattening.
    pub fn flat(&self) -> Vec<u32> {
        self.entries.iter().flatten().copied().collect()
    }
}

pub(crate) fn check_distance_square(entries: &[Vec<u32>], k: usize) -> Result<()> {
    if entries.len() != k || entries.iter().any(|r| r.len() != k) {
        return Err(Error::Matrix(format!("expected a {k}x{k} matrix")));
    }
    for i in 0..k {
        if entries[i][i] != 0 {
            return Err(Error::Matrix(format!("nonzero diagonal at {}", i + 1)));
        }
        for j in 0..i {
            if entries[i][j] != entries[j][i] {
                return Err(Error::Matrix(format!("asymmetric at ({},{})", i + 1, j + 1)));
            }
            if entries[i][j] == 0 {
                return Err(Error::Matrix(format!("zero off-diagonal at ({},{})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

pub fn bdm(g: &Graph) -> Result<BoundaryDistanceMatrix> {
    g.require_connected()?;
    Ok(bdm_with(g, &all_pairs_distances(g)))
}

pub fn bdm_with(g: &Graph, d: &DistanceMatrix) -> BoundaryDistanceMatrix {
    let boundary = boundary_set_with(g, d);
    let entries = d.principal(boundary.vertices());
    BoundaryDistanceMatrix {
        n: g.order(),
        boundary,
        entries,
    }
}

fn join_row(r: &[u32]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `n=<int>; boundary=<comma list>; rows=<semicolon-separated comma lists>`
impl fmt::Display for BoundaryDistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.entries.iter().map(|r| join_row(r)).collect();
        write!(
            f,
            "n={}; boundary={}; rows={}",
            self.n,
            self.boundary.label_list(),
            rows.join(";")
        )
    }
}

/// Splits `key=value; key=value` into pairs, in order.
pub(crate) fn record_fields(s: &str) -> Result<Vec<(&str, &str)>> {
    s.trim()
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty() && p.contains('='))
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Record(format!("malformed field `{p}`")))
        })
        .collect()
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Record(format!("bad integer `{x}`")))
        })
        .collect()
}

pub(crate) fn parse_labels(s: &str) -> Result<Vec<usize>> {
    parse_list(s)?
        .into_iter()
        .map(|x| {
            if x == 0 {
                Err(Error::Record("labels start at 1".into()))
            } else {
                Ok(x as usize - 1)
            }
        })
        .collect()
}

impl FromStr for BoundaryDistanceMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // Rows are separated by ';', which is also the field separator, so
        // everything after `rows=` belongs to the matrix.
        let (head, rows) = s
            .split_once("rows=")
            .ok_or_else(|| Error::Record("missing `rows=`".into()))?;
        let mut n = None;
        let mut boundary = None;
        for (k, v) in record_fields(head)? {
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|_| Error::Record(format!("bad n `{v}`")))?),
                "boundary" => boundary = Some(parse_labels(v)?),
                other => return Err(Error::Record(format!("unknown field `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::Record("missing `n=`".into()))?;
        let boundary = boundary.ok_or_else(|| Error::Record("missing `boundary=`".into()))?;
        let entries = rows
            .trim()
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(parse_list)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, boundary, entries)
    }
}

/// True iff every pair `x, y` has some `s` in `set` with one of them on a
/// shortest path from `s` to the other.
pub fn is_strong_resolving(g: &Graph, set: &[usize]) -> Result<bool> {
    g.require_connected()?;
    Ok(is_strong_resolving_with(&all_pairs_distances(g), set))
}

pub fn is_strong_resolving_with(d: &DistanceMatrix, set: &[usize]) -> bool {
    let n = d.order();
    for x in 0..n {
        for y in x + 1..n {
            let dxy = d.get(x, y);
            let resolved = set.iter().any(|&s| {
                let (sx, sy) = (d.get(s, x), d.get(s, y));
                sx == sy + dxy || sy == sx + dxy
            });
            if !resolved {
                return false;
            }
        }
    }
    true
}

/// Graphviz rendering with 1-based labels. Vertices in `marked` (normally
/// the boundary) are drawn filled black.
pub fn to_dot(g: &Graph, marked: &[usize]) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        if marked.contains(&v) {
            out.push_str(&format!(
                "  {} [boundary=true, style=filled, fillcolor=black, fontcolor=white];\n",
                v + 1
            ));
        } else {
            out.push_str(&format!("  {};\n", v + 1));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", u + 1, v + 1));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::graph::named;

    #[test]
    fn boundary_of_examples() {
        let p4 = named::path(4);
        let d = all_pairs_distances(&p4);
        assert_eq!(boundary_of(&p4, &d, 0).unwrap(), vec![3]);
        let k3 = named::complete(3);
        assert_eq!(boundary_of(&k3, &all_pairs_distances(&k3), 0).unwrap(), vec![1, 2]);
        let star = named::star(4);
        assert_eq!(
            boundary_of(&star, &all_pairs_distances(&star), 0).unwrap(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn a_vertex_is_never_its_own_boundary_vertex() {
        let g = named::cycle(5);
        let d = all_pairs_distances(&g);
        for u in 0..5 {
            assert!(!boundary_of(&g, &d, u).unwrap().contains(&u));
        }
        // ... except in K1, where the condition holds vacuously.
        let k1 = Graph::empty(1);
        assert_eq!(boundary_set(&k1).unwrap().vertices(), &[0]);
    }

    #[test]
    fn boundary_sets() {
        assert_eq!(boundary_set(&named::cycle(4)).unwrap().kappa(), 4);
        assert_eq!(boundary_set(&named::path(6)).unwrap().vertices(), &[0, 5]);
        assert_eq!(boundary_set(&named::star(3)).unwrap().vertices(), &[1, 2, 3]);
        assert!(boundary_set(&Graph::empty(2)).is_err());
    }

    #[test]
    fn bdm_examples_and_record() {
        let b = bdm(&named::path(4)).unwrap();
        assert_eq!(b.boundary.vertices(), &[0, 3]);
        assert_eq!(b.entries, vec![vec![0, 3], vec![3, 0]]);
        let text = b.to_string();
        assert_eq!(text, "n=4; boundary=1,4; rows=0,3;3,0");
        assert_eq!(text.parse::<BoundaryDistanceMatrix>().unwrap(), b);

        let k3 = bdm(&named::complete(3)).unwrap();
        assert_eq!(k3.entries, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn record_validation() {
        assert!("n=4; boundary=1,4; rows=0,3;2,0".parse::<BoundaryDistanceMatrix>().is_err());
        assert!("n=4; boundary=4,1; rows=0,3;3,0".parse::<BoundaryDistanceMatrix>().is_err());
        assert!("n=3; boundary=1,4; rows=0,3;3,0".parse::<BoundaryDistanceMatrix>().is_err());
        assert!("n=4; boundary=1,4".parse::<BoundaryDistanceMatrix>().is_err());
        assert!("n=4; boundary=1,2; rows=0,0;0,0".parse::<BoundaryDistanceMatrix>().is_err());
    }

    #[test]
    fn strong_resolving_examples() {
        let p4 = named::path(4);
        assert!(is_strong_resolving(&p4, &[0, 3]).unwrap());
        let c4 = named::cycle(4);
        for v in 0..4 {
            assert!(!is_strong_resolving(&c4, &[v]).unwrap());
        }
        assert!(is_strong_resolving(&c4, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn dot_marks_boundary() {
        let g = named::path(3);
        let dot = to_dot(&g, boundary_set(&g).unwrap().vertices());
        assert!(dot.contains("  1 [boundary=true"));
        assert!(dot.contains("  2;\n"));
        assert!(dot.contains("  3 [boundary=true"));
        assert!(dot.contains("1 -- 2;") && dot.contains("2 -- 3;"));
    }
}
