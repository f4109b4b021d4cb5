use std::fmt;
use std::str::FromStr;

use crate::boundary::{parse_labels, parse_list, record_fields};
use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, DistanceMatrix, Graph};

/// Distances from the vertices of `set` to every vertex (`D_{S,V}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvMatrix {
    pub n: usize,
    pub set: Vec<usize>,
    /// `rows[i][v]` is the distance from `set[i]` to `v`.
    pub rows: Vec<Vec<u32>>,
}

impl SvMatrix {
    pub fn new(n: usize, set: Vec<usize>, rows: Vec<Vec<u32>>) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::Matrix("empty vertex set".into()));
        }
        if rows.len() != set.len() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix(format!("expected a {}x{n} matrix", set.len())));
        }
        for (i, &s) in set.iter().enumerate() {
            if s >= n {
                return Err(Error::VertexOutOfRange { vertex: s + 1, n });
            }
            if rows[i][s] != 0 {
                return Err(Error::Matrix(format!("row {} is nonzero at its own column", s + 1)));
            }
            for (j, &t) in set.iter().enumerate() {
                if rows[i][t] != rows[j][s] {
                    return Err(Error::Matrix(format!("asymmetric at ({},{})", s + 1, t + 1)));
                }
            }
        }
        Ok(Self { n, set, rows })
    }

    pub fn from_distances(d: &DistanceMatrix, set: &[usize]) -> Self {
        Self {
            n: d.order(),
            set: set.to_vec(),
            rows: d.rows_of(set),
        }
    }
}

/// `n=<int>; set=<comma list>; rows=<semicolon-separated comma lists>`
impl fmt::Display for SvMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self.set.iter().map(|s| (s + 1).to_string()).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "n={}; set={}; rows={}", self.n, set.join(","), rows.join(";"))
    }
}

impl FromStr for SvMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rows) = s
            .split_once("rows=")
            .ok_or_else(|| Error::Record("missing `rows=`".into()))?;
        let mut n = None;
        let mut set = None;
        for (k, v) in record_fields(head)? {
            match k {
                "n" => n = Some(v.parse().map_err(|_| Error::Record(format!("bad n `{v}`")))?),
                "set" | "s" => set = Some(parse_labels(v)?),
                other => return Err(Error::Record(format!("unknown field `{other}`"))),
            }
        }
        let rows = rows
            .trim()
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(parse_list)
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            n.ok_or_else(|| Error::Record("missing `n=`".into()))?,
            set.ok_or_else(|| Error::Record("missing `set=`".into()))?,
            rows,
        )
    }
}

/// Rebuilds a graph from the distances of a strong resolving set to every
/// vertex. Each pair's distance is recovered as the largest difference of
/// their distances to a set vertex; the result is checked against the input.
pub fn graph_from_sv(m: &SvMatrix) -> Result<Graph> {
    let n = m.n;
    let mut g = Graph::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            let d = m
                .rows
                .iter()
                .map(|r| r[x].abs_diff(r[y]))
                .max()
                .unwrap_or(0);
            if d == 1 {
                g.add_edge(x, y);
            }
        }
    }
    let dist = all_pairs_distances(&g);
    for (i, &s) in m.set.iter().enumerate() {
        if dist.row(s) != m.rows[i].as_slice() {
            return Err(Error::Validation(format!(
                "row of vertex {} differs after reconstruction",
                s + 1
            )));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::named;

    #[test]
    fn path_from_its_ends() {
        let m = SvMatrix::new(4, vec![0, 3], vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(graph_from_sv(&m).unwrap(), named::path(4));
    }

    #[test]
    fn triangle_from_two_vertices() {
        let d = all_pairs_distances(&named::complete(3));
        let m = SvMatrix::from_distances(&d, &[0, 1]);
        assert_eq!(graph_from_sv(&m).unwrap(), named::complete(3));
    }

    #[test]
    fn inconsistent_rows_are_caught() {
        let m = SvMatrix::new(3, vec![0, 1], vec![vec![0, 1, 3], vec![1, 0, 1]]).unwrap();
        assert!(matches!(graph_from_sv(&m), Err(Error::Validation(_))));
    }

    #[test]
    fn non_strong_set_may_yield_another_graph() {
        // A single vertex of K3 is not strong resolving: the star P3 has the
        // same row and is what comes back.
        let d = all_pairs_distances(&named::complete(3));
        let m = SvMatrix::from_distances(&d, &[0]);
        assert_eq!(graph_from_sv(&m).unwrap(), named::star(2));
    }

    #[test]
    fn record_round_trip() {
        let d = all_pairs_distances(&named::path(4));
        let m = SvMatrix::from_distances(&d, &[0, 3]);
        let text = m.to_string();
        assert_eq!(text, "n=4; set=1,4; rows=0,1,2,3;3,2,1,0");
        assert_eq!(text.parse::<SvMatrix>().unwrap(), m);
        assert!("n=4; set=1,4; rows=1,1,2,3;3,2,1,0".parse::<SvMatrix>().is_err());
    }
}
