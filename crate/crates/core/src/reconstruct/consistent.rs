//! Exhaustive search for every graph sharing a boundary distance matrix.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{bdm, boundary_set_with, BoundaryDistanceMatrix};
use crate::error::{Error, Result};
use crate::graph_core::{all_pairs_distances, certificate, write_graph6, Certificate, Graph};

/// Largest number of free adjacency bits (hidden-to-anything pairs) the
/// search accepts by default.
pub const DEFAULT_FREE_BIT_LIMIT: usize = 32;

/// Default cap on the number of classes [`bdm_verdict`] asks for.
pub const DEFAULT_VERDICT_CAP: usize = 64;

/// Free adjacency bits when the boundary subgraph is forced.
pub fn free_bits(b: &BoundaryDistanceMatrix) -> usize {
    let h = b.n.saturating_sub(b.kappa());
    h * b.kappa() + h * h.saturating_sub(1) / 2
}

/// One representative per isomorphism class of connected graphs on `0..n`
/// whose boundary is exactly `b.boundary` and whose boundary distances are
/// exactly `b.entries`. Classes come back ordered by certificate.
pub fn consistent_graphs(b: &BoundaryDistanceMatrix, cap: usize) -> Result<Vec<Graph>> {
    consistent_graphs_with(b, cap, DEFAULT_FREE_BIT_LIMIT)
}

pub fn consistent_graphs_with(
    b: &BoundaryDistanceMatrix,
    cap: usize,
    max_free_bits: usize,
) -> Result<Vec<Graph>> {
    consistent_filtered(b, cap, max_free_bits, |_| true)
}

/// As [`consistent_graphs_with`], keeping only graphs accepted by `keep`.
pub fn consistent_filtered(
    b: &BoundaryDistanceMatrix,
    cap: usize,
    max_free_bits: usize,
    keep: impl Fn(&Graph) -> bool + Sync,
) -> Result<Vec<Graph>> {
    let n = b.n;
    let k = b.kappa();
    if k > n || n == 0 {
        return Err(Error::Matrix(format!("boundary of size {k} in a graph of order {n}")));
    }
    if n > 64 {
        return Err(Error::SearchTooLarge {
            free_bits: free_bits(b),
            limit: max_free_bits,
        });
    }
    let bits = free_bits(b);
    if bits > max_free_bits {
        return Err(Error::SearchTooLarge {
            free_bits: bits,
            limit: max_free_bits,
        });
    }
    let bnd = b.boundary.vertices().to_vec();
    let hidden: Vec<usize> = (0..n).filter(|v| !b.boundary.contains(*v)).collect();
    let mut base = Graph::empty(n);
    for i in 0..k {
        for j in i + 1..k {
            if b.get(i, j) == 1 {
                base.add_edge(bnd[i], bnd[j]);
            }
        }
    }
    let search = Search {
        b,
        bnd: &bnd,
        hidden: &hidden,
        keep: &keep,
    };
    if !search.distances_not_below(&base) {
        return Ok(vec![]);
    }
    let found = if hidden.is_empty() {
        let mut m = BTreeMap::new();
        search.finish(&base, &mut m);
        m
    } else {
        let first = &hidden[0];
        (1u64..1u64 << k)
            .into_par_iter()
            .map(|mask| {
                let mut m = BTreeMap::new();
                let mut g = base.clone();
                for (i, &v) in bnd.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge(*first, v);
                    }
                }
                if search.distances_not_below(&g) {
                    search.extend(&mut g, 1, &mut m);
                }
                m
            })
            .chain(rayon::iter::once({
                // The first hidden vertex may also have no boundary neighbour.
                let mut m = BTreeMap::new();
                let mut g = base.clone();
                search.extend(&mut g, 1, &mut m);
                m
            }))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(BTreeMap::new(), |mut acc, m| {
                for (c, g) in m {
                    acc.entry(c).or_insert(g);
                }
                acc
            })
    };
    if found.len() > cap {
        return Err(Error::CapExceeded(cap));
    }
    Ok(found.into_values().collect())
}

struct Search<'a, F> {
    b: &'a BoundaryDistanceMatrix,
    bnd: &'a [usize],
    hidden: &'a [usize],
    keep: &'a F,
}

impl<F: Fn(&Graph) -> bool + Sync> Search<'_, F> {
    /// Adding vertices and edges only shortens distances, so a boundary pair
    /// already closer than required cannot be repaired later.
    fn distances_not_below(&self, g: &Graph) -> bool {
        let d = all_pairs_distances(g);
        let k = self.bnd.len();
        (0..k).all(|i| (i + 1..k).all(|j| d.get(self.bnd[i], self.bnd[j]) >= self.b.get(i, j)))
    }

    fn extend(&self, g: &mut Graph, t: usize, out: &mut BTreeMap<Certificate, Graph>) {
        if t == self.hidden.len() {
            self.finish(g, out);
            return;
        }
        let v = self.hidden[t];
        let pool: Vec<usize> = self.bnd.iter().chain(&self.hidden[..t]).copied().collect();
        for mask in 0u64..1u64 << pool.len() {
            let mut child = g.clone();
            for (i, &u) in pool.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    child.add_edge(v, u);
                }
            }
            if self.distances_not_below(&child) {
                self.extend(&mut child, t + 1, out);
            }
        }
    }

    fn finish(&self, g: &Graph, out: &mut BTreeMap<Certificate, Graph>) {
        if !g.is_connected() {
            return;
        }
        let d = all_pairs_distances(g);
        let k = self.bnd.len();
        let exact = (0..k).all(|i| (i + 1..k).all(|j| d.get(self.bnd[i], self.bnd[j]) == self.b.get(i, j)));
        if !exact || boundary_set_with(g, &d).vertices() != self.bnd || !(self.keep)(g) {
            return;
        }
        out.entry(certificate(g)).or_insert_with(|| g.clone());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BdmStatus {
    #[serde(rename = "BDM")]
    Bdm,
    #[serde(rename = "NotBDM")]
    NotBdm,
}

#[derive(Clone, Debug)]
pub struct BdmVerdict {
    pub status: BdmStatus,
    /// Every class sharing the matrix (the input's own class included) when
    /// the status is `NotBdm`; empty otherwise.
    pub witnesses: Vec<Graph>,
}

impl BdmVerdict {
    pub fn is_bdm(&self) -> bool {
        self.status == BdmStatus::Bdm
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "graph": write_graph6(g),
            "status": self.status,
            "witnesses": self.witnesses.iter().map(write_graph6).collect::<Vec<_>>(),
        })
    }
}

/// A graph is BDM iff it is the only class consistent with its own order,
/// boundary and boundary distance matrix.
pub fn bdm_verdict(g: &Graph) -> Result<BdmVerdict> {
    bdm_verdict_with(g, DEFAULT_FREE_BIT_LIMIT)
}

pub fn bdm_verdict_with(g: &Graph, max_free_bits: usize) -> Result<BdmVerdict> {
    let b = bdm(g)?;
    // With the whole vertex set on the boundary every edge is a unit entry.
    if b.kappa() == b.n {
        return Ok(BdmVerdict {
            status: BdmStatus::Bdm,
            witnesses: vec![],
        });
    }
    let classes = consistent_graphs_with(&b, DEFAULT_VERDICT_CAP, max_free_bits)?;
    debug_assert!(classes.iter().any(|h| certificate(h) == certificate(g)));
    Ok(if classes.len() <= 1 {
        BdmVerdict {
            status: BdmStatus::Bdm,
            witnesses: vec![],
        }
    } else {
        BdmVerdict {
            status: BdmStatus::NotBdm,
            witnesses: classes,
        }
    })
}
