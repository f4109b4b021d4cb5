//! Exhaustive checks of the structural claims about boundaries over a
//! stream of graphs.

use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{bdm_with, is_strong_resolving_with};
use crate::error::{Error, Result};
use crate::families::{fan3_centers, is_chordal, is_distance_hereditary, interval_clique_order};
use crate::graph_core::{all_pairs_distances, block_cut_tree, eccentricity_profile, write_graph6, Graph};

use super::consistent::bdm_verdict;
use super::irrelevant::is_irrelevant_edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Peripheral vertices are boundary vertices.
    L5_1,
    /// Self-centred graphs have every vertex on the boundary.
    L5_2,
    /// Diameter 2 gives `kappa` in `{n-1, n}`, with `n-1` exactly when the
    /// centre is a single vertex.
    L5_3,
    /// The boundary is a strong resolving set.
    T1StrongResolving,
    /// Diameter-2 graphs are BDM.
    T7Diam2,
    /// With exactly one hidden vertex `v`, the graph is BDM or some edge at
    /// `v` is `v`-irrelevant.
    T10Irrelevant,
    /// The boundary of a Ptolemaic graph is everything but its cut vertices.
    PtolBoundary,
    /// The boundary of an interval graph is everything but its cut vertices
    /// and 3-fan centres.
    IntBoundary,
    /// Interval graphs are BDM.
    C12IntervalEvidence,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::L5_1,
        Claim::L5_2,
        Claim::L5_3,
        Claim::T1StrongResolving,
        Claim::T7Diam2,
        Claim::T10Irrelevant,
        Claim::PtolBoundary,
        Claim::IntBoundary,
        Claim::C12IntervalEvidence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::L5_1 => "L5.1",
            Claim::L5_2 => "L5.2",
            Claim::L5_3 => "L5.3",
            Claim::T1StrongResolving => "T1-strong-resolving",
            Claim::T7Diam2 => "T7-diam2",
            Claim::T10Irrelevant => "T10-irrelevant",
            Claim::PtolBoundary => "PTOL-boundary",
            Claim::IntBoundary => "INT-boundary",
            Claim::C12IntervalEvidence => "C12-interval-evidence",
        }
    }

    pub fn parse(id: &str) -> Result<Claim> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| Error::UnknownClaim(id.to_string()))
    }

    /// Disconnected graphs and graphs outside the claim's hypothesis are
    /// `NotApplicable`.
    pub fn check(self, g: &Graph) -> Outcome {
        if g.order() == 0 || !g.is_connected() {
            return Outcome::NotApplicable;
        }
        let n = g.order();
        let d = all_pairs_distances(g);
        let ecc = eccentricity_profile(&d).expect("connected");
        let b = bdm_with(g, &d);
        let kappa = b.kappa();
        let holds = |ok: bool| if ok { Outcome::Holds } else { Outcome::Violated };
        let boundary_misses = |excluded: &[usize]| {
            (0..n).all(|v| b.boundary.contains(v) != excluded.contains(&v))
        };
        match self {
            Claim::L5_1 => holds(ecc.peripheral.iter().all(|&v| b.boundary.contains(v))),
            Claim::L5_2 if ecc.radius == ecc.diameter => holds(kappa == n),
            Claim::L5_3 if ecc.diameter == 2 => {
                let unique_centre = ecc.central.len() == 1;
                holds((kappa == n || kappa + 1 == n) && (kappa + 1 == n) == unique_centre)
            }
            Claim::T1StrongResolving => holds(is_strong_resolving_with(&d, b.boundary.vertices())),
            Claim::T7Diam2 if ecc.diameter == 2 => verdict(g),
            Claim::T10Irrelevant if kappa + 1 == n => {
                let v = (0..n).find(|&v| !b.boundary.contains(v)).unwrap();
                if g.neighbors(v).any(|h| is_irrelevant_edge(g, v, h).unwrap()) {
                    Outcome::Holds
                } else {
                    verdict(g)
                }
            }
            Claim::PtolBoundary if is_chordal(g) && is_distance_hereditary(g) => {
                holds(boundary_misses(&cut_vertices(g)))
            }
            Claim::IntBoundary if interval_clique_order(g).is_some() => {
                let mut excluded = cut_vertices(g);
                excluded.extend(fan3_centers(g).expect("connected"));
                holds(boundary_misses(&excluded))
            }
            Claim::C12IntervalEvidence if interval_clique_order(g).is_some() => verdict(g),
            _ => Outcome::NotApplicable,
        }
    }
}

fn cut_vertices(g: &Graph) -> Vec<usize> {
    block_cut_tree(g).expect("connected").cut_vertices
}

fn verdict(g: &Graph) -> Outcome {
    match bdm_verdict(g) {
        Ok(v) if v.is_bdm() => Outcome::Holds,
        Ok(_) => Outcome::Violated,
        Err(_) => Outcome::Skipped,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    Holds,
    Violated,
    /// Undecided, e.g. the BDM search space was too large.
    Skipped,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ViolationReport {
    pub claim: String,
    pub checked: u64,
    pub applicable: u64,
    pub skipped: u64,
    /// graph6 strings of the counterexamples, in stream order.
    pub violations: Vec<String>,
}

impl ViolationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a catalogued claim on every graph.
pub fn verify_claim(id: &str, graphs: &[Graph]) -> Result<ViolationReport> {
    let claim = Claim::parse(id)?;
    Ok(verify_predicate(claim.id(), graphs, |g| claim.check(g)))
}

/// Checks an arbitrary predicate; handy for claims outside the catalogue.
pub fn verify_predicate(
    name: &str,
    graphs: &[Graph],
    check: impl Fn(&Graph) -> Outcome + Sync,
) -> ViolationReport {
    let outcomes: Vec<Outcome> = graphs.par_iter().map(&check).collect();
    let mut report = ViolationReport {
        claim: name.to_string(),
        ..Default::default()
    };
    for (g, o) in graphs.iter().zip(outcomes) {
        report.checked += 1;
        match o {
            Outcome::NotApplicable => {}
            Outcome::Holds => report.applicable += 1,
            Outcome::Violated => {
                report.applicable += 1;
                report.violations.push(write_graph6(g));
            }
            Outcome::Skipped => {
                report.applicable += 1;
                report.skipped += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::boundary_set;
    use crate::graph_core::{connected_graphs_upto, named};

    #[test]
    fn ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::parse(c.id()).unwrap(), c);
        }
        assert!(matches!(verify_claim("T99", &[]), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn false_claim_is_reported() {
        let graphs = [named::complete(4), named::path(4)];
        let r = verify_predicate("kappa=n", &graphs, |g| {
            if boundary_set(g).unwrap().kappa() == g.order() {
                Outcome::Holds
            } else {
                Outcome::Violated
            }
        });
        assert_eq!(r.violations, vec![write_graph6(&named::path(4))]);
        assert_eq!((r.checked, r.applicable), (2, 2));
    }

    #[test]
    fn cheap_claims_hold_up_to_six_vertices() {
        let graphs = connected_graphs_upto(6);
        for id in ["L5.1", "L5.2", "L5.3", "T1-strong-resolving", "PTOL-boundary"] {
            let r = verify_claim(id, &graphs).unwrap();
            assert!(r.holds(), "{id}: {:?}", r.violations);
            assert!(r.applicable > 0, "{id}");
        }
    }

    #[test]
    fn fan_centre_with_a_true_twin_is_on_the_boundary() {
        // P4 plus two adjacent universal vertices: an interval graph where
        // each universal vertex centres a 3-fan yet is maximally distant from
        // its twin.
        let mut g = named::path(4).with_vertex(0..4);
        g = g.with_vertex(0..5);
        assert_eq!(write_graph6(&g).len(), 4);
        assert!(interval_clique_order(&g).is_some());
        assert_eq!(fan3_centers(&g).unwrap(), vec![4, 5]);
        assert_eq!(boundary_set(&g).unwrap().kappa(), 6);
        assert_eq!(Claim::IntBoundary.check(&g), Outcome::Violated);
    }

    #[test]
    fn interval_vertices_off_the_boundary_are_cuts_or_fan_centres() {
        for g in connected_graphs_upto(7) {
            if interval_clique_order(&g).is_none() {
                continue;
            }
            let b = boundary_set(&g).unwrap();
            let cuts = cut_vertices(&g);
            let fans = fan3_centers(&g).unwrap();
            for v in 0..g.order() {
                if !b.contains(v) {
                    assert!(cuts.contains(&v) || fans.contains(&v), "{g:?} vertex {}", v + 1);
                }
            }
        }
    }
}
