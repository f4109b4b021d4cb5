use super::graph::Graph;
use crate::error::{Error, Result};

/// Marks unreachable pairs.
pub const UNREACHABLE: u32 = u32::MAX;

/// Full `n x n` shortest-path distance matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    /// `D_{S,V}`: rows for `rows`, every column.
    pub fn rows_of(&self, rows: &[usize]) -> Vec<Vec<u32>> {
        rows.iter().map(|&s| self.row(s).to_vec()).collect()
    }

    /// `D_S`: principal submatrix on `set`.
    pub fn principal(&self, set: &[usize]) -> Vec<Vec<u32>> {
        set.iter()
            .map(|&a| set.iter().map(|&b| self.get(a, b)).collect())
            .collect()
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut d = vec![UNREACHABLE; n * n];
    if g.is_small() {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            let mut seen = 1u64 << s;
            let mut frontier = seen;
            let mut level = 0;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    row[v] = level;
                    next |= g.mask(v);
                }
                next &= !seen & full;
                seen |= next;
                frontier = next;
                level += 1;
            }
        }
    } else {
        let mut queue = Vec::with_capacity(n);
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for u in g.neighbors(v) {
                    if row[u] == UNREACHABLE {
                        row[u] = row[v] + 1;
                        queue.push(u);
                    }
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccentricityProfile {
    pub ecc: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    pub central: Vec<usize>,
    pub peripheral: Vec<usize>,
}

pub fn eccentricity_profile(dist: &DistanceMatrix) -> Result<EccentricityProfile> {
    let n = dist.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !dist.is_connected() {
        return Err(Error::Disconnected);
    }
    let ecc: Vec<u32> = (0..n)
        .map(|v| dist.row(v).iter().copied().max().unwrap_or(0))
        .collect();
    let radius = *ecc.iter().min().unwrap();
    let diameter = *ecc.iter().max().unwrap();
    let pick = |t: u32| (0..n).filter(|&v| ecc[v] == t).collect::<Vec<_>>();
    Ok(EccentricityProfile {
        central: pick(radius),
        peripheral: pick(diameter),
        ecc,
        radius,
        diameter,
    })
}

/// Diameter of a connected graph.
pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(eccentricity_profile(&all_pairs_distances(g))?.diameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::graph::named;

    #[test]
    fn path_and_cycle() {
        let d = all_pairs_distances(&named::path(4));
        assert_eq!(d.get(0, 3), 3);
        let c5 = all_pairs_distances(&named::cycle(5));
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert!((1..=2).contains(&c5.get(u, v)));
                }
            }
        }
    }

    #[test]
    fn large_path_uses_queue_bfs() {
        let d = all_pairs_distances(&named::path(100));
        assert_eq!(d.get(0, 99), 99);
        assert_eq!(d.get(40, 70), 30);
    }

    #[test]
    fn disconnected_sentinel() {
        let g = Graph::empty(3);
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(0, 1), UNREACHABLE);
        assert!(!d.is_connected());
        assert!(matches!(eccentricity_profile(&d), Err(Error::Disconnected)));
    }

    #[test]
    fn profiles() {
        let k5 = eccentricity_profile(&all_pairs_distances(&named::complete(5))).unwrap();
        assert_eq!((k5.radius, k5.diameter), (1, 1));
        let p5 = eccentricity_profile(&all_pairs_distances(&named::path(5))).unwrap();
        assert_eq!((p5.radius, p5.diameter), (2, 4));
        assert_eq!(p5.central, vec![2]);
        let c6 = eccentricity_profile(&all_pairs_distances(&named::cycle(6))).unwrap();
        assert_eq!((c6.radius, c6.diameter), (3, 3));
        assert_eq!(c6.central.len(), 6);
        assert_eq!(c6.peripheral.len(), 6);
    }
}
