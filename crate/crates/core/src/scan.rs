//! Return-probability scans over growing graph families.
//!
//! Each size is evaluated through a decomposition whose start block is a
//! clique, so the start block never needs an eigensolver and sizes in the
//! tens of thousands stay cheap.

use serde::Serialize;

use crate::decomposition::{
    clique_gateway_split, dominating_split, gateway_vertices, FidPartition,
};
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::walk::FidWalk;

/// Generators whose graphs always contain a dominating vertex (or, for
/// `Threshold`, usually do).
#[derive(Debug, Clone, PartialEq)]
pub enum DominatingFamily {
    Complete,
    Star,
    Threshold { p: f64, seed: u64 },
}

impl DominatingFamily {
    pub fn family(&self, n: usize) -> Family {
        match *self {
            DominatingFamily::Complete => Family::Complete(n),
            DominatingFamily::Star => Family::Star(n),
            DominatingFamily::Threshold { p, seed } => Family::Threshold { n, p, seed },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanFamily {
    /// Start from the smallest dominating vertex; size is `n`. The bound on
    /// `1 - P` is `4/n`.
    Dominating(DominatingFamily),
    /// A clique on `1..=n_c` whose last `gateways` vertices connect to a
    /// fixed outer graph (shifted to `n_c+1..`). Gateway `r` is joined to
    /// the outer vertices with local index `≡ r (mod gateways)`. The start
    /// vertex is 1 and size is `n_c`; the bound is `8/(n_c - gateways)`.
    CliqueGateway { gateways: usize, outer: Graph },
}

/// One graph of a scan family, ready to evaluate.
#[derive(Debug, Clone)]
pub struct ScanInstance {
    pub size: usize,
    pub graph: Graph,
    pub partition: FidPartition,
    pub start: usize,
    pub bound: f64,
}

impl ScanFamily {
    pub fn instance(&self, size: usize) -> Result<ScanInstance> {
        match self {
            ScanFamily::Dominating(f) => {
                let graph = generate(&f.family(size))?;
                let partition = dominating_split(&graph).ok_or(Error::NoDominatingVertex)?;
                let start = partition.block(0)[0];
                Ok(ScanInstance {
                    size,
                    graph,
                    partition,
                    start,
                    bound: 4.0 / size as f64,
                })
            }
            ScanFamily::CliqueGateway { gateways, outer } => {
                let gateways = *gateways;
                if size <= gateways {
                    return Err(Error::InvalidArgument(format!(
                        "clique size {size} must exceed the gateway count {gateways}"
                    )));
                }
                if gateways > outer.n() {
                    return Err(Error::InvalidArgument(format!(
                        "{gateways} gateways need at least as many outer vertices, got {}",
                        outer.n()
                    )));
                }
                let graph = clique_with_gateways(size, gateways, outer);
                let clique: Vec<usize> = (1..=size).collect();
                debug_assert_eq!(gateway_vertices(&graph, &clique).len(), gateways);
                let partition = clique_gateway_split(&graph, &clique)?;
                Ok(ScanInstance {
                    size,
                    graph,
                    partition,
                    start: 1,
                    bound: 8.0 / (size - gateways) as f64,
                })
            }
        }
    }
}

fn clique_with_gateways(size: usize, gateways: usize, outer: &Graph) -> Graph {
    let mut g = Graph::edgeless(size + outer.n());
    for u in 0..size {
        for v in u + 1..size {
            g.link(u, v);
        }
    }
    for (u, v) in outer.edges() {
        g.link(size + u - 1, size + v - 1);
    }
    for r in 0..gateways {
        let gateway = size - gateways + r;
        for j in (r..outer.n()).step_by(gateways) {
            g.link(gateway, size + j);
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub size: usize,
    pub t: f64,
    pub return_probability: f64,
    pub bound: f64,
    /// `1 - P ≤ bound + tol`.
    pub within_bound: bool,
}

impl ScanRow {
    pub fn deficit(&self) -> f64 {
        1.0 - self.return_probability
    }
}

/// Rows for one instance, in time order.
pub fn scan_instance(
    inst: &ScanInstance,
    times: &[f64],
    eigen_tol: f64,
    bound_tol: f64,
) -> Result<Vec<ScanRow>> {
    let walk = FidWalk::new(&inst.graph, &inst.partition, eigen_tol)?;
    times
        .iter()
        .map(|&t| {
            let p = walk.at(t).amplitude(inst.start, inst.start)?.norm_sqr();
            Ok(ScanRow {
                size: inst.size,
                t,
                return_probability: p,
                bound: inst.bound,
                within_bound: 1.0 - p <= inst.bound + bound_tol,
            })
        })
        .collect()
}

/// Streams rows in `(size, t)` order; only one instance is alive at a time.
pub fn scan_rows<'a>(
    family: &'a ScanFamily,
    sizes: &'a [usize],
    times: &'a [f64],
    eigen_tol: f64,
    bound_tol: f64,
) -> Result<impl Iterator<Item = Result<Vec<ScanRow>>> + 'a> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "scan sizes must be strictly ascending".into(),
        ));
    }
    Ok(sizes.iter().map(move |&size| {
        let inst = family.instance(size)?;
        scan_instance(&inst, times, eigen_tol, bound_tol)
    }))
}

pub fn localization_scan(
    family: &ScanFamily,
    sizes: &[usize],
    times: &[f64],
    eigen_tol: f64,
    bound_tol: f64,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::with_capacity(sizes.len() * times.len());
    for chunk in scan_rows(family, sizes, times, eigen_tol, bound_tol)? {
        rows.extend(chunk?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{dominating_return_probability, DirectWalk};

    const EIGEN: f64 = 1e-12;

    #[test]
    fn dominating_complete_matches_closed_form() {
        let fam = ScanFamily::Dominating(DominatingFamily::Complete);
        let times = [0.0, 0.3, 1.7, 10.0];
        let rows = localization_scan(&fam, &[10, 100, 1000], &times, EIGEN, 1e-9).unwrap();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            let want = dominating_return_probability(r.size, r.t);
            assert!((r.return_probability - want).abs() < 1e-12);
            assert!(r.within_bound);
        }
        assert_eq!(rows[0].return_probability, 1.0);
    }

    #[test]
    fn star_scan_uses_dominating_centre() {
        let fam = ScanFamily::Dominating(DominatingFamily::Star);
        let inst = fam.instance(50).unwrap();
        assert_eq!(inst.start, 1);
        assert_eq!(inst.partition.k(), 2);
    }

    #[test]
    fn clique_instance_layout() {
        let outer = generate(&Family::Path(4)).unwrap();
        let fam = ScanFamily::CliqueGateway { gateways: 2, outer };
        let inst = fam.instance(6).unwrap();
        assert_eq!(inst.graph.n(), 10);
        assert_eq!(
            gateway_vertices(&inst.graph, &[1, 2, 3, 4, 5, 6]),
            vec![5, 6]
        );
        assert_eq!(inst.partition.block(0), &[1, 2, 3, 4]);
        assert_eq!(inst.bound, 2.0);
    }

    #[test]
    fn clique_scan_agrees_with_direct_oracle() {
        let outer = generate(&Family::ErdosRenyi {
            n: 6,
            p: 0.5,
            seed: 2,
        })
        .unwrap();
        let fam = ScanFamily::CliqueGateway { gateways: 2, outer };
        let times = [0.0, 0.3, 1.7, 10.0];
        let inst = fam.instance(12).unwrap();
        let rows = scan_instance(&inst, &times, EIGEN, 1e-9).unwrap();
        let direct = DirectWalk::new(&inst.graph, EIGEN).unwrap();
        for r in rows {
            let d = direct.at(r.t).probability(1, 1);
            assert!((r.return_probability - d).abs() < 1e-10);
            assert!(r.within_bound);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        let fam = ScanFamily::Dominating(DominatingFamily::Complete);
        assert!(localization_scan(&fam, &[10, 5], &[0.0], EIGEN, 1e-9).is_err());
        let fam = ScanFamily::CliqueGateway {
            gateways: 3,
            outer: Graph::edgeless(5),
        };
        assert!(fam.instance(3).is_err());
        let fam = ScanFamily::CliqueGateway {
            gateways: 3,
            outer: Graph::edgeless(2),
        };
        assert!(fam.instance(10).is_err());
    }

    #[test]
    fn threshold_without_dominating_vertex_fails() {
        // p = 0 gives an edgeless graph
        let fam = ScanFamily::Dominating(DominatingFamily::Threshold { p: 0.0, seed: 1 });
        assert_eq!(fam.instance(5).unwrap_err(), Error::NoDominatingVertex);
    }
}
