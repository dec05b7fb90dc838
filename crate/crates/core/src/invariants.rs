//! Numerical checks of the identities that hold for any valid
//! decomposition, plus agreement between the two walk evaluations.

use serde::Serialize;

use crate::decomposition::{block_diagonal_laplacian, tilde_matrix, FidPartition};
use crate::error::Result;
use crate::graph::Graph;
use crate::walk::{DirectWalk, FidWalk, SubgraphGapProbe};
use crate::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation measure seen (an error magnitude, or for bounds the
    /// largest excess over the bound).
    pub worst: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tracks the worst value of one measure together with where it happened.
struct Worst {
    name: &'static str,
    tolerance: f64,
    value: f64,
    witness: Option<String>,
}

impl Worst {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            value: f64::NEG_INFINITY,
            witness: None,
        }
    }

    fn observe(&mut self, value: f64, witness: impl FnOnce() -> String) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> InvariantCheck {
        let worst = if self.value == f64::NEG_INFINITY {
            0.0
        } else {
            self.value
        };
        let passed = worst <= self.tolerance;
        InvariantCheck {
            name: self.name,
            passed,
            worst,
            tolerance: self.tolerance,
            witness: if passed { None } else { self.witness },
        }
    }
}

/// Runs every check on `(g, p)`, sampling the walk at `times`.
///
/// Checks, by name:
/// * `decomposition_identity`: `L = diag(L₁…L_k) + L̃` entry for entry.
/// * `block_completeness`: `Σₗ vₗ(x)vₗ(y) + 1/nᵢ = δ_xy` within each block.
/// * `completeness`: `Σₗ vₗ(x)vₗ(y) + Σⱼ αⱼ(i)² = δ_xy`.
/// * `alpha_square_sum`: `Σⱼ αⱼ(i)² = 1/nᵢ`.
/// * `alpha_uniform_bound`: `αⱼ(i)² ≤ 1/nᵢ`.
/// * `block_eigenvectors`: zero-padded block eigenvectors satisfy
///   `L w = (λ + d̃ᵢ) w`.
/// * `reduced_eigenpairs`: `L̄ αⱼ = νⱼ αⱼ` and weighted orthonormality.
/// * `oracle_equivalence`, `unitarity`, `symmetry`: walk probabilities.
/// * `subgraph_gap_bound`: `|P_G(x,x) - P_block(x,x)| ≤ 4/nᵢ`.
pub fn run_invariants(
    g: &Graph,
    p: &FidPartition,
    times: &[f64],
    tol: &Tolerances,
) -> Result<InvariantReport> {
    let mut checks = Vec::new();

    let laplacian = g.laplacian();
    let split = &block_diagonal_laplacian(g, p) + &tilde_matrix(p);
    let mut identity = Worst::new("decomposition_identity", 0.0);
    for r in 0..g.n() {
        for c in 0..g.n() {
            let diff = (laplacian.get(r, c) - split.get(r, c)).abs();
            identity.observe(diff, || format!("entry ({}, {})", r + 1, c + 1));
        }
    }
    checks.push(identity.finish());

    let fid = FidWalk::new(g, p, tol.eigen)?;
    let reduced = fid.reduced();
    let mut block_complete = Worst::new("block_completeness", tol.exact);
    let mut complete = Worst::new("completeness", tol.exact);
    let mut square_sum = Worst::new("alpha_square_sum", tol.exact);
    let mut uniform = Worst::new("alpha_uniform_bound", tol.exact);
    let mut block_eig = Worst::new("block_eigenvectors", tol.exact);
    for i in 0..p.k() {
        let spectrum = fid.block(i)?;
        let size = p.size(i) as f64;
        let alpha_sq: Vec<f64> = (0..reduced.k())
            .map(|j| reduced.alpha(j)[i].powi(2))
            .collect();
        let alpha_sum: f64 = alpha_sq.iter().sum();
        square_sum.observe((alpha_sum - 1.0 / size).abs(), || {
            format!("block {}", i + 1)
        });
        for (j, a) in alpha_sq.iter().enumerate() {
            uniform.observe(a - 1.0 / size, || {
                format!("block {}, mode {}", i + 1, j + 1)
            });
        }

        let values = spectrum.eigenvalues();
        let vectors = spectrum.eigenvectors();
        let block = p.block(i);
        for a in 0..block.len() {
            for b in 0..block.len() {
                let proj: f64 = vectors.iter().map(|v| v[a] * v[b]).sum();
                let delta = if a == b { 1.0 } else { 0.0 };
                let at = || format!("vertices ({}, {})", block[a], block[b]);
                block_complete.observe((proj + 1.0 / size - delta).abs(), at);
                complete.observe((proj + alpha_sum - delta).abs(), at);
            }
        }
        let shift = p.d_tilde(i) as f64;
        for (l, (lam, v)) in values.iter().zip(&vectors).enumerate() {
            let mut padded = vec![0.0; g.n()];
            for (&vertex, &x) in block.iter().zip(v) {
                padded[vertex - 1] = x;
            }
            let lw = laplacian.mul_vec(&padded);
            let residual = lw
                .iter()
                .zip(&padded)
                .map(|(a, x)| (a - (lam + shift) * x).abs())
                .fold(0.0, f64::max);
            block_eig.observe(residual, || format!("block {}, mode {}", i + 1, l + 1));
        }
    }
    checks.extend([
        block_complete.finish(),
        complete.finish(),
        square_sum.finish(),
        uniform.finish(),
        block_eig.finish(),
    ]);

    let mut reduced_check = Worst::new("reduced_eigenpairs", tol.exact);
    reduced_check.observe(reduced.max_residual(p), || "eigen residual".into());
    reduced_check.observe(reduced.max_weighted_orthonormality_error(), || {
        "weighted orthonormality".into()
    });
    checks.push(reduced_check.finish());

    let direct = DirectWalk::new(g, tol.eigen)?;
    let probes = (0..p.k())
        .map(|i| SubgraphGapProbe::new(&direct, g, p, i, tol.eigen))
        .collect::<Result<Vec<_>>>()?;
    let mut equivalence = Worst::new("oracle_equivalence", tol.equivalence);
    let mut unitarity = Worst::new("unitarity", tol.equivalence);
    let mut symmetry = Worst::new("symmetry", tol.equivalence);
    let mut gap_bound = Worst::new("subgraph_gap_bound", tol.equivalence);
    for &t in times {
        let d = direct.at(t);
        let f = fid.at(t);
        let rows: Vec<Vec<f64>> = g.vertices().map(|x| d.probability_row(x)).collect();
        for x in g.vertices() {
            let fid_row = f.probability_row(x)?;
            for y in g.vertices() {
                let r = f.report(x, y)?;
                let err = (r.probability - rows[x - 1][y - 1])
                    .abs()
                    .max((fid_row[y - 1] - rows[x - 1][y - 1]).abs());
                equivalence.observe(err, || format!("x={x}, y={y}, t={t}"));
                let sym = (rows[x - 1][y - 1] - rows[y - 1][x - 1])
                    .abs()
                    .max((fid_row[y - 1] - f.probability(y, x)?).abs());
                symmetry.observe(sym, || format!("x={x}, y={y}, t={t}"));
            }
            let total_direct: f64 = rows[x - 1].iter().sum();
            let total_fid: f64 = fid_row.iter().sum();
            unitarity.observe(
                (total_direct - 1.0).abs().max((total_fid - 1.0).abs()),
                || format!("x={x}, t={t}"),
            );
            let gap = probes[p.block_of(x)].gap(x, t)?;
            gap_bound.observe(gap.gap - gap.bound, || format!("x={x}, t={t}"));
        }
    }
    checks.extend([
        equivalence.finish(),
        unitarity.finish(),
        symmetry.finish(),
        gap_bound.finish(),
    ]);

    Ok(InvariantReport { checks })
}
