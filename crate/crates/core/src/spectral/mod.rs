//! Eigen-structure of a graph seen through a fully interconnected
//! decomposition.
//!
//! Every block contributes the eigenvectors of its own Laplacian that are
//! orthogonal to the constant vector ([`BlockSpectrum`]); the remaining `k`
//! eigenvectors of the full Laplacian are constant on each block and come
//! from the k×k reduced matrix ([`ReducedSpectrum`]).

mod jacobi;

pub use jacobi::{eigh, EigenDecomposition};

use crate::decomposition::{reduced_matrix, FidPartition};
use crate::error::Result;
use crate::graph::Graph;
use crate::matrix::SymmetricMatrix;

/// Nontrivial modes of one block Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockModes {
    /// Explicit eigenpairs, each vector orthogonal to the constant vector.
    Explicit {
        values: Vec<f64>,
        vectors: Vec<Vec<f64>>,
    },
    /// One eigenvalue on the whole complement of the constant vector. This
    /// is the spectrum of a complete block (`value = size`) or an edgeless
    /// block (`value = 0`); no basis is stored.
    Uniform { value: f64 },
}

/// Spectrum of the Laplacian of the subgraph induced by one block, with the
/// constant eigenvector `𝟏/√nᵢ` split off.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    block: usize,
    size: usize,
    modes: BlockModes,
}

impl BlockSpectrum {
    pub fn block(&self) -> usize {
        self.block
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modes(&self) -> &BlockModes {
        &self.modes
    }

    /// Distinct phase slots: one per explicit pair, or a single slot for a
    /// uniform block.
    pub fn mode_values(&self) -> &[f64] {
        match &self.modes {
            BlockModes::Explicit { values, .. } => values,
            BlockModes::Uniform { value } => std::slice::from_ref(value),
        }
    }

    /// All `nᵢ - 1` nontrivial eigenvalues, with multiplicity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.modes {
            BlockModes::Explicit { values, .. } => values.clone(),
            BlockModes::Uniform { value } => vec![*value; self.size.saturating_sub(1)],
        }
    }

    /// Explicit orthonormal eigenvectors. Uniform blocks are expanded in the
    /// Helmert basis.
    pub fn eigenvectors(&self) -> Vec<Vec<f64>> {
        match &self.modes {
            BlockModes::Explicit { vectors, .. } => vectors.clone(),
            BlockModes::Uniform { .. } => helmert_basis(self.size),
        }
    }

    /// `Σₗ wₗ vₗ(a) vₗ(b)` over nontrivial modes, for block positions `a`,
    /// `b`. `weights` is indexed like [`Self::mode_values`].
    pub fn weighted_sum<T>(&self, a: usize, b: usize, weights: &[T]) -> T
    where
        T: Copy + std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
    {
        match &self.modes {
            BlockModes::Explicit { vectors, .. } => vectors
                .iter()
                .zip(weights)
                .map(|(v, &w)| w * (v[a] * v[b]))
                .sum(),
            BlockModes::Uniform { .. } => {
                let delta = if a == b { 1.0 } else { 0.0 };
                weights[0] * (delta - 1.0 / self.size as f64)
            }
        }
    }

    /// `Σₗ vₗ(a) vₗ(b)`, which equals `δ_ab - 1/nᵢ` for a complete basis.
    pub fn projector(&self, a: usize, b: usize) -> f64 {
        let ones = vec![1.0; self.mode_values().len()];
        self.weighted_sum(a, b, &ones)
    }
}

/// Orthonormal basis of `𝟏⊥` in `ℝᵐ`: vector `l` (1-based) is
/// `(1, …, 1, -l, 0, …, 0) / √(l(l+1))` with `l` leading ones.
pub fn helmert_basis(m: usize) -> Vec<Vec<f64>> {
    (1..m)
        .map(|l| {
            let scale = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut v = vec![0.0; m];
            v[..l].fill(scale);
            v[l] = -(l as f64) * scale;
            v
        })
        .collect()
}

/// Nontrivial spectrum of block `i`.
///
/// Complete and edgeless blocks are recognised and returned in uniform form
/// without running the eigensolver, which is what makes blocks with many
/// thousands of vertices usable. Otherwise the block Laplacian is
/// diagonalized; when the block is disconnected its zero eigenspace is
/// rotated so that the constant vector is one of its basis vectors.
pub fn block_spectrum(g: &Graph, p: &FidPartition, i: usize, tol: f64) -> Result<BlockSpectrum> {
    let vertices = p.block(i);
    let size = vertices.len();
    let members: Vec<usize> = vertices.iter().map(|v| v - 1).collect();
    let mask = g.mask_of(&members);
    let twice_edges: usize = members.iter().map(|&u| g.neighbors_in(u, &mask)).sum();

    let modes = if twice_edges == 0 {
        BlockModes::Uniform { value: 0.0 }
    } else if twice_edges == size * (size - 1) {
        BlockModes::Uniform { value: size as f64 }
    } else {
        let sub = g.induced_subgraph(vertices)?;
        explicit_modes(&sub, tol)?
    };
    Ok(BlockSpectrum {
        block: i,
        size,
        modes,
    })
}

fn explicit_modes(sub: &Graph, tol: f64) -> Result<BlockModes> {
    let size = sub.n();
    let eig = eigh(&sub.laplacian(), tol)?;
    let components = sub.component_count();

    let mut values = Vec::with_capacity(size - 1);
    let mut vectors = Vec::with_capacity(size - 1);

    // The smallest `components` eigenvalues are exactly zero in exact
    // arithmetic. Rotate that space so 𝟏/√m is one basis vector and keep the
    // orthogonal complement.
    let unit = 1.0 / (size as f64).sqrt();
    let projected: Vec<Vec<f64>> = eig.vectors()[..components]
        .iter()
        .map(|z| {
            let along: f64 = z.iter().sum::<f64>() * unit;
            z.iter().map(|x| x - along * unit).collect()
        })
        .collect();
    if components > 1 {
        let mut gram = SymmetricMatrix::zeros(components);
        for a in 0..components {
            for b in a..components {
                let dot = projected[a]
                    .iter()
                    .zip(&projected[b])
                    .map(|(x, y)| x * y)
                    .sum();
                gram.set(a, b, dot);
            }
        }
        let ge = eigh(&gram, tol)?;
        // Largest `components - 1` directions span the projected space.
        for j in 1..components {
            let weight = ge.values()[j].sqrt();
            let coeffs = ge.vector(j);
            let mut v = vec![0.0; size];
            for (c, z) in coeffs.iter().zip(&projected) {
                for (acc, x) in v.iter_mut().zip(z) {
                    *acc += c * x / weight;
                }
            }
            values.push(0.0);
            vectors.push(v);
        }
    }
    for j in components..size {
        values.push(eig.values()[j]);
        vectors.push(eig.vector(j).to_vec());
    }
    Ok(BlockModes::Explicit { values, vectors })
}

/// Eigenpairs `(νⱼ, αⱼ)` of the reduced matrix, with each `αⱼ` scaled so
/// that `Σₗ nₗ αⱼ(l)² = 1`. Under that scaling the block-constant vectors
/// built from `αⱼ` are already unit vectors of ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSpectrum {
    sizes: Vec<usize>,
    values: Vec<f64>,
    alphas: Vec<Vec<f64>>,
}

impl ReducedSpectrum {
    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// `νⱼ`, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `αⱼ`, indexed by block.
    pub fn alpha(&self, j: usize) -> &[f64] {
        &self.alphas[j]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `Σⱼ wⱼ αⱼ(a) αⱼ(b)` for blocks `a`, `b`; `weights` indexed like
    /// [`Self::values`].
    pub fn weighted_sum<T>(&self, a: usize, b: usize, weights: &[T]) -> T
    where
        T: Copy + std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
    {
        self.alphas
            .iter()
            .zip(weights)
            .map(|(al, &w)| w * (al[a] * al[b]))
            .sum()
    }

    /// Largest component of `L̄ αⱼ - νⱼ αⱼ` over all pairs.
    pub fn max_residual(&self, p: &FidPartition) -> f64 {
        let lbar = reduced_matrix(p);
        self.values
            .iter()
            .zip(&self.alphas)
            .map(|(&nu, al)| {
                lbar.mul_vec(al)
                    .iter()
                    .zip(al)
                    .map(|(x, a)| (x - nu * a).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|Σₗ nₗ αⱼ(l) αⱼ'(l) - δⱼⱼ'|`.
    pub fn max_weighted_orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, a) in self.alphas.iter().enumerate() {
            for (jj, b) in self.alphas.iter().enumerate().skip(j) {
                let dot: f64 = self
                    .sizes
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(&n, (x, y))| n as f64 * x * y)
                    .sum();
                let target = if j == jj { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Diagonalizes the reduced matrix through its symmetrization
/// `S = D^{1/2} L̄ D^{-1/2}`, `D = diag(n₁, …, n_k)`, then maps the
/// orthonormal eigenvectors back with `αⱼ = D^{-1/2} uⱼ`.
pub fn reduced_spectrum(p: &FidPartition, tol: f64) -> Result<ReducedSpectrum> {
    let k = p.k();
    let sizes = p.sizes();
    let mut s = SymmetricMatrix::zeros(k);
    for i in 0..k {
        s.set(i, i, p.d_tilde(i) as f64);
        for j in i + 1..k {
            if p.is_adjacent(i, j) {
                s.set(i, j, -((sizes[i] * sizes[j]) as f64).sqrt());
            }
        }
    }
    let eig = eigh(&s, tol)?;
    let alphas = eig
        .vectors()
        .iter()
        .map(|u| {
            u.iter()
                .zip(&sizes)
                .map(|(x, &n)| x / (n as f64).sqrt())
                .collect()
        })
        .collect();
    Ok(ReducedSpectrum {
        sizes,
        values: eig.values().to_vec(),
        alphas,
    })
}
