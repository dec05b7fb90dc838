//! Continuous-time quantum walk `U(t) = exp(i t L)` on a graph Laplacian.
//!
//! Two independent evaluation routes are provided:
//!
//! * [`DirectWalk`] diagonalizes the full Laplacian once and sums
//!   `e^{itμ} φ(x) φ(y)` over its eigenpairs. It is the reference oracle.
//! * [`FidWalk`] works from a fully interconnected decomposition: the
//!   amplitude within a block is the block's own nontrivial modes shifted
//!   by `d̃ᵢ` plus a block-constant part from the reduced spectrum, and the
//!   amplitude between blocks only involves the reduced spectrum. The
//!   return probability is split into the five terms of the transition
//!   formula ([`ProbabilityTerms`]).
//!
//! Both routes fix a time first ([`DirectWalk::at`], [`FidWalk::at`]) so
//! the phases are computed once per time point.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::decomposition::FidPartition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{
    block_spectrum, eigh, reduced_spectrum, BlockSpectrum, EigenDecomposition, ReducedSpectrum,
};

/// Entry `(U(t))_{x,y}`.
pub type Amplitude = Complex64;

#[inline]
fn phase(angle: f64) -> Complex64 {
    let (s, c) = angle.sin_cos();
    Complex64::new(c, s)
}

/// Full-spectrum evaluation of the walk.
#[derive(Debug, Clone)]
pub struct DirectWalk {
    eig: EigenDecomposition,
}

impl DirectWalk {
    pub fn new(g: &Graph, tol: f64) -> Result<Self> {
        Ok(Self {
            eig: eigh(&g.laplacian(), tol)?,
        })
    }

    pub fn n(&self) -> usize {
        self.eig.dim()
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn at(&self, t: f64) -> DirectPropagator<'_> {
        let phases = self.eig.values().iter().map(|&mu| phase(t * mu)).collect();
        DirectPropagator {
            walk: self,
            t,
            phases,
        }
    }
}

/// [`DirectWalk`] frozen at one time.
#[derive(Debug, Clone)]
pub struct DirectPropagator<'a> {
    walk: &'a DirectWalk,
    t: f64,
    phases: Vec<Complex64>,
}

impl DirectPropagator<'_> {
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Panics if `x` or `y` is not in `1..=n`.
    pub fn amplitude(&self, x: usize, y: usize) -> Amplitude {
        let (x, y) = (x - 1, y - 1);
        self.walk
            .eig
            .vectors()
            .iter()
            .zip(&self.phases)
            .map(|(v, &ph)| ph * (v[x] * v[y]))
            .sum()
    }

    pub fn probability(&self, x: usize, y: usize) -> f64 {
        self.amplitude(x, y).norm_sqr()
    }

    /// `(U(t))_{x,y}` for every `y`, index `y - 1`.
    pub fn amplitude_row(&self, x: usize) -> Vec<Amplitude> {
        let n = self.walk.n();
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        for (v, &ph) in self.walk.eig.vectors().iter().zip(&self.phases) {
            let c = ph * v[x - 1];
            for (acc, &vy) in row.iter_mut().zip(v) {
                *acc += c * vy;
            }
        }
        row
    }

    pub fn probability_row(&self, x: usize) -> Vec<f64> {
        self.amplitude_row(x).iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Named terms of the transition probability under a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ProbabilityTerms {
    /// `x` and `y` in the same block `block`; the probability is the sum of
    /// the five fields.
    SameBlock {
        block: usize,
        /// Transition probability of the walk on the block's induced
        /// subgraph alone.
        subgraph: f64,
        /// Contribution of the block-constant modes alone.
        tilde: f64,
        /// `-1/nᵢ²`.
        correction_const: f64,
        /// `-(2/nᵢ) Σₗ vₗ(x) vₗ(y) cos(t λₗ)`.
        correction_cos: f64,
        /// `2 Σₗ Σⱼ vₗ(x) vₗ(y) αⱼ(i)² cos(t(λₗ + d̃ᵢ - νⱼ))`.
        correction_cross: f64,
    },
    /// `x` in block `blocks.0`, `y` in block `blocks.1`; only the
    /// block-constant modes contribute.
    CrossBlock { blocks: (usize, usize), tilde: f64 },
}

impl ProbabilityTerms {
    pub fn total(&self) -> f64 {
        match *self {
            ProbabilityTerms::SameBlock {
                subgraph,
                tilde,
                correction_const,
                correction_cos,
                correction_cross,
                ..
            } => subgraph + tilde + correction_const + correction_cos + correction_cross,
            ProbabilityTerms::CrossBlock { tilde, .. } => tilde,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityReport {
    pub x: usize,
    pub y: usize,
    pub t: f64,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
    /// Unclamped; see [`Self::clamped`].
    pub probability: f64,
    pub terms: Option<ProbabilityTerms>,
}

impl ProbabilityReport {
    /// Probability clipped into `[0, 1]` for display.
    pub fn clamped(&self) -> f64 {
        self.probability.clamp(0.0, 1.0)
    }
}

/// Decomposition-based evaluation of the walk.
///
/// Block spectra are computed on first use, so a walk that only ever looks
/// at one block never diagonalizes the others.
#[derive(Debug)]
pub struct FidWalk<'a> {
    graph: &'a Graph,
    partition: &'a FidPartition,
    tol: f64,
    blocks: Vec<OnceLock<BlockSpectrum>>,
    reduced: ReducedSpectrum,
}

impl<'a> FidWalk<'a> {
    /// `partition` must come from `graph`.
    pub fn new(graph: &'a Graph, partition: &'a FidPartition, tol: f64) -> Result<Self> {
        if graph.n() != partition.n() {
            return Err(Error::InvalidArgument(format!(
                "partition covers {} vertices but the graph has {}",
                partition.n(),
                graph.n()
            )));
        }
        Ok(Self {
            graph,
            partition,
            tol,
            blocks: (0..partition.k()).map(|_| OnceLock::new()).collect(),
            reduced: reduced_spectrum(partition, tol)?,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn partition(&self) -> &FidPartition {
        self.partition
    }

    pub fn reduced(&self) -> &ReducedSpectrum {
        &self.reduced
    }

    pub fn block(&self, i: usize) -> Result<&BlockSpectrum> {
        if let Some(s) = self.blocks[i].get() {
            return Ok(s);
        }
        let s = block_spectrum(self.graph, self.partition, i, self.tol)?;
        Ok(self.blocks[i].get_or_init(|| s))
    }

    pub fn at(&self, t: f64) -> FidPropagator<'_> {
        let reduced_phases = self
            .reduced
            .values()
            .iter()
            .map(|&nu| phase(t * nu))
            .collect();
        FidPropagator {
            walk: self,
            t,
            reduced_phases,
            block_phases: (0..self.partition.k()).map(|_| OnceLock::new()).collect(),
        }
    }
}

/// [`FidWalk`] frozen at one time.
#[derive(Debug)]
pub struct FidPropagator<'w> {
    walk: &'w FidWalk<'w>,
    t: f64,
    reduced_phases: Vec<Complex64>,
    block_phases: Vec<OnceLock<Vec<Complex64>>>,
}

/// The two complex sums every same-block quantity is built from.
struct SameBlockSums {
    /// `Σₗ e^{itλₗ} vₗ(x) vₗ(y)`, the block's own nontrivial modes.
    own: Complex64,
    /// `Σⱼ e^{itνⱼ} αⱼ(i)²`.
    constant: Complex64,
    /// `e^{it d̃ᵢ}`.
    shift: Complex64,
    size: f64,
}

impl FidPropagator<'_> {
    pub fn t(&self) -> f64 {
        self.t
    }

    fn phases_for(&self, i: usize) -> Result<&[Complex64]> {
        if let Some(p) = self.block_phases[i].get() {
            return Ok(p);
        }
        let spectrum = self.walk.block(i)?;
        let phases = spectrum
            .mode_values()
            .iter()
            .map(|&l| phase(self.t * l))
            .collect();
        Ok(self.block_phases[i].get_or_init(|| phases))
    }

    fn same_block_sums(&self, i: usize, a: usize, b: usize) -> Result<SameBlockSums> {
        let spectrum = self.walk.block(i)?;
        let own = spectrum.weighted_sum(a, b, self.phases_for(i)?);
        let constant = self.walk.reduced.weighted_sum(i, i, &self.reduced_phases);
        let d_tilde = self.walk.partition.d_tilde(i) as f64;
        Ok(SameBlockSums {
            own,
            constant,
            shift: phase(self.t * d_tilde),
            size: spectrum.size() as f64,
        })
    }

    fn locate(&self, v: usize) -> Result<(usize, usize)> {
        self.walk.graph.check_vertex(v)?;
        let p = self.walk.partition;
        Ok((p.block_of(v), p.position_in_block(v)))
    }

    pub fn amplitude(&self, x: usize, y: usize) -> Result<Amplitude> {
        let (i, a) = self.locate(x)?;
        let (j, b) = self.locate(y)?;
        if i == j {
            let s = self.same_block_sums(i, a, b)?;
            Ok(s.shift * s.own + s.constant)
        } else {
            Ok(self.walk.reduced.weighted_sum(i, j, &self.reduced_phases))
        }
    }

    /// Transition probability with its term breakdown.
    pub fn report(&self, x: usize, y: usize) -> Result<ProbabilityReport> {
        let (i, a) = self.locate(x)?;
        let (j, b) = self.locate(y)?;
        let (amplitude, terms) = if i == j {
            let s = self.same_block_sums(i, a, b)?;
            let n = s.size;
            // |A|² expands to Σₗ aₗ² + 2 Σ_{l<l'} aₗ aₗ' cos(t(λₗ - λₗ'))
            // with aₗ = vₗ(x) vₗ(y), and |B|² likewise over the reduced modes.
            let subgraph = s.own.norm_sqr() + 1.0 / (n * n) + 2.0 / n * s.own.re;
            let tilde = s.constant.norm_sqr();
            let correction_const = -1.0 / (n * n);
            let correction_cos = -2.0 / n * s.own.re;
            let correction_cross = 2.0 * (s.shift * s.own * s.constant.conj()).re;
            let terms = ProbabilityTerms::SameBlock {
                block: i,
                subgraph,
                tilde,
                correction_const,
                correction_cos,
                correction_cross,
            };
            (s.shift * s.own + s.constant, terms)
        } else {
            let amp = self.walk.reduced.weighted_sum(i, j, &self.reduced_phases);
            (
                amp,
                ProbabilityTerms::CrossBlock {
                    blocks: (i, j),
                    tilde: amp.norm_sqr(),
                },
            )
        };
        Ok(ProbabilityReport {
            x,
            y,
            t: self.t,
            amplitude_re: amplitude.re,
            amplitude_im: amplitude.im,
            probability: terms.total(),
            terms: Some(terms),
        })
    }

    pub fn probability(&self, x: usize, y: usize) -> Result<f64> {
        Ok(self.report(x, y)?.probability)
    }

    /// `|(U(t))_{x,y}|²` for every `y`, index `y - 1`.
    pub fn probability_row(&self, x: usize) -> Result<Vec<f64>> {
        self.walk
            .graph
            .vertices()
            .map(|y| Ok(self.amplitude(x, y)?.norm_sqr()))
            .collect()
    }
}

/// `(U(t))_{x,y}` from the full eigendecomposition of `L`.
pub fn amplitude_direct(g: &Graph, x: usize, y: usize, t: f64, tol: f64) -> Result<Amplitude> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    Ok(DirectWalk::new(g, tol)?.at(t).amplitude(x, y))
}

pub fn probability_direct(
    g: &Graph,
    x: usize,
    y: usize,
    t: f64,
    tol: f64,
) -> Result<ProbabilityReport> {
    let amp = amplitude_direct(g, x, y, t, tol)?;
    Ok(ProbabilityReport {
        x,
        y,
        t,
        amplitude_re: amp.re,
        amplitude_im: amp.im,
        probability: amp.norm_sqr(),
        terms: None,
    })
}

pub fn amplitude_fid(
    g: &Graph,
    p: &FidPartition,
    x: usize,
    y: usize,
    t: f64,
    tol: f64,
) -> Result<Amplitude> {
    FidWalk::new(g, p, tol)?.at(t).amplitude(x, y)
}

pub fn probability_fid_terms(
    g: &Graph,
    p: &FidPartition,
    x: usize,
    y: usize,
    t: f64,
    tol: f64,
) -> Result<ProbabilityReport> {
    FidWalk::new(g, p, tol)?.at(t).report(x, y)
}

/// Return probability from a dominating vertex of an `n`-vertex graph:
/// `1 - (2/n)(1 - 1/n)(1 - cos nt)`.
pub fn dominating_return_probability(n: usize, t: f64) -> f64 {
    let n = n as f64;
    1.0 - 2.0 / n * (1.0 - 1.0 / n) * (1.0 - (n * t).cos())
}

/// Probability of moving from a dominating vertex to any other vertex:
/// `(2/n²)(1 - cos nt)`.
pub fn dominating_cross_probability(n: usize, t: f64) -> f64 {
    let n = n as f64;
    2.0 / (n * n) * (1.0 - (n * t).cos())
}

/// Distance between the return probability on the whole graph and on the
/// subgraph induced by one block, against its `4/nᵢ` bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubgraphGap {
    pub gap: f64,
    pub bound: f64,
}

impl SubgraphGap {
    pub fn holds(&self, tol: f64) -> bool {
        self.gap <= self.bound + tol
    }
}

/// Compares return probabilities on `g` and on one block's induced
/// subgraph, each evaluated by its own full diagonalization.
#[derive(Debug)]
pub struct SubgraphGapProbe<'a> {
    whole: &'a DirectWalk,
    block_walk: DirectWalk,
    partition: &'a FidPartition,
    block: usize,
}

impl<'a> SubgraphGapProbe<'a> {
    pub fn new(
        whole: &'a DirectWalk,
        g: &Graph,
        partition: &'a FidPartition,
        block: usize,
        tol: f64,
    ) -> Result<Self> {
        if block >= partition.k() {
            return Err(Error::InvalidArgument(format!("no block {block}")));
        }
        let sub = g.induced_subgraph(partition.block(block))?;
        Ok(Self {
            whole,
            block_walk: DirectWalk::new(&sub, tol)?,
            partition,
            block,
        })
    }

    pub fn gap(&self, x: usize, t: f64) -> Result<SubgraphGap> {
        if x == 0 || x > self.partition.n() || self.partition.block_of(x) != self.block {
            return Err(Error::InvalidArgument(format!(
                "vertex {x} is not in block {}",
                self.block + 1
            )));
        }
        let local = self.partition.position_in_block(x) + 1;
        let on_graph = self.whole.at(t).probability(x, x);
        let on_block = self.block_walk.at(t).probability(local, local);
        Ok(SubgraphGap {
            gap: (on_graph - on_block).abs(),
            bound: 4.0 / self.partition.size(self.block) as f64,
        })
    }
}

/// Return-probability gap between `g` and block `block` walked alone,
/// starting from `x`, with the bound `4/nᵢ`.
pub fn subgraph_gap(
    g: &Graph,
    p: &FidPartition,
    block: usize,
    x: usize,
    t: f64,
    tol: f64,
) -> Result<SubgraphGap> {
    let whole = DirectWalk::new(g, tol)?;
    SubgraphGapProbe::new(&whole, g, p, block, tol)?.gap(x, t)
}
