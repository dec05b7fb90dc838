use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Graph families the crate can generate.
///
/// Random families draw from a ChaCha8 stream seeded with
/// `ChaCha8Rng::seed_from_u64(seed)`, so a `(family, seed)` pair always
/// yields the same graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete(usize),
    /// Vertex 1 is the centre.
    Star(usize),
    Path(usize),
    /// Falls back to the path for `n < 3`.
    Cycle(usize),
    Edgeless(usize),
    /// Each pair `u < v` is an edge with probability `p`, drawn in
    /// lexicographic pair order.
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
    /// Vertex `s` arrives at step `s`; with probability `p` it is joined to
    /// every earlier vertex, otherwise it stays isolated.
    Threshold {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl Family {
    pub fn n(&self) -> usize {
        match *self {
            Family::Complete(n)
            | Family::Star(n)
            | Family::Path(n)
            | Family::Cycle(n)
            | Family::Edgeless(n)
            | Family::ErdosRenyi { n, .. }
            | Family::Threshold { n, .. } => n,
        }
    }
}

pub fn generate(family: &Family) -> Result<Graph> {
    let n = family.n();
    if n == 0 {
        return Err(Error::InvalidArgument("graph families need n >= 1".into()));
    }
    let mut g = Graph::edgeless(n);
    match *family {
        Family::Complete(_) => {
            for u in 0..n {
                for v in u + 1..n {
                    g.link(u, v);
                }
            }
        }
        Family::Star(_) => {
            for v in 1..n {
                g.link(0, v);
            }
        }
        Family::Path(_) => {
            for v in 1..n {
                g.link(v - 1, v);
            }
        }
        Family::Cycle(_) => {
            for v in 1..n {
                g.link(v - 1, v);
            }
            if n >= 3 {
                g.link(n - 1, 0);
            }
        }
        Family::Edgeless(_) => {}
        Family::ErdosRenyi { p, seed, .. } => {
            check_probability(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        g.link(u, v);
                    }
                }
            }
        }
        Family::Threshold { p, seed, .. } => {
            check_probability(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for v in 0..n {
                if rng.random::<f64>() < p {
                    for u in 0..v {
                        g.link(u, v);
                    }
                }
            }
        }
    }
    Ok(g)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}
