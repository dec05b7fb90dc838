use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

const MAX_SWEEPS: usize = 60;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Unit eigenvector for `values()[j]`.
    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j]
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.dim();
        let mut m = SymmetricMatrix::zeros(n);
        for r in 0..n {
            for c in r..n {
                let s: f64 = self
                    .values
                    .iter()
                    .zip(&self.vectors)
                    .map(|(l, v)| l * v[r] * v[c])
                    .sum();
                m.set(r, c, s);
            }
        }
        m
    }

    /// Largest `|A v - λ v|` component over all pairs.
    pub fn max_residual(&self, a: &SymmetricMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&l, v)| {
                a.mul_vec(v)
                    .iter()
                    .zip(v)
                    .map(|(av, x)| (av - l * x).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|vᵢ·vⱼ - δᵢⱼ|`.
    pub fn max_orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in self.vectors.iter().enumerate() {
            for (j, vj) in self.vectors.iter().enumerate().skip(i) {
                let dot: f64 = vi.iter().zip(vj).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over all off-diagonal positions in row order, annihilating each
/// with a plane rotation, until every off-diagonal entry is at most
/// `tol * ‖a‖_F`. Ties in the sorted output keep their original order.
pub fn eigh(a: &SymmetricMatrix, tol: f64) -> Result<EigenDecomposition> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = a.dim();
    if let Some(pos) = a.data().iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            row: pos / n,
            col: pos % n,
        });
    }

    let mut m = a.data().to_vec();
    // Row p of `vt` is the p-th eigenvector.
    let mut vt = vec![0.0; n * n];
    for p in 0..n {
        vt[p * n + p] = 1.0;
    }
    let threshold = tol * a.frobenius_norm();

    let sweep = |m: &mut [f64], vt: &mut [f64]| {
        for p in 0..n {
            for q in p + 1..n {
                rotate(m, vt, n, p, q);
            }
        }
    };
    let mut sweeps = 0;
    while max_off_diagonal(&m, n) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweep(&mut m, &mut vt);
        sweeps += 1;
    }
    // Convergence is quadratic, so one more sweep takes the leftover
    // off-diagonal mass (and the eigenvector error it implies) to roundoff.
    if sweeps > 0 {
        sweep(&mut m, &mut vt);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].total_cmp(&m[y * n + y]));
    let values = order.iter().map(|&j| m[j * n + j]).collect();
    let vectors = order
        .iter()
        .map(|&j| vt[j * n..(j + 1) * n].to_vec())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

fn max_off_diagonal(m: &[f64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            worst = worst.max(m[p * n + q].abs());
        }
    }
    worst
}

fn rotate(m: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = m[p * n + p];
    let aqq = m[q * n + q];
    let g = 100.0 * apq.abs();
    if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        m[p * n + q] = 0.0;
        m[q * n + p] = 0.0;
        return;
    }

    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = m[p * n + r];
        let arq = m[q * n + r];
        let new_p = c * arp - s * arq;
        let new_q = s * arp + c * arq;
        m[p * n + r] = new_p;
        m[r * n + p] = new_p;
        m[q * n + r] = new_q;
        m[r * n + q] = new_q;
    }

    let (head, tail) = vt.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}
