//! Graph Laplacian, its full spectrum by cyclic Jacobi rotations, and the
//! Fiedler variational quotient.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the dense solver accepts.
pub const MAX_DENSE_ORDER: usize = 2000;
const MAX_SWEEPS: usize = 100;
const CONVERGED: f64 = 1e-12;
const ACCEPTABLE: f64 = 1e-8;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let x = self.get(i, j);
                    s += x * x;
                }
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `L = D − A`.
pub type LaplacianMatrix = SymmetricMatrix;

pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let mut l = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        l.data[v * g.n() + v] = g.degree(v) as f64;
    }
    for &(u, v) in g.edges() {
        l.set(u, v, -1.0);
    }
    l
}

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl Spectrum {
    /// Algebraic connectivity.
    pub fn lambda2(&self) -> f64 {
        self.eigenvalues[1]
    }

    pub fn fiedler_vector(&self) -> &[f64] {
        &self.eigenvectors[1]
    }
}

/// Full eigendecomposition of a Laplacian (or any symmetric matrix).
///
/// Cyclic Jacobi: sweep all `(p, q)` pairs in row order, annihilating each
/// off-diagonal entry with a plane rotation. Stops once the off-diagonal
/// Frobenius norm falls below `1e-12 · ‖A‖_F`; after 100 sweeps, anything
/// above `1e-8 · ‖A‖_F` is a [`Error::Convergence`].
pub fn eigen_lambda2(l: &LaplacianMatrix) -> Result<Spectrum> {
    let n = l.order();
    if !(2..=MAX_DENSE_ORDER).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "dense eigensolver needs 2 <= n <= {MAX_DENSE_ORDER}, got {n}"
        )));
    }
    let mut a = l.clone();
    let mut v = SymmetricMatrix::zeros(n);
    for i in 0..n {
        v.data[i * n + i] = 1.0;
    }
    let norm = a.frobenius_norm();
    let mut sweeps = 0;
    let mut off = a.off_diagonal_norm();
    while off > CONVERGED * norm && sweeps < MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = a.off_diagonal_norm();
    }
    if off > ACCEPTABLE * norm {
        return Err(Error::Convergence {
            sweeps,
            off_norm: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let eigenvalues = order.iter().map(|&i| a.get(i, i)).collect();
    // columns of v are the eigenvectors
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v.data[i * n + k]).collect())
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

/// Zeroes `a[p][q]` by the rotation `Jᵀ A J` and accumulates `V J`.
fn rotate(a: &mut SymmetricMatrix, v: &mut SymmetricMatrix, p: usize, q: usize) {
    let n = a.n;
    let apq = a.get(p, q);
    if apq == 0.0 {
        return;
    }
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    a.data[p * n + p] = app - t * apq;
    a.data[q * n + q] = aqq + t * apq;
    a.set(p, q, 0.0);

    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = c * vkp - s * vkq;
        v.data[k * n + q] = s * vkp + c * vkq;
    }
}

/// `2n · Σ_{uv ∈ E} (x_u − x_v)² / Σ_u Σ_v (x_u − x_v)²`, whose minimum
/// over non-constant `x` is λ₂.
pub fn fiedler_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "vector has length {}, graph has {} vertices",
            x.len(),
            g.n()
        )));
    }
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    if hi - lo <= 1e-12 {
        return Err(Error::ConstantVector);
    }
    let numerator: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| (x[u] - x[v]).powi(2))
        .sum();
    let mut denominator = 0.0;
    for &xu in x {
        for &xv in x {
            denominator += (xu - xv).powi(2);
        }
    }
    Ok(2.0 * g.n() as f64 * numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};
    use std::f64::consts::PI;

    fn lambda2(f: GraphFamily) -> f64 {
        eigen_lambda2(&laplacian(&generate(f).unwrap()))
            .unwrap()
            .lambda2()
    }

    #[test]
    fn laplacian_examples() {
        let k2 = laplacian(&generate(GraphFamily::Complete { n: 2 }).unwrap());
        assert_eq!(k2.row(0), &[1.0, -1.0]);
        assert_eq!(k2.row(1), &[-1.0, 1.0]);
        let p3 = laplacian(&generate(GraphFamily::Path { n: 3 }).unwrap());
        assert_eq!(p3.row(0), &[1.0, -1.0, 0.0]);
        assert_eq!(p3.row(1), &[-1.0, 2.0, -1.0]);
        assert_eq!(p3.row(2), &[0.0, -1.0, 1.0]);
        let s4 = laplacian(&generate(GraphFamily::Star { n: 4 }).unwrap());
        let diag: Vec<f64> = (0..4).map(|i| s4.get(i, i)).collect();
        assert_eq!(diag, vec![3.0, 1.0, 1.0, 1.0]);
        for i in 0..4 {
            assert_eq!(s4.row(i).iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn known_lambda2() {
        assert!((lambda2(GraphFamily::Complete { n: 5 }) - 5.0).abs() < 1e-10);
        let expect = 2.0 * (1.0 - (PI / 4.0).cos());
        assert!((lambda2(GraphFamily::Path { n: 4 }) - expect).abs() < 1e-10);
        assert!((lambda2(GraphFamily::Petersen) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn spectrum_sanity() {
        let g = generate(GraphFamily::ErdosRenyi {
            n: 25,
            p: 0.2,
            seed: 11,
        })
        .unwrap();
        let l = laplacian(&g);
        let s = eigen_lambda2(&l).unwrap();
        assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        assert!(s.eigenvalues[0].abs() < 1e-8);
        let sum: f64 = s.eigenvalues.iter().sum();
        assert!((sum - 2.0 * g.edge_count() as f64).abs() < 1e-6 * sum);
        let f = s.fiedler_vector();
        assert!(f.iter().sum::<f64>().abs() < 1e-8);
        let lf = l.mul_vec(f);
        let resid: f64 = lf
            .iter()
            .zip(f)
            .map(|(a, b)| (a - s.lambda2() * b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(resid <= 1e-7 * l.frobenius_norm());
    }

    #[test]
    fn quotient_examples() {
        let k2 = generate(GraphFamily::Complete { n: 2 }).unwrap();
        assert_eq!(fiedler_quotient(&k2, &[1.0, -1.0]).unwrap(), 2.0);
        let s3 = generate(GraphFamily::Star { n: 3 }).unwrap();
        assert_eq!(fiedler_quotient(&s3, &[0.0, 1.0, -1.0]).unwrap(), 1.0);
        assert_eq!(
            fiedler_quotient(&s3, &[2.0, 2.0, 2.0]),
            Err(Error::ConstantVector)
        );
    }

    #[test]
    fn quotient_at_fiedler_vector() {
        let g = generate(GraphFamily::Cycle { n: 8 }).unwrap();
        let s = eigen_lambda2(&laplacian(&g)).unwrap();
        let q = fiedler_quotient(&g, s.fiedler_vector()).unwrap();
        assert!((q - s.lambda2()).abs() < 1e-8);
    }

    #[test]
    fn rejects_oversized() {
        assert!(eigen_lambda2(&SymmetricMatrix::zeros(1)).is_err());
    }
}
