//! Dense complex matrix kernel: arithmetic, Kronecker products, a cyclic
//! Jacobi eigensolver for Hermitian matrices, and spectral matrix functions.
//!
//! Everything here is sized for small registers (dimension at most
//! [`MAX_DIM`]); the algorithms are plain O(dim^3) with no attempt at
//! cache blocking or sparsity.

use num_complex::Complex64;

use crate::Error;

/// Hard cap on matrix dimension. The largest register in scope is a system
/// qubit plus four ancillas (dim 32); 64 leaves headroom.
pub const MAX_DIM: usize = 64;

/// Jacobi rotation threshold: off-diagonal entries below this are left alone.
const JACOBI_THRESHOLD: f64 = 1e-14;
/// Maximum number of Jacobi sweeps before giving up.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dimension out of range: {dim}");
        ComplexMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖A − A†‖_F, the Hermiticity defect.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }
}

/// Kronecker product. The left factor occupies the most significant index
/// block of the result.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, Error> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    if n > MAX_DIM {
        return Err(Error::Capacity { requested: n, cap: MAX_DIM });
    }
    let mut out = ComplexMatrix::zeros(n);
    for ia in 0..na {
        for ja in 0..na {
            let aij = a[(ia, ja)];
            for ib in 0..nb {
                for jb in 0..nb {
                    out[(ia * nb + ib, ja * nb + jb)] = aij * b[(ib, jb)];
                }
            }
        }
    }
    Ok(out)
}

/// Result of a Hermitian eigendecomposition: `A = V diag(λ) V†` with
/// eigenvalues ascending and `V` unitary (columns are eigenvectors).
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenDecomposition, Error> {
    let n = a.dim();
    let defect = a.hermiticity_defect();
    if defect > 1e-10 * n as f64 {
        return Err(Error::NotHermitian { defect });
    }

    let mut m = a.clone();
    // Symmetrize away round-off before iterating.
    for i in 0..n {
        for j in 0..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
        }
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(1.0);
    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut rotations = 0usize;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= JACOBI_THRESHOLD * scale {
                    continue;
                }
                rotations += 1;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // Phase factor that makes the (p,q) entry real positive,
                // then a real Jacobi rotation on the phased pair.
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotation R restricted to (p,q):
                //   R[p,p] = c              R[p,q] = s
                //   R[q,p] = -s*conj(phase) R[q,q] = c*conj(phase)
                let rpp = Complex64::new(c, 0.0);
                let rpq = Complex64::new(s, 0.0);
                let rqp = -phase.conj() * s;
                let rqq = phase.conj() * c;

                // A <- R† A R: columns first, then rows.
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * rpp + akq * rqp;
                    m[(k, q)] = akp * rpq + akq * rqq;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = rpp.conj() * apk + rqp.conj() * aqk;
                    m[(q, k)] = rpq.conj() * apk + rqq.conj() * aqk;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                // V <- V R
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * rpp + vkq * rqp;
                    v[(k, q)] = vkp * rpq + vkq * rqq;
                }
            }
        }
        // a sweep with no rotations means every pivot is below threshold
        if rotations == 0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

impl EigenDecomposition {
    /// Rebuild `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.dim();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * Complex64::new(self.eigenvalues[k], 0.0) * v[(j, k)].conj())
                .sum()
        })
    }
}

/// Default clip below which eigenvalues are treated as exactly zero inside
/// spectral functions. Thermal states in scope are full-rank; the clip only
/// absorbs round-off.
pub const ZERO_CLIP: f64 = 1e-12;

/// Spectral function of a Hermitian matrix: `V diag(f(λ)) V†`. Eigenvalues
/// with |λ| < `zero_clip` are passed to `f` as exactly 0; a non-finite `f`
/// value is a domain error.
pub fn matrix_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    zero_clip: f64,
) -> Result<ComplexMatrix, Error> {
    let eig = hermitian_eig(a)?;
    let n = a.dim();
    let v = &eig.eigenvectors;
    let mut fvals = Vec::with_capacity(n);
    for &lam in &eig.eigenvalues {
        let x = if lam.abs() < zero_clip { 0.0 } else { lam };
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Domain { eigenvalue: x });
        }
        fvals.push(fx);
    }
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * Complex64::new(fvals[k], 0.0) * v[(j, k)].conj()).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn random_hermitian(dim: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..dim {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = kron(&i2, &i2).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_z_identity() {
        // sigma_z = diag(-1, +1) in ordered basis {|0>, |1>}
        let sz = ComplexMatrix::diag(&[-1.0, 1.0]);
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&sz, &i2).unwrap();
        let expect = ComplexMatrix::diag(&[-1.0, -1.0, 1.0, 1.0]);
        assert!(k.sub(&expect).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn kron_trace_multiplicative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_hermitian(2, &mut rng);
            let b = random_hermitian(2, &mut rng);
            let k = kron(&a, &b).unwrap();
            let expect = a.trace() * b.trace();
            assert!((k.trace() - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn kron_capacity_error() {
        let a = ComplexMatrix::identity(16);
        let b = ComplexMatrix::identity(8);
        assert!(matches!(kron(&a, &b), Err(Error::Capacity { .. })));
    }

    #[test]
    fn eig_pauli_z() {
        let sz = ComplexMatrix::diag(&[-1.0, 1.0]);
        let eig = hermitian_eig(&sz).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_identity() {
        let eig = hermitian_eig(&ComplexMatrix::identity(4)).unwrap();
        for lam in eig.eigenvalues {
            assert!((lam - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_reconstruction_random() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for &dim in &[2usize, 4, 8, 32] {
            for _ in 0..(if dim == 32 { 5 } else { 30 }) {
                let a = random_hermitian(dim, &mut rng);
                let eig = hermitian_eig(&a).unwrap();
                let resid = eig.reconstruct().sub(&a).unwrap().frobenius_norm();
                assert!(resid <= 1e-11 * dim as f64, "dim {dim}: residual {resid}");
                let v = &eig.eigenvectors;
                let gram = v.dagger().mul(v).unwrap();
                let ortho =
                    gram.sub(&ComplexMatrix::identity(dim)).unwrap().frobenius_norm();
                assert!(ortho <= 1e-11 * dim as f64, "dim {dim}: gram defect {ortho}");
                // ascending
                for w in eig.eigenvalues.windows(2) {
                    assert!(w[0] <= w[1]);
                }
            }
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn matrix_function_ln_identity() {
        let out = matrix_function(&ComplexMatrix::identity(2), f64::ln, ZERO_CLIP).unwrap();
        assert!(out.frobenius_norm() < 1e-14);
    }

    #[test]
    fn matrix_function_sqrt_diag() {
        let out = matrix_function(&ComplexMatrix::diag(&[4.0, 9.0]), f64::sqrt, ZERO_CLIP).unwrap();
        let expect = ComplexMatrix::diag(&[2.0, 3.0]);
        assert!(out.sub(&expect).unwrap().frobenius_norm() < 1e-13);
    }

    #[test]
    fn matrix_function_identity_map() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(8, &mut rng);
        let out = matrix_function(&a, |x| x, ZERO_CLIP).unwrap();
        assert!(out.sub(&a).unwrap().frobenius_norm() <= 1e-12 * 8.0);
    }

    #[test]
    fn matrix_function_domain_error() {
        let a = ComplexMatrix::diag(&[1.0, -1.0]);
        assert!(matches!(
            matrix_function(&a, f64::ln, ZERO_CLIP),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn dagger_involutive() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let a = random_hermitian(4, &mut rng);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn trace_identity() {
        assert!((ComplexMatrix::identity(4).trace() - c(4.0, 0.0)).norm() < 1e-15);
    }
}
