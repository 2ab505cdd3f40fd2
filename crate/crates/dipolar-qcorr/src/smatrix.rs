//! Minimal dense complex linear algebra for the fixed dimensions this
//! problem needs: 2x2 (single spin), 4x4 (two-spin density matrices) and
//! 16x16 (superoperators on vectorized states).
//!
//! Two eigensolvers are provided: a cyclic Jacobi iteration for Hermitian
//! matrices (eigenvalues and orthonormal eigenvectors) and a Hessenberg +
//! shifted-QR iteration for general complex matrices (eigenvalues only).

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub const ALLOWED_DIMS: [usize; 3] = [2, 4, 16];

/// Dense row-major complex matrix of dimension 2, 4 or 16.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T: Scalar> {
    dim: usize,
    data: Vec<Complex<T>>,
}

/// Which spin of the pair survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl<T: Scalar> CMat<T> {
    fn check_dim(dim: usize) -> Result<()> {
        if ALLOWED_DIMS.contains(&dim) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "matrix dimension must be one of {ALLOWED_DIMS:?}, got {dim}"
            )))
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::check_dim(dim).expect("fixed dimension");
        CMat {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        Self::check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(CMat { dim, data })
    }

    /// Build from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(dim, entries.iter().map(|&x| T::cplx(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(
            Complex::new(T::zero(), T::zero()),
            |acc, z| acc + z,
        )
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Max entry magnitude of `self - self^dagger`.
    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, x) in row.iter().zip(v) {
                acc = acc + *a * *x;
            }
            out[i] = acc;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }
}

impl<T: Scalar> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl<T: Scalar> Add for CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: CMat<T>) -> CMat<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: CMat<T>) -> CMat<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out[(i, j)] + a * rhs[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<T: Scalar> Mul for CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: CMat<T>) -> CMat<T> {
        &self * &rhs
    }
}

/// Eigendecomposition result. For Hermitian input the values are real and
/// sorted descending and `vectors` holds orthonormal columns.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Scalar> {
    pub values: Vec<T>,
    pub vectors: Option<CMat<T>>,
}

// Pauli matrices and friends.

pub fn pauli_x<T: Scalar>() -> CMat<T> {
    CMat::from_vec(2, vec![T::cplx(0.0, 0.0), T::cplx(1.0, 0.0), T::cplx(1.0, 0.0), T::cplx(0.0, 0.0)]).unwrap()
}

pub fn pauli_y<T: Scalar>() -> CMat<T> {
    CMat::from_vec(2, vec![T::cplx(0.0, 0.0), T::cplx(0.0, -1.0), T::cplx(0.0, 1.0), T::cplx(0.0, 0.0)]).unwrap()
}

pub fn pauli_z<T: Scalar>() -> CMat<T> {
    CMat::from_vec(2, vec![T::cplx(1.0, 0.0), T::cplx(0.0, 0.0), T::cplx(0.0, 0.0), T::cplx(-1.0, 0.0)]).unwrap()
}

/// Kronecker product. Result dimension must again be one of the allowed
/// dimensions, so valid shapes are 2x2 (x) 2x2 and 4x4 (x) 4x4.
pub fn kron<T: Scalar>(a: &CMat<T>, b: &CMat<T>) -> Result<CMat<T>> {
    let (da, db) = (a.dim(), b.dim());
    CMat::<T>::check_dim(da * db)?;
    let n = da * db;
    let mut out = CMat::zeros(n);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Trace out one spin of a two-spin 4x4 density matrix.
pub fn partial_trace<T: Scalar>(rho: &CMat<T>, keep: Subsystem) -> Result<CMat<T>> {
    if rho.dim() != 4 {
        return Err(Error::invalid("partial trace expects a 4x4 matrix"));
    }
    let mut out = CMat::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for s in 0..2 {
                acc = acc + match keep {
                    Subsystem::A => rho[(2 * i + s, 2 * j + s)],
                    Subsystem::B => rho[(2 * s + i, 2 * s + j)],
                };
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

const JACOBI_MAX_SWEEPS: usize = 60;
const QR_MAX_ITER: usize = 500;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Values come back sorted descending with matching orthonormal eigenvector
/// columns. Rejects inputs whose hermiticity defect exceeds 1e-10.
pub fn herm_eigen<T: Scalar>(m: &CMat<T>) -> Result<Spectrum<T>> {
    let defect = m.hermiticity_defect();
    if defect > T::real(1e-10) {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    let n = m.dim();
    // Work on the exactly Hermitian part.
    let mut h = (m + &m.adjoint()).scale_re(T::real(0.5));
    let mut v = CMat::identity(n);
    let scale = h.max_abs().max(T::one());
    let tol = T::epsilon() * scale * T::real(1e-2);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(h[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[(p, q)];
                let r = hpq.norm();
                if r <= tol {
                    continue;
                }
                let phase = hpq / r; // e^{i phi}
                let a = h[(p, p)].re;
                let b = h[(q, q)].re;
                // tan(2 theta) = 2 r / (a - b), stable small-root choice
                let diff = a - b;
                let t = if diff == T::zero() {
                    T::one()
                } else {
                    let tau = diff / (r + r);
                    let sign = if tau >= T::zero() { T::one() } else { -T::one() };
                    sign / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // Unitary G: G[p][p]=c, G[p][q]=-s*phase, G[q][p]=s*conj(phase), G[q][q]=c
                // Update H <- G^dagger H G and V <- V G.
                let cs = Complex::new(c, T::zero());
                let sp = phase * s; // s e^{i phi}
                for k in 0..n {
                    let hkp = h[(k, p)];
                    let hkq = h[(k, q)];
                    h[(k, p)] = hkp * cs + hkq * sp.conj();
                    h[(k, q)] = hkq * cs - hkp * sp;
                }
                for k in 0..n {
                    let hpk = h[(p, k)];
                    let hqk = h[(q, k)];
                    h[(p, k)] = hpk * cs + hqk * sp;
                    h[(q, k)] = hqk * cs - hpk * sp.conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cs + vkq * sp.conj();
                    v[(k, q)] = vkq * cs - vkp * sp;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| h[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new_col)] = v[(k, old_col)];
        }
    }
    Ok(Spectrum {
        values,
        vectors: Some(vectors),
    })
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues
/// within round-off below zero are clamped to zero; anything more negative
/// is rejected.
pub fn herm_psd_sqrt<T: Scalar>(m: &CMat<T>) -> Result<CMat<T>> {
    let spec = herm_eigen(m)?;
    let v = spec.vectors.as_ref().expect("herm_eigen always returns vectors");
    let n = m.dim();
    let mut out = CMat::zeros(n);
    for (idx, &lam) in spec.values.iter().enumerate() {
        if lam < -T::real(1e-10) {
            return Err(Error::invalid(format!(
                "matrix is not positive semidefinite (eigenvalue {lam:e})"
            )));
        }
        let root = lam.max(T::zero()).sqrt();
        if root == T::zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = out[(i, j)] + v[(i, idx)] * v[(j, idx)].conj() * root;
            }
        }
    }
    Ok(out)
}

/// Eigenvalues of a general complex matrix via Hessenberg reduction and
/// Wilkinson-shifted QR iteration. Returned sorted by descending real part
/// (ties by descending imaginary part) for determinism.
pub fn general_eigenvalues<T: Scalar>(m: &CMat<T>) -> Result<Vec<Complex<T>>> {
    let n = m.dim();
    let mut h = hessenberg(m);
    let scale = h.max_abs().max(T::one());
    let eps = T::epsilon() * T::real(8.0);
    let mut eigs: Vec<Complex<T>> = Vec::with_capacity(n);
    let mut active = n; // eigenvalues below `active` are converged
    let mut iter_count = 0usize;

    while active > 0 {
        if active == 1 {
            eigs.push(h[(0, 0)]);
            active = 0;
            continue;
        }
        // Deflate tiny subdiagonals.
        let mut deflated = false;
        for k in (1..active).rev() {
            let sub = h[(k, k - 1)].norm();
            let local = h[(k - 1, k - 1)].norm() + h[(k, k)].norm();
            let thresh = eps * if local > T::zero() { local } else { scale };
            if sub <= thresh {
                h[(k, k - 1)] = Complex::new(T::zero(), T::zero());
                if k == active - 1 {
                    eigs.push(h[(k, k)]);
                    active -= 1;
                    deflated = true;
                    break;
                }
            }
        }
        if deflated {
            continue;
        }
        if iter_count >= QR_MAX_ITER {
            return Err(Error::numeric(format!(
                "QR iteration did not converge after {QR_MAX_ITER} iterations"
            )));
        }
        iter_count += 1;

        let shift = if iter_count % 16 == 0 {
            // exceptional shift to break out of shift-invariant stalls
            h[(active - 1, active - 1)]
                + Complex::new(T::real(0.75) * h[(active - 1, active - 2)].norm(), T::zero())
        } else {
            wilkinson_shift(
                h[(active - 2, active - 2)],
                h[(active - 2, active - 1)],
                h[(active - 1, active - 2)],
                h[(active - 1, active - 1)],
            )
        };
        qr_step(&mut h, active, shift);
    }

    eigs.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .expect("finite eigenvalues")
            .then(b.im.partial_cmp(&a.im).expect("finite eigenvalues"))
    });
    Ok(eigs)
}

/// Reduce to upper Hessenberg form by Householder reflections.
fn hessenberg<T: Scalar>(m: &CMat<T>) -> CMat<T> {
    let n = m.dim();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        // Zero entries below the first subdiagonal in this column.
        let mut x: Vec<Complex<T>> = (col + 1..n).map(|i| h[(i, col)]).collect();
        let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm_x <= T::epsilon() {
            continue;
        }
        // alpha = -e^{i arg(x0)} |x|
        let x0 = x[0];
        let phase = if x0.norm() > T::zero() {
            x0 / x0.norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -phase * norm_x;
        x[0] = x[0] - alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if vnorm <= T::epsilon() * norm_x {
            continue;
        }
        let v: Vec<Complex<T>> = x.iter().map(|z| *z / vnorm).collect();
        // H <- P H P with P = I - 2 v v^dagger acting on rows/cols col+1..n
        // Left: row_i -= 2 v_i (v^dagger H)_row
        for j in 0..n {
            let mut dot = Complex::new(T::zero(), T::zero());
            for (k, vk) in v.iter().enumerate() {
                dot = dot + vk.conj() * h[(col + 1 + k, j)];
            }
            let two = T::real(2.0);
            for (k, vk) in v.iter().enumerate() {
                let upd = h[(col + 1 + k, j)] - *vk * dot * two;
                h[(col + 1 + k, j)] = upd;
            }
        }
        // Right: col_j -= 2 (H v) v^dagger
        for i in 0..n {
            let mut dot = Complex::new(T::zero(), T::zero());
            for (k, vk) in v.iter().enumerate() {
                dot = dot + h[(i, col + 1 + k)] * *vk;
            }
            let two = T::real(2.0);
            for (k, vk) in v.iter().enumerate() {
                let upd = h[(i, col + 1 + k)] - dot * vk.conj() * two;
                h[(i, col + 1 + k)] = upd;
            }
        }
    }
    h
}

/// Eigenvalue of the trailing 2x2 block closest to its bottom-right entry.
fn wilkinson_shift<T: Scalar>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = T::real(0.5);
    let tr2 = (a + d) * half;
    let det = a * d - b * c;
    let disc = (tr2 * tr2 - det).sqrt();
    let e1 = tr2 + disc;
    let e2 = tr2 - disc;
    if (e1 - d).norm() < (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicit shifted QR step on the leading `active` block of a
/// Hessenberg matrix, via Givens rotations: H <- R Q + shift I.
fn qr_step<T: Scalar>(h: &mut CMat<T>, active: usize, shift: Complex<T>) {
    let n = h.dim();
    for i in 0..active {
        let d = h[(i, i)] - shift;
        h[(i, i)] = d;
    }
    // Record rotations (c real, s complex) eliminating subdiagonals.
    let mut rots: Vec<(T, Complex<T>)> = Vec::with_capacity(active - 1);
    for k in 0..active - 1 {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if norm <= T::epsilon() {
            (T::one(), Complex::new(T::zero(), T::zero()))
        } else {
            // G = [[c, conj(s)], [-s, c]] with c real so that G [a; b] = [r; 0]
            let c = a.norm() / norm;
            let phase = if a.norm() > T::zero() {
                a / a.norm()
            } else {
                Complex::new(T::one(), T::zero())
            };
            let s = phase.conj() * b / norm;
            (c, s)
        };
        for j in k..n {
            let hkj = h[(k, j)];
            let hk1j = h[(k + 1, j)];
            h[(k, j)] = hkj * c + hk1j * s.conj();
            h[(k + 1, j)] = hk1j * c - hkj * s;
        }
        rots.push((c, s));
    }
    // Multiply R by Q^dagger on the right: columns k, k+1 combine.
    for (k, (c, s)) in rots.iter().enumerate() {
        for i in 0..(k + 2).min(active) {
            let hik = h[(i, k)];
            let hik1 = h[(i, k + 1)];
            h[(i, k)] = hik * *c + hik1 * *s;
            h[(i, k + 1)] = hik1 * *c - hik * s.conj();
        }
    }
    for i in 0..active {
        let d = h[(i, i)] + shift;
        h[(i, i)] = d;
    }
}
