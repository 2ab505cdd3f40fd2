//! Time evolution of the two-spin state under dephasing, computed two ways:
//! the closed-form propagator and an independent fixed-step RK4 integration
//! of the vectorized master equation. The two paths cross-validate each
//! other; the integrator is the oracle.
//!
//! Vectorization is by columns: vec index = col * 4 + row.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::smatrix::{kron, CMat};
use crate::spinmodel::{initial_state, spin_operators, SimParams};
use num_complex::Complex;
use std::collections::BTreeSet;

/// The five parameters of the Hadamard-transformed (X-form) state:
/// populations a, b, c, d on the diagonal and the outer coherence alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState<T: Scalar> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub alpha: Complex<T>,
}

impl<T: Scalar> XState<T> {
    pub fn new(a: T, b: T, c: T, d: T, alpha: Complex<T>) -> Result<Self> {
        let x = XState { a, b, c, d, alpha };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let eps = T::real(1e-12);
        let sum = self.a + self.b + self.c + self.d;
        if (sum - T::one()).abs() > eps {
            return Err(Error::invalid(format!(
                "X-state populations must sum to 1, got {sum}"
            )));
        }
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if v < -eps {
                return Err(Error::invalid(format!("population {name} = {v} < 0")));
            }
        }
        if self.alpha.norm_sqr() > self.a * self.d + eps {
            return Err(Error::invalid(
                "X-state violates positivity: |alpha|^2 > a*d",
            ));
        }
        Ok(())
    }

    /// Reconstruct the 4x4 X-form density matrix.
    pub fn to_matrix(&self) -> CMat<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let re = |x: T| Complex::new(x, T::zero());
        CMat::from_vec(4, vec![
            re(self.a), zero, zero, self.alpha,
            zero, re(self.b), zero, zero,
            zero, zero, re(self.c), zero,
            self.alpha.conj(), zero, zero, re(self.d),
        ])
        .unwrap()
    }
}

/// Closed-form density matrix at dimensionless time t.
pub fn analytic_density<T: Scalar>(p: &SimParams<T>) -> CMat<T> {
    let tau = (p.beta * T::real(0.5)).tanh();
    let q = T::real(0.25);
    let half = T::real(0.5);
    let three_half = T::real(1.5);
    // single-quantum coherences carry e^{-(g -+ 3i) t / 2}
    let ep = Complex::new(-p.g * p.t * half, -three_half * p.t).exp() * (tau * q);
    let em = Complex::new(-p.g * p.t * half, three_half * p.t).exp() * (tau * q);
    let dd = Complex::new((-p.g * p.t).exp() * tau * tau * q, T::zero());
    let diag = Complex::new(q, T::zero());
    CMat::from_vec(4, vec![
        diag, ep, ep, dd,
        em, diag, dd, em,
        em, dd, diag, em,
        dd, ep, ep, diag,
    ])
    .unwrap()
}

/// Closed-form X-state parameters at dimensionless time t.
/// d is fixed by normalization and agrees with the Hadamard transform of
/// the full solution.
pub fn analytic_xstate<T: Scalar>(p: &SimParams<T>) -> XState<T> {
    let tau = (p.beta * T::real(0.5)).tanh();
    let q = T::real(0.25);
    let half = T::real(0.5);
    let ht = T::real(1.5) * p.t; // 3t/2
    let e_g = (-p.g * p.t).exp();
    let e_g2 = (-p.g * p.t * half).exp();
    let a = q * (tau * tau * e_g + T::real(2.0) * ht.cos() * tau * e_g2 + T::one());
    let b = q - q * tau * tau * e_g;
    let c = b;
    let d = T::one() - a - b - c;
    let alpha = Complex::new(T::zero(), half * ht.sin() * tau * e_g2);
    XState { a, b, c, d, alpha }
}

/// The 16x16 generator of the vectorized master equation together with a
/// sparse form for fast repeated application.
#[derive(Debug, Clone)]
pub struct Liouvillian<T: Scalar> {
    pub matrix: CMat<T>,
    pub g: T,
    sparse: Vec<(usize, usize, Complex<T>)>,
}

impl<T: Scalar> Liouvillian<T> {
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); 16];
        for &(i, j, l) in &self.sparse {
            out[i] = out[i] + l * v[j];
        }
        out
    }
}

/// Build the dephasing Liouvillian: unitary commutator part plus the
/// I_zk dissipators at rate g, in the column-stacking convention.
pub fn build_liouvillian<T: Scalar>(g: T) -> Result<Liouvillian<T>> {
    if !(g >= T::zero()) {
        return Err(Error::invalid(format!("g must be >= 0, got {g}")));
    }
    let h = crate::spinmodel::build_hamiltonian::<T>();
    let i4 = CMat::identity(4);
    let ops = spin_operators::<T>();
    let minus_i = Complex::new(T::zero(), -T::one());
    // -i (I (x) H - H^T (x) I)
    let unitary = (&kron(&i4, &h)? - &kron(&h.transpose(), &i4)?).scale(minus_i);
    let mut dissipator = CMat::zeros(16);
    for z in [&ops.iz1, &ops.iz2] {
        let z2 = z * z;
        let jump = kron(&z.transpose(), z)?;
        let anti = (&kron(&i4, &z2)? + &kron(&z2.transpose(), &i4)?).scale_re(T::real(0.5));
        dissipator = &dissipator + &(&jump - &anti);
    }
    let matrix = &unitary + &dissipator.scale_re(g);
    let mut sparse = Vec::new();
    for i in 0..16 {
        for j in 0..16 {
            let l = matrix[(i, j)];
            if l.norm() > T::zero() {
                sparse.push((i, j, l));
            }
        }
    }
    Ok(Liouvillian { matrix, g, sparse })
}

fn vec_index(row: usize, col: usize) -> usize {
    col * 4 + row
}

pub fn vectorize<T: Scalar>(rho: &CMat<T>) -> Vec<Complex<T>> {
    let mut v = vec![Complex::new(T::zero(), T::zero()); 16];
    for row in 0..4 {
        for col in 0..4 {
            v[vec_index(row, col)] = rho[(row, col)];
        }
    }
    v
}

pub fn unvectorize<T: Scalar>(v: &[Complex<T>]) -> CMat<T> {
    let mut rho = CMat::zeros(4);
    for row in 0..4 {
        for col in 0..4 {
            rho[(row, col)] = v[vec_index(row, col)];
        }
    }
    rho
}

/// Integration output with the bookkeeping the caller may want to report.
#[derive(Debug, Clone)]
pub struct IntegrationOutput<T: Scalar> {
    pub rho: CMat<T>,
    pub trace_drift: T,
    pub hermiticity_defect: T,
    pub warnings: Vec<String>,
}

/// Fixed-step RK4 integration of the vectorized master equation, sampled
/// at the given strictly increasing times (starting from t = 0).
pub fn integrate_trajectory<T: Scalar>(
    rho0: &CMat<T>,
    g: T,
    times: &[T],
    dt: T,
) -> Result<Vec<IntegrationOutput<T>>> {
    if rho0.dim() != 4 {
        return Err(Error::invalid("integration expects a 4x4 state"));
    }
    if !(dt > T::zero()) {
        return Err(Error::invalid(format!("dt must be > 0, got {dt}")));
    }
    let mut prev = T::zero();
    for &t in times {
        if !(t >= prev) {
            return Err(Error::invalid("sample times must be non-decreasing and >= 0"));
        }
        prev = t;
    }
    let lv = build_liouvillian(g)?;
    let mut v = vectorize(rho0);
    let mut t_now = T::zero();
    let mut out = Vec::with_capacity(times.len());
    let half = T::real(0.5);
    let sixth = T::real(1.0 / 6.0);
    let two = T::real(2.0);

    for &t_target in times {
        let span = t_target - t_now;
        if span > T::zero() {
            let n = (span / dt).ceil().to_usize().ok_or_else(|| {
                Error::invalid("step count overflow: dt far too small for the span")
            })?;
            let n = n.max(1);
            let h = span / T::from_usize(n).unwrap();
            for _ in 0..n {
                let k1 = lv.apply(&v);
                let v2: Vec<_> = v.iter().zip(&k1).map(|(x, k)| *x + *k * (h * half)).collect();
                let k2 = lv.apply(&v2);
                let v3: Vec<_> = v.iter().zip(&k2).map(|(x, k)| *x + *k * (h * half)).collect();
                let k3 = lv.apply(&v3);
                let v4: Vec<_> = v.iter().zip(&k3).map(|(x, k)| *x + *k * h).collect();
                let k4 = lv.apply(&v4);
                for i in 0..16 {
                    let incr = (k1[i] + (k2[i] + k3[i]) * two + k4[i]) * (h * sixth);
                    v[i] = v[i] + incr;
                }
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::numeric(format!(
                    "non-finite value during integration near t = {t_target}"
                )));
            }
            t_now = t_target;
        }
        out.push(finalize_state(unvectorize(&v)));
    }
    Ok(out)
}

fn finalize_state<T: Scalar>(raw: CMat<T>) -> IntegrationOutput<T> {
    let mut warnings = Vec::new();
    let defect = raw.hermiticity_defect();
    if defect > T::real(1e-10) {
        warnings.push(format!(
            "hermiticity defect {defect:e} exceeds 1e-10; symmetrizing anyway"
        ));
    }
    let mut rho = (&raw + &raw.adjoint()).scale_re(T::real(0.5));
    let trace_drift = (rho.trace().re - T::one()).abs();
    if trace_drift > T::real(1e-12) {
        warnings.push(format!(
            "trace drift {trace_drift:e} exceeds 1e-12; renormalizing"
        ));
        let tr = rho.trace().re;
        rho = rho.scale_re(T::one() / tr);
    }
    IntegrationOutput {
        rho,
        trace_drift,
        hermiticity_defect: defect,
        warnings,
    }
}

/// Single-endpoint convenience wrapper over [`integrate_trajectory`].
pub fn integrate<T: Scalar>(
    rho0: &CMat<T>,
    g: T,
    t_final: T,
    dt: T,
) -> Result<IntegrationOutput<T>> {
    if !(t_final >= T::zero()) {
        return Err(Error::invalid(format!("t_final must be >= 0, got {t_final}")));
    }
    if t_final > T::zero() && dt > t_final {
        return Err(Error::invalid(format!(
            "dt = {dt} exceeds t_final = {t_final}"
        )));
    }
    let mut traj = integrate_trajectory(rho0, g, &[t_final], dt)?;
    Ok(traj.pop().unwrap())
}

/// Connected components of the generator's sparsity graph, labeled by the
/// (row, col) density-matrix element each vectorized variable represents
/// (1-based, matching the usual subscript notation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub components: Vec<BTreeSet<(usize, usize)>>,
}

impl BlockReport {
    /// The decoupling the dephasing generator must show: four 2-variable
    /// coherence blocks, the two corner coherences on their own, the two
    /// constant corner populations, and one 4-variable central block.
    pub fn matches_expected(&self) -> bool {
        let expect: Vec<BTreeSet<(usize, usize)>> = vec![
            [(1, 1)].into(),
            [(1, 4)].into(),
            [(4, 1)].into(),
            [(4, 4)].into(),
            [(1, 2), (1, 3)].into(),
            [(2, 1), (3, 1)].into(),
            [(2, 4), (3, 4)].into(),
            [(4, 2), (4, 3)].into(),
            [(2, 2), (2, 3), (3, 2), (3, 3)].into(),
        ];
        let mut got = self.components.clone();
        let mut want = expect;
        got.sort();
        want.sort();
        got == want
    }
}

pub fn decoupled_blocks_check<T: Scalar>(lv: &Liouvillian<T>) -> BlockReport {
    let tol = T::real(1e-12);
    let mut parent: Vec<usize> = (0..16).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..16 {
        for j in 0..16 {
            if i != j && lv.matrix[(i, j)].norm() > tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, BTreeSet<(usize, usize)>> =
        Default::default();
    for v in 0..16 {
        let root = find(&mut parent, v);
        let (row, col) = (v % 4 + 1, v / 4 + 1);
        groups.entry(root).or_default().insert((row, col));
    }
    BlockReport {
        components: groups.into_values().collect(),
    }
}

/// The central 4-variable block rewritten in sum/difference variables
/// (p22+p33, p23+p32, p23-p32, p22-p33). The result is block triangular
/// with the total central population conserved.
pub fn sum_difference_block<T: Scalar>(lv: &Liouvillian<T>) -> CMat<T> {
    // variables in original order: p22, p23, p32, p33 (1-based labels)
    let idx = [
        vec_index(1, 1),
        vec_index(1, 2),
        vec_index(2, 1),
        vec_index(2, 2),
    ];
    let mut m4 = CMat::zeros(4);
    for (i, &vi) in idx.iter().enumerate() {
        for (j, &vj) in idx.iter().enumerate() {
            m4[(i, j)] = lv.matrix[(vi, vj)];
        }
    }
    let s = CMat::from_real(4, &[
        1.0, 0.0, 0.0, 1.0,
        0.0, 1.0, 1.0, 0.0,
        0.0, 1.0, -1.0, 0.0,
        1.0, 0.0, 0.0, -1.0,
    ])
    .unwrap();
    let s_inv = s.scale_re(T::real(0.5));
    &(&s * &m4) * &s_inv
}

/// Max entrywise difference between the analytic solution and the RK4
/// oracle at the same parameters.
pub fn analytic_vs_numeric_error<T: Scalar>(p: &SimParams<T>, dt: T) -> Result<T> {
    let rho0 = initial_state(p.beta)?;
    let numeric = integrate(&rho0, p.g, p.t, dt)?;
    Ok(analytic_density(p).max_abs_diff(&numeric.rho))
}
