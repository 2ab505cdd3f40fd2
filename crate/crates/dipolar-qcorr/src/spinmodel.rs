//! Physical objects of the two-spin dipolar model: spin operators, the
//! dipolar Hamiltonian (coupling constant scaled to 1 by the dimensionless
//! units), the post-pulse thermal initial state, the Hadamard basis change
//! and temperature conversion.
//!
//! Basis convention: |uu>, |ud>, |du>, |dd> with row 1 = both spins up.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::smatrix::{kron, pauli_x, pauli_y, pauli_z, CMat};
use num_complex::Complex;

/// Inputs above this are rejected to keep intermediate exponentials finite.
pub const BETA_CAP: f64 = 700.0;

/// Dimensionless simulation parameters: inverse temperature, dephasing
/// rate (in units of the dipolar coupling) and time (in units of 1/D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams<T: Scalar> {
    pub beta: T,
    pub g: T,
    pub t: T,
}

impl<T: Scalar> SimParams<T> {
    pub fn new(beta: T, g: T, t: T) -> Result<Self> {
        if !(beta >= T::zero()) {
            return Err(Error::invalid(format!("beta must be >= 0, got {beta}")));
        }
        if beta > T::real(BETA_CAP) {
            return Err(Error::invalid(format!(
                "beta must be <= {BETA_CAP}, got {beta}"
            )));
        }
        if !(g >= T::zero()) {
            return Err(Error::invalid(format!("g must be >= 0, got {g}")));
        }
        if !(t >= T::zero()) {
            return Err(Error::invalid(format!("t must be >= 0, got {t}")));
        }
        Ok(SimParams { beta, g, t })
    }
}

/// SI constants plus the Larmor angular frequency used for temperature
/// conversion. Defaults: 2019 SI exact values, omega0 = 2 pi * 500 MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants<T: Scalar> {
    pub hbar: T,
    pub k_boltzmann: T,
    pub omega0: T,
}

pub const HBAR: f64 = 1.054571817e-34;
pub const K_BOLTZMANN: f64 = 1.380649e-23;
pub const OMEGA0_DEFAULT: f64 = std::f64::consts::TAU * 5.0e8;

impl<T: Scalar> PhysicalConstants<T> {
    pub fn with_omega0(omega0: T) -> Result<Self> {
        if !(omega0 > T::zero()) {
            return Err(Error::invalid(format!("omega0 must be > 0, got {omega0}")));
        }
        Ok(PhysicalConstants {
            hbar: T::real(HBAR),
            k_boltzmann: T::real(K_BOLTZMANN),
            omega0,
        })
    }
}

impl<T: Scalar> Default for PhysicalConstants<T> {
    fn default() -> Self {
        Self::with_omega0(T::real(OMEGA0_DEFAULT)).unwrap()
    }
}

/// The six spin-1/2 angular momentum components for the pair.
#[derive(Debug, Clone)]
pub struct SpinOps<T: Scalar> {
    pub ix1: CMat<T>,
    pub iy1: CMat<T>,
    pub iz1: CMat<T>,
    pub ix2: CMat<T>,
    pub iy2: CMat<T>,
    pub iz2: CMat<T>,
}

pub fn spin_operators<T: Scalar>() -> SpinOps<T> {
    let half = T::real(0.5);
    let i2 = CMat::identity(2);
    let sx = pauli_x::<T>().scale_re(half);
    let sy = pauli_y::<T>().scale_re(half);
    let sz = pauli_z::<T>().scale_re(half);
    SpinOps {
        ix1: kron(&sx, &i2).unwrap(),
        iy1: kron(&sy, &i2).unwrap(),
        iz1: kron(&sz, &i2).unwrap(),
        ix2: kron(&i2, &sx).unwrap(),
        iy2: kron(&i2, &sy).unwrap(),
        iz2: kron(&i2, &sz).unwrap(),
    }
}

/// H = 2 I_z1 I_z2 - I_x1 I_x2 - I_y1 I_y2 (dipolar coupling scaled to 1).
pub fn build_hamiltonian<T: Scalar>() -> CMat<T> {
    let ops = spin_operators::<T>();
    let zz = (&ops.iz1 * &ops.iz2).scale_re(T::real(2.0));
    let xx = &ops.ix1 * &ops.ix2;
    let yy = &ops.iy1 * &ops.iy2;
    &(&zz - &xx) - &yy
}

/// Thermal state right after the pi/2 pulse: all diagonal entries 1/4,
/// single-flip entries tanh(beta/2)/4, double-flip entries tanh^2(beta/2)/4.
pub fn initial_state<T: Scalar>(beta: T) -> Result<CMat<T>> {
    if !(beta >= T::zero()) || beta > T::real(BETA_CAP) {
        return Err(Error::invalid(format!(
            "beta must be in [0, {BETA_CAP}], got {beta}"
        )));
    }
    let tau = (beta * T::real(0.5)).tanh();
    let q = T::real(0.25);
    let one = q;
    let s = tau * q;
    let d = tau * tau * q;
    let re = |x: T| Complex::new(x, T::zero());
    CMat::from_vec(4, vec![
        re(one), re(s), re(s), re(d),
        re(s), re(one), re(d), re(s),
        re(s), re(d), re(one), re(s),
        re(d), re(s), re(s), re(one),
    ])
}

/// The involutory 4x4 Hadamard matrix (tensor square of the 2x2 one).
pub fn hadamard_matrix<T: Scalar>() -> CMat<T> {
    let h2 = CMat::from_real(2, &[1.0, 1.0, 1.0, -1.0])
        .unwrap()
        .scale_re(T::real(std::f64::consts::FRAC_1_SQRT_2));
    kron(&h2, &h2).unwrap()
}

/// Conjugate by the 4x4 Hadamard. Involution: applying twice returns the
/// input; the spectrum and the trace are preserved.
pub fn hadamard_transform<T: Scalar>(rho: &CMat<T>) -> CMat<T> {
    let h = hadamard_matrix::<T>();
    &(&h * rho) * &h
}

/// beta = hbar * omega0 / (k_B * T)
pub fn beta_from_temperature<T: Scalar>(
    temperature: T,
    consts: &PhysicalConstants<T>,
) -> Result<T> {
    if !(temperature > T::zero()) {
        return Err(Error::invalid(format!(
            "temperature must be > 0 K, got {temperature}"
        )));
    }
    Ok(consts.hbar * consts.omega0 / (consts.k_boltzmann * temperature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smatrix::herm_eigen;

    #[test]
    fn iz1_is_diagonal() {
        let ops = spin_operators::<f64>();
        let expect = CMat::from_real(4, &[
            0.5, 0.0, 0.0, 0.0,
            0.0, 0.5, 0.0, 0.0,
            0.0, 0.0, -0.5, 0.0,
            0.0, 0.0, 0.0, -0.5,
        ])
        .unwrap();
        assert!(ops.iz1.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn su2_commutators() {
        let ops = spin_operators::<f64>();
        let comm = ops.ix1.commutator(&ops.iy1);
        let want = ops.iz1.scale(f64::cplx(0.0, 1.0));
        assert!(comm.max_abs_diff(&want) < 1e-15);
        let comm2 = ops.ix2.commutator(&ops.iy2);
        let want2 = ops.iz2.scale(f64::cplx(0.0, 1.0));
        assert!(comm2.max_abs_diff(&want2) < 1e-15);
    }

    #[test]
    fn different_sites_commute() {
        let ops = spin_operators::<f64>();
        assert!(ops.ix1.commutator(&ops.iy2).max_abs() < 1e-15);
        assert!(ops.iz1.commutator(&ops.ix2).max_abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_matrix() {
        let h = build_hamiltonian::<f64>();
        let expect = CMat::from_real(4, &[
            0.5, 0.0, 0.0, 0.0,
            0.0, -0.5, -0.5, 0.0,
            0.0, -0.5, -0.5, 0.0,
            0.0, 0.0, 0.0, 0.5,
        ])
        .unwrap();
        assert!(h.max_abs_diff(&expect) < 1e-15);
        assert!(h.trace().norm() < 1e-15);
        assert!(h.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn hamiltonian_conserves_total_iz() {
        let ops = spin_operators::<f64>();
        let iz = &ops.iz1 + &ops.iz2;
        let h = build_hamiltonian::<f64>();
        assert!(h.commutator(&iz).max_abs() < 1e-15);
    }

    #[test]
    fn initial_state_infinite_temperature() {
        let rho = initial_state::<f64>(0.0).unwrap();
        assert!(rho.max_abs_diff(&CMat::identity(4).scale_re(0.25)) < 1e-15);
    }

    #[test]
    fn initial_state_zero_temperature_limit() {
        let rho = initial_state::<f64>(50.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((rho[(i, j)].re - 0.25).abs() < 1e-14);
                assert!(rho[(i, j)].im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn initial_state_single_flip_entries() {
        let rho = initial_state::<f64>(1.5).unwrap();
        let want = 0.75f64.tanh() / 4.0;
        assert!((rho[(0, 1)].re - want).abs() < 1e-15);
        assert!((want - 0.158787).abs() < 1e-6);
    }

    #[test]
    fn initial_state_rejects_bad_beta() {
        assert!(initial_state::<f64>(-1.0).is_err());
        assert!(initial_state::<f64>(701.0).is_err());
    }

    #[test]
    fn initial_state_psd_over_beta_grid() {
        for k in 0..=20 {
            let beta = 5.0 * k as f64;
            let rho = initial_state::<f64>(beta).unwrap();
            let s = herm_eigen(&rho).unwrap();
            assert!(*s.values.last().unwrap() >= -1e-12, "beta={beta}");
        }
    }

    #[test]
    fn initial_state_centrosymmetric() {
        let rho = initial_state::<f64>(2.3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((rho[(i, j)] - rho[(3 - i, 3 - j)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hadamard_is_involution() {
        let rho = initial_state::<f64>(1.1).unwrap();
        let back = hadamard_transform(&hadamard_transform(&rho));
        assert!(back.max_abs_diff(&rho) < 1e-14);
        let h = hadamard_matrix::<f64>();
        assert!((&h * &h).max_abs_diff(&CMat::identity(4)) < 1e-15);
    }

    #[test]
    fn hadamard_fixes_maximally_mixed() {
        let rho = CMat::<f64>::identity(4).scale_re(0.25);
        assert!(hadamard_transform(&rho).max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn hadamard_preserves_spectrum() {
        let rho = initial_state::<f64>(1.5).unwrap();
        let s1 = herm_eigen(&rho).unwrap();
        let s2 = herm_eigen(&hadamard_transform(&rho)).unwrap();
        for (a, b) in s1.values.iter().zip(&s2.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn beta_from_temperature_values() {
        let consts = PhysicalConstants::<f64>::default();
        // kT = hbar omega0 gives beta = 1
        let t_match = HBAR * OMEGA0_DEFAULT / K_BOLTZMANN;
        assert!((beta_from_temperature(t_match, &consts).unwrap() - 1.0).abs() < 1e-14);
        // 24 mK is close to the beta = 1 point for omega0 = 2 pi * 500 MHz
        let b = beta_from_temperature(0.024, &consts).unwrap();
        assert!((b - 1.0).abs() < 0.01, "beta(24 mK) = {b}");
        assert!(beta_from_temperature(1.0e6, &consts).unwrap() < 1e-7);
        assert!(beta_from_temperature(-1.0, &consts).is_err());
        assert!(beta_from_temperature(0.0, &consts).is_err());
    }

    #[test]
    fn sim_params_validation() {
        assert!(SimParams::new(1.5, 0.5, 2.0).is_ok());
        assert!(SimParams::<f64>::new(-0.1, 0.0, 0.0).is_err());
        assert!(SimParams::<f64>::new(0.0, -0.1, 0.0).is_err());
        assert!(SimParams::<f64>::new(0.0, 0.0, -0.1).is_err());
        assert!(SimParams::<f64>::new(701.0, 0.0, 0.0).is_err());
    }
}
