//! Entanglement and quantum discord for two-qubit states.
//!
//! Concurrence comes in three mutually checking flavors: numeric (spin-flip
//! R-matrix plus general eigenvalues), analytic (the closed forms for this
//! model's family) and the X-state shortcut. Discord minimizes the measured
//! conditional entropy over von Neumann measurements on spin B, by a
//! deterministic grid scan with golden-section refinement.
//!
//! All entropies are in bits (base-2 logarithms), so a Bell state carries
//! exactly one bit of discord.

use crate::dynamics::{analytic_density, analytic_xstate, XState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::search::golden_section_min;
use crate::smatrix::{herm_eigen, herm_psd_sqrt, kron, partial_trace, pauli_y, CMat, Subsystem};
use crate::spinmodel::{hadamard_transform, SimParams};
use num_complex::Complex;

/// Eigenvalues with magnitude below this negative bound are treated as
/// round-off and clipped to zero; anything more negative is an error.
const NEG_CLIP: f64 = 1e-10;

const THETA_GRID: usize = 129;
const PHI_GRID: usize = 64;
const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult<T: Scalar> {
    pub value: T,
    pub lambdas: [T; 4],
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult<T: Scalar> {
    pub value: T,
    pub optimal_theta: T,
    pub optimal_phi: T,
    pub classical_correlation: T,
    pub mutual_information: T,
}

/// R = rho (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y)
pub fn r_matrix<T: Scalar>(rho: &CMat<T>) -> CMat<T> {
    let syy = kron(&pauli_y::<T>(), &pauli_y::<T>()).unwrap();
    &(&(rho * &syy) * &rho.conj()) * &syy
}

fn clip_small_negative<T: Scalar>(x: T, what: &str) -> Result<T> {
    if x >= T::zero() {
        Ok(x)
    } else if x >= -T::real(NEG_CLIP) {
        Ok(T::zero())
    } else {
        Err(Error::invalid(format!("{what} = {x:e} is too negative")))
    }
}

fn wootters_combine<T: Scalar>(mut lambdas: [T; 4], method: Method) -> ConcurrenceResult<T> {
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite lambdas"));
    let roots: Vec<T> = lambdas.iter().map(|l| l.sqrt()).collect();
    let raw = roots[0] - roots[1] - roots[2] - roots[3];
    let value = raw.max(T::zero()).min(T::one());
    ConcurrenceResult {
        value,
        lambdas,
        method,
    }
}

/// Wootters concurrence via the spectrum of the R-matrix. R = rho rho~ is
/// similar to the Hermitian PSD matrix sqrt(rho) rho~ sqrt(rho) (same
/// spectrum, since eig(AB) = eig(BA)), which the Jacobi solver handles
/// accurately even when the eigenvalues span many orders of magnitude, as
/// they do near pure states.
pub fn concurrence_numeric<T: Scalar>(rho: &CMat<T>) -> Result<ConcurrenceResult<T>> {
    let syy = kron(&pauli_y::<T>(), &pauli_y::<T>()).unwrap();
    let rho_tilde = &(&syy * &rho.conj()) * &syy;
    let s = herm_psd_sqrt(rho)?;
    let m = &(&s * &rho_tilde) * &s;
    let spec = herm_eigen(&m)?;
    let mut lambdas = [T::zero(); 4];
    for (slot, &lam) in lambdas.iter_mut().zip(&spec.values) {
        *slot = clip_small_negative(lam, "R-matrix eigenvalue")?;
    }
    Ok(wootters_combine(lambdas, Method::Numeric))
}

/// Closed-form concurrence for the dephasing family.
pub fn concurrence_analytic<T: Scalar>(p: &SimParams<T>) -> ConcurrenceResult<T> {
    let tau = (p.beta * T::real(0.5)).tanh();
    let tau2 = tau.powi(2);
    let g_t = p.g * p.t;
    let e_g = g_t.exp();
    let e_g2 = (g_t * T::real(0.5)).exp();
    let e_m2g = (-(g_t + g_t)).exp();
    let cos3t = (T::real(3.0) * p.t).cos();
    let sin32 = (T::real(1.5) * p.t).sin().abs();
    let sixteenth = T::real(1.0 / 16.0);
    let four = T::real(4.0);

    let base = (e_g + tau2).powi(2) - four * tau2 * e_g * cos3t;
    let root = (e_g * e_g + tau2 * tau2 - (tau2 + tau2) * e_g * cos3t)
        .max(T::zero())
        .sqrt();
    let swing = four * tau * e_g2 * sin32 * root;
    let l1 = (sixteenth * e_m2g * (base + swing)).max(T::zero());
    let l2 = (sixteenth * e_m2g * (base - swing)).max(T::zero());
    let l34 = sixteenth * e_m2g * (e_g - tau2).powi(2);
    wootters_combine([l1, l2, l34, l34], Method::Analytic)
}

/// X-state shortcut: the inner antidiagonal is empty for this family, so
/// C = 2 max(0, |alpha| - sqrt(b c)).
pub fn concurrence_xstate<T: Scalar>(x: &XState<T>) -> T {
    let b = x.b.max(T::zero());
    let c = x.c.max(T::zero());
    let two = T::real(2.0);
    (two * (x.alpha.norm() - (b * c).sqrt())).max(T::zero()).min(T::one())
}

/// von Neumann entropy in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &CMat<T>) -> Result<T> {
    let spec = herm_eigen(rho)?;
    let mut s = T::zero();
    for &v in &spec.values {
        let v = clip_small_negative(v, "density-matrix eigenvalue")?;
        if v > T::zero() {
            s = s - v * v.log2();
        }
    }
    Ok(s.max(T::zero()))
}

fn entropy2_from_parts<T: Scalar>(diag0: T, diag1: T, off: Complex<T>) -> T {
    // trace-1 Hermitian 2x2: eigenvalues (1 +/- r)/2
    let tr = diag0 + diag1;
    let r = ((diag0 - diag1).powi(2) + T::real(4.0) * off.norm_sqr())
        .max(T::zero())
        .sqrt();
    let lp = ((tr + r) * T::real(0.5)).max(T::zero());
    let lm = ((tr - r) * T::real(0.5)).max(T::zero());
    let mut s = T::zero();
    for l in [lp, lm] {
        if l > T::zero() {
            s = s - l * l.log2();
        }
    }
    s
}

/// The four 2x2 B-blocks of a two-spin density matrix, indexed by the A
/// indices of row and column.
struct BBlocks<T: Scalar> {
    blocks: [[Complex<T>; 4]; 4], // blocks[2m+n] flattened: [m][n] -> 2x2 row-major
}

impl<T: Scalar> BBlocks<T> {
    fn new(rho: &CMat<T>) -> Self {
        let mut blocks = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for m in 0..2 {
            for n in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        blocks[2 * m + n][2 * j + k] = rho[(2 * m + j, 2 * n + k)];
                    }
                }
            }
        }
        BBlocks { blocks }
    }

    /// <w| block[m][n] |w> for all (m, n); returns the unnormalized
    /// post-measurement A matrix as (a00, a11, a01).
    fn project(&self, w: &[Complex<T>; 2]) -> (T, T, Complex<T>) {
        let quad = |b: &[Complex<T>; 4]| -> Complex<T> {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..2 {
                for k in 0..2 {
                    acc = acc + w[j].conj() * b[2 * j + k] * w[k];
                }
            }
            acc
        };
        let a00 = quad(&self.blocks[0]).re;
        let a11 = quad(&self.blocks[3]).re;
        let a01 = quad(&self.blocks[1]);
        (a00, a11, a01)
    }
}

fn bloch_vectors<T: Scalar>(theta: T, phi: T) -> [[Complex<T>; 2]; 2] {
    let half = T::real(0.5);
    let (ct, st) = ((theta * half).cos(), (theta * half).sin());
    let eip = Complex::new(T::zero(), phi).exp();
    [
        [Complex::new(ct, T::zero()), eip * st],
        [-eip.conj() * st, Complex::new(ct, T::zero())],
    ]
}

fn conditional_entropy_fast<T: Scalar>(blocks: &BBlocks<T>, theta: T, phi: T) -> T {
    let degenerate = T::real(1e-14);
    let mut s = T::zero();
    for w in &bloch_vectors(theta, phi) {
        let (a00, a11, a01) = blocks.project(w);
        let p = a00 + a11;
        if p < degenerate {
            continue;
        }
        s = s + p * entropy2_from_parts(a00 / p, a11 / p, a01 / p);
    }
    s
}

/// Conditional entropy after a von Neumann measurement on spin B along the
/// Bloch direction (theta, phi), with the branch probabilities and
/// normalized post-measurement A states.
pub fn measure_conditional_entropy<T: Scalar>(
    rho: &CMat<T>,
    theta: T,
    phi: T,
) -> Result<(T, Vec<(T, CMat<T>)>)> {
    if rho.dim() != 4 {
        return Err(Error::invalid("measurement expects a 4x4 state"));
    }
    let blocks = BBlocks::new(rho);
    let degenerate = T::real(1e-14);
    let mut s = T::zero();
    let mut outcomes = Vec::with_capacity(2);
    for w in &bloch_vectors(theta, phi) {
        let (a00, a11, a01) = blocks.project(w);
        let p = a00 + a11;
        if p < degenerate {
            outcomes.push((T::zero(), CMat::identity(2).scale_re(T::real(0.5))));
            continue;
        }
        let mut rho_a = CMat::zeros(2);
        rho_a[(0, 0)] = Complex::new(a00 / p, T::zero());
        rho_a[(1, 1)] = Complex::new(a11 / p, T::zero());
        rho_a[(0, 1)] = a01 / p;
        rho_a[(1, 0)] = (a01 / p).conj();
        s = s + p * entropy2_from_parts(a00 / p, a11 / p, a01 / p);
        outcomes.push((p, rho_a));
    }
    Ok((s, outcomes))
}

struct EntropyContext<T: Scalar> {
    s_ab: T,
    s_a: T,
    s_b: T,
}

fn entropy_context<T: Scalar>(rho: &CMat<T>) -> Result<EntropyContext<T>> {
    let s_ab = von_neumann_entropy(rho)?;
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?)?;
    Ok(EntropyContext { s_ab, s_a, s_b })
}

fn result_from_min<T: Scalar>(
    ctx: &EntropyContext<T>,
    s_min: T,
    theta: T,
    phi: T,
) -> Result<DiscordResult<T>> {
    let mutual = ctx.s_a + ctx.s_b - ctx.s_ab;
    let classical = ctx.s_a - s_min;
    let raw = s_min - (ctx.s_ab - ctx.s_b);
    let value = clip_small_negative(raw, "discord")?;
    Ok(DiscordResult {
        value,
        optimal_theta: theta,
        optimal_phi: phi,
        classical_correlation: classical,
        mutual_information: mutual,
    })
}

/// Quantum discord via the full two-angle measurement optimization.
pub fn discord<T: Scalar>(rho: &CMat<T>) -> Result<DiscordResult<T>> {
    if rho.dim() != 4 {
        return Err(Error::invalid("discord expects a 4x4 state"));
    }
    let ctx = entropy_context(rho)?;
    let blocks = BBlocks::new(rho);
    let obj = |theta: T, phi: T| conditional_entropy_fast(&blocks, theta, phi);

    let half_pi = T::FRAC_PI_2();
    let two_pi = T::real(std::f64::consts::TAU);
    let dtheta = half_pi / T::from_usize(THETA_GRID - 1).unwrap();
    let dphi = two_pi / T::from_usize(PHI_GRID).unwrap();

    let mut best = (obj(T::zero(), T::zero()), T::zero(), T::zero());
    for i in 0..THETA_GRID {
        let theta = dtheta * T::from_usize(i).unwrap();
        for j in 0..PHI_GRID {
            let phi = dphi * T::from_usize(j).unwrap();
            let s = obj(theta, phi);
            if s < best.0 {
                best = (s, theta, phi);
            }
        }
    }

    // Alternating single-angle golden-section refinement around the grid
    // winner. Only a strict improvement replaces the grid point, so the
    // reported minimum is never above any probed value.
    let xtol = T::real(ANGLE_TOL);
    let (mut s_min, mut theta, mut phi) = best;
    for _ in 0..3 {
        let lo = (theta - dtheta).max(T::zero());
        let hi = (theta + dtheta).min(half_pi);
        let (t_new, s_new) = golden_section_min(|t| obj(t, phi), lo, hi, xtol);
        if s_new < s_min {
            s_min = s_new;
            theta = t_new;
        }
        let (p_new, s_new) = golden_section_min(|p| obj(theta, p), phi - dphi, phi + dphi, xtol);
        if s_new < s_min {
            s_min = s_new;
            phi = p_new % two_pi;
            if phi < T::zero() {
                phi = phi + two_pi;
            }
        }
    }
    result_from_min(&ctx, s_min, theta, phi)
}

/// Single-variable discord for the b = c X-state family: the coherence
/// phase is absorbed by a local rotation on B, after which the measured
/// conditional entropy does not depend on phi.
pub fn discord_single_variable<T: Scalar>(x: &XState<T>) -> Result<DiscordResult<T>> {
    if (x.b - x.c).abs() > T::real(1e-10) {
        return Err(Error::invalid(
            "single-variable discord requires b = c (X-state family)",
        ));
    }
    let rotated = XState {
        alpha: Complex::new(x.alpha.norm(), T::zero()),
        ..*x
    };
    let rho = rotated.to_matrix();
    let ctx = entropy_context(&rho)?;
    let blocks = BBlocks::new(&rho);
    let obj = |theta: T| conditional_entropy_fast(&blocks, theta, T::zero());

    let half_pi = T::FRAC_PI_2();
    let points = 257usize;
    let step = half_pi / T::from_usize(points - 1).unwrap();
    let mut best = (obj(T::zero()), T::zero(), 0usize);
    for i in 1..points {
        let theta = step * T::from_usize(i).unwrap();
        let s = obj(theta);
        if s < best.0 {
            best = (s, theta, i);
        }
    }
    let lo = if best.2 == 0 { T::zero() } else { step * T::from_usize(best.2 - 1).unwrap() };
    let hi = (step * T::from_usize(best.2 + 1).unwrap()).min(half_pi);
    let (t_ref, s_ref) = golden_section_min(obj, lo, hi, T::real(ANGLE_TOL));
    let (s_min, theta) = if s_ref < best.0 { (s_ref, t_ref) } else { (best.0, best.1) };
    result_from_min(&ctx, s_min, theta, T::zero())
}

/// Discord of the model state at the given parameters, via the fast
/// single-variable path.
pub fn discord_at<T: Scalar>(p: &SimParams<T>) -> Result<DiscordResult<T>> {
    discord_single_variable(&analytic_xstate(p))
}

/// Concurrence of the model state at the given parameters. Uses the
/// X-state shortcut, which is free of the square-root cancellations the
/// lambda closed form suffers near pure states.
pub fn concurrence_at<T: Scalar>(p: &SimParams<T>) -> T {
    concurrence_xstate(&analytic_xstate(p))
}

/// Two-angle discord of the model state, used as the optimizer oracle.
pub fn discord_two_angle_at<T: Scalar>(p: &SimParams<T>) -> Result<DiscordResult<T>> {
    discord(&hadamard_transform(&analytic_density(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smatrix::CMat;
    use std::f64::consts::PI;

    fn params(beta: f64, g: f64, t: f64) -> SimParams<f64> {
        SimParams::new(beta, g, t).unwrap()
    }

    fn bell_phi_plus() -> CMat<f64> {
        let mut rho = CMat::zeros(4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                rho[(i, j)] = f64::cplx(0.5, 0.0);
            }
        }
        rho
    }

    #[test]
    fn r_matrix_maximally_mixed() {
        let rho = CMat::<f64>::identity(4).scale_re(0.25);
        let r = r_matrix(&rho);
        assert!(r.max_abs_diff(&CMat::identity(4).scale_re(1.0 / 16.0)) < 1e-15);
    }

    #[test]
    fn r_matrix_bell_state() {
        let eigs = crate::smatrix::general_eigenvalues(&r_matrix(&bell_phi_plus())).unwrap();
        assert!((eigs[0].re - 1.0).abs() < 1e-10);
        for z in &eigs[1..] {
            assert!(z.norm() < 1e-10);
        }
    }

    #[test]
    fn concurrence_numeric_cases() {
        let mixed = CMat::<f64>::identity(4).scale_re(0.25);
        assert!(concurrence_numeric(&mixed).unwrap().value < 1e-12);
        let bell = concurrence_numeric(&bell_phi_plus()).unwrap();
        assert!((bell.value - 1.0).abs() < 1e-10);
        // nearly pure maximally entangled model state
        let p = params(50.0, 0.0, PI / 3.0);
        let rho = hadamard_transform(&analytic_density(&p));
        let c = concurrence_numeric(&rho).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn concurrence_analytic_cases() {
        // infinite temperature: separable for all (g, t)
        for g in [0.0, 0.5, 2.0] {
            for k in 0..=20 {
                let c = concurrence_analytic(&params(0.0, g, 0.3 * k as f64));
                assert!(c.value < 1e-14);
            }
        }
        // alpha = 0 instants
        for g in [0.0, 0.5] {
            let c = concurrence_analytic(&params(1.5, g, 2.0 * PI / 3.0));
            assert!(c.value < 1e-12, "C = {}", c.value);
        }
        // the X-state closed form at beta = 1.5, g = 0, t = pi/3
        let tau = 0.75f64.tanh();
        let want = 2.0 * (tau / 2.0 - (1.0 - tau * tau) / 4.0).max(0.0);
        let c = concurrence_analytic(&params(1.5, 0.0, PI / 3.0));
        assert!((c.value - want).abs() < 1e-12);
    }

    #[test]
    fn concurrence_lambda_ordering() {
        for beta in [0.0, 0.5, 1.5, 5.0] {
            for g in [0.0, 0.1, 0.5, 2.0] {
                for k in 0..=40 {
                    let c = concurrence_analytic(&params(beta, g, 0.25 * k as f64));
                    assert!(c.lambdas[0] >= c.lambdas[1] - 1e-15);
                    assert!(c.lambdas[0] >= c.lambdas[2] - 1e-15);
                }
            }
        }
    }

    #[test]
    fn concurrence_triple_agreement() {
        for beta in [0.0, 0.5, 1.5, 5.0] {
            for g in [0.0, 0.1, 0.5, 2.0] {
                for k in 0..=30 {
                    let p = params(beta, g, k as f64 / 3.0);
                    let ca = concurrence_analytic(&p).value;
                    let cx = concurrence_xstate(&analytic_xstate(&p));
                    let rho = hadamard_transform(&analytic_density(&p));
                    let cn = concurrence_numeric(&rho).unwrap().value;
                    assert!((ca - cx).abs() < 1e-10, "a vs x at {p:?}");
                    assert!((ca - cn).abs() < 1e-10, "a vs n at {p:?}: {ca} {cn}");
                }
            }
        }
    }

    #[test]
    fn concurrence_xstate_pure_bell() {
        let x = XState::new(0.5, 0.0, 0.0, 0.5, f64::cplx(0.5, 0.0)).unwrap();
        assert!((concurrence_xstate(&x) - 1.0).abs() < 1e-15);
        let mixed = XState::new(0.25, 0.25, 0.25, 0.25, f64::cplx(0.0, 0.0)).unwrap();
        assert!(concurrence_xstate(&mixed) < 1e-15);
    }

    #[test]
    fn entropy_cases() {
        let mixed = CMat::<f64>::identity(4).scale_re(0.25);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-12);
        assert!(von_neumann_entropy(&bell_phi_plus()).unwrap() < 1e-10);
        let half = CMat::<f64>::from_real(4, &[
            0.5, 0.0, 0.0, 0.0,
            0.0, 0.5, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ])
        .unwrap();
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_negative_eigenvalue() {
        let mut m = CMat::<f64>::identity(4).scale_re(0.5);
        m[(3, 3)] = f64::cplx(-0.5, 0.0);
        assert!(von_neumann_entropy(&m).is_err());
    }

    #[test]
    fn conditional_entropy_cases() {
        let mixed = CMat::<f64>::identity(4).scale_re(0.25);
        for (theta, phi) in [(0.0, 0.0), (0.7, 1.3), (PI / 2.0, 3.0)] {
            let (s, outcomes) = measure_conditional_entropy(&mixed, theta, phi).unwrap();
            assert!((s - 1.0).abs() < 1e-12);
            let psum: f64 = outcomes.iter().map(|(p, _)| p).sum();
            assert!((psum - 1.0).abs() < 1e-13);
            for (_, rho_a) in &outcomes {
                assert!((rho_a.trace().re - 1.0).abs() < 1e-13);
            }
        }
        // product state: measuring B cannot change A
        let rho_a = CMat::<f64>::from_real(2, &[0.7, 0.1, 0.1, 0.3]).unwrap();
        let rho_b = CMat::<f64>::from_real(2, &[0.6, 0.2, 0.2, 0.4]).unwrap();
        let prod = kron(&rho_a, &rho_b).unwrap();
        let s_a = von_neumann_entropy(&rho_a).unwrap();
        for (theta, phi) in [(0.0, 0.0), (1.0, 0.5), (1.5, 4.0)] {
            let (s, _) = measure_conditional_entropy(&prod, theta, phi).unwrap();
            assert!((s - s_a).abs() < 1e-12);
        }
        // Bell state measured along z: pure outcomes on A
        let (s, _) = measure_conditional_entropy(&bell_phi_plus(), 0.0, 0.0).unwrap();
        assert!(s < 1e-12);
    }

    #[test]
    fn discord_trivial_cases() {
        let mixed = CMat::<f64>::identity(4).scale_re(0.25);
        assert!(discord(&mixed).unwrap().value < 1e-12);
        // diagonal X state (alpha = 0): classical
        let p = params(1.5, 0.5, 2.0 * PI / 3.0);
        let d = discord(&hadamard_transform(&analytic_density(&p))).unwrap();
        assert!(d.value < 1e-9, "D = {}", d.value);
        // near-pure maximally entangled: 1 bit
        let p = params(50.0, 0.0, PI / 3.0);
        let d = discord(&hadamard_transform(&analytic_density(&p))).unwrap();
        assert!((d.value - 1.0).abs() < 1e-6, "D = {}", d.value);
    }

    #[test]
    fn discord_additivity() {
        for (beta, g, t) in [(1.5, 0.0, 1.0), (1.5, 0.5, 2.2), (0.5, 2.0, 0.7), (5.0, 0.1, 3.3)] {
            let d = discord_two_angle_at(&params(beta, g, t)).unwrap();
            assert!(
                (d.value + d.classical_correlation - d.mutual_information).abs() < 1e-9
            );
            assert!(d.value >= -1e-10);
        }
    }

    #[test]
    fn single_variable_matches_two_angle() {
        for beta in [0.5, 1.5] {
            for g in [0.0, 0.5] {
                for k in 0..=12 {
                    let t = k as f64 * PI / 9.0;
                    let p = params(beta, g, t);
                    let fast = discord_at(&p).unwrap();
                    let full = discord_two_angle_at(&p).unwrap();
                    assert!(
                        (fast.value - full.value).abs() < 1e-6,
                        "beta={beta} g={g} t={t}: {} vs {}",
                        fast.value,
                        full.value
                    );
                }
            }
        }
    }

    #[test]
    fn single_variable_rejects_asymmetric() {
        let x = XState {
            a: 0.4,
            b: 0.3,
            c: 0.2,
            d: 0.1,
            alpha: f64::cplx(0.0, 0.0),
        };
        assert!(discord_single_variable(&x).is_err());
    }

    #[test]
    fn discord_local_unitary_invariance() {
        // exp(-i angle/2 * n.sigma) on each side, deterministic angles
        let u_single = |ax: f64, ay: f64, az: f64, angle: f64| -> CMat<f64> {
            let n = (ax * ax + ay * ay + az * az).sqrt();
            let (nx, ny, nz) = (ax / n, ay / n, az / n);
            let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            CMat::from_vec(2, vec![
                f64::cplx(c, -s * nz),
                f64::cplx(-s * ny, -s * nx),
                f64::cplx(s * ny, -s * nx),
                f64::cplx(c, s * nz),
            ])
            .unwrap()
        };
        let p = params(1.5, 0.3, 1.1);
        let rho = hadamard_transform(&analytic_density(&p));
        let d0 = discord(&rho).unwrap().value;
        for (k, angle) in [0.9f64, 2.1, 4.4].iter().enumerate() {
            let ua = u_single(0.3 + k as f64, 1.0, 0.2, *angle);
            let ub = u_single(1.0, 0.1 * k as f64 + 0.5, 0.7, 1.7 - *angle / 3.0);
            let u = kron(&ua, &ub).unwrap();
            let rho2 = &(&u * &rho) * &u.adjoint();
            let d = discord(&rho2).unwrap().value;
            assert!((d - d0).abs() < 1e-8, "rotated discord {d} vs {d0}");
        }
    }

    #[test]
    fn monotone_decay_in_relaxation_rate() {
        let t = PI / 3.0;
        let mut prev_c = f64::INFINITY;
        let mut prev_d = f64::INFINITY;
        for g in [0.0, 0.1, 0.5, 2.0] {
            let p = params(1.5, g, t);
            let c = concurrence_at(&p);
            let d = discord_at(&p).unwrap().value;
            assert!(c <= prev_c + 1e-12);
            assert!(d <= prev_d + 1e-12);
            prev_c = c;
            prev_d = d;
        }
    }

    #[test]
    fn zero_discord_instants() {
        for n in 1..=3 {
            let t = 2.0 * PI * n as f64 / 3.0;
            let p = params(1.5, 0.5, t);
            assert!(discord_at(&p).unwrap().value < 1e-9);
            assert!(concurrence_at(&p) < 1e-12);
        }
    }
}
