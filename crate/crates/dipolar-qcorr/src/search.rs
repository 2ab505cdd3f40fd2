//! Deterministic scalar minimization: dense grid scan followed by
//! golden-section refinement. No randomness, so repeated runs are
//! bit-identical.

use crate::scalar::Scalar;

/// Golden-section search for the minimum of `f` on `[a, b]`.
/// Shrinks the bracket until its width is below `xtol`.
pub fn golden_section_min<T: Scalar>(
    f: impl Fn(T) -> T,
    mut a: T,
    mut b: T,
    xtol: T,
) -> (T, T) {
    let inv_phi = T::real(0.618_033_988_749_894_9);
    let resp = T::one() - inv_phi;

    let mut x1 = a + resp * (b - a);
    let mut x2 = b - resp * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    // width shrinks geometrically; cap guards pathological tolerances
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + resp * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - resp * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Grid scan over `points` equally spaced samples of `[lo, hi]`, keeping
/// the first (smallest-abscissa) minimum, then golden-section refinement
/// on the bracket around it.
pub fn grid_then_golden_min<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    points: usize,
    xtol: T,
) -> (T, T) {
    assert!(points >= 2);
    let step = (hi - lo) / T::from_usize(points - 1).unwrap();
    let mut best_i = 0usize;
    let mut best_f = f(lo);
    for i in 1..points {
        let x = lo + step * T::from_usize(i).unwrap();
        let fx = f(x);
        if fx < best_f {
            best_f = fx;
            best_i = i;
        }
    }
    let xg = lo + step * T::from_usize(best_i).unwrap();
    let a = if best_i == 0 { lo } else { lo + step * T::from_usize(best_i - 1).unwrap() };
    let b = if best_i == points - 1 { hi } else { lo + step * T::from_usize(best_i + 1).unwrap() };
    refine_bracket(&f, xg, best_f, a, b, lo, hi, xtol)
}

/// Golden-section plus parabolic polish on one bracket; the grid winner
/// stands if refinement does not actually improve on it.
fn refine_bracket<T: Scalar>(
    f: impl Fn(T) -> T,
    xg: T,
    fg: T,
    a: T,
    b: T,
    lo: T,
    hi: T,
    xtol: T,
) -> (T, T) {
    let (x, fx) = golden_section_min(&f, a, b, xtol);
    if fg <= fx {
        return (xg, fg);
    }
    polish_parabolic(&f, x, fx, lo, hi)
}

/// Variant for curves with near-degenerate minima: every grid-local
/// minimum whose achievable depth is within reach of the global one is
/// refined, and among refined minima agreeing to within `tie_tol` the
/// smallest abscissa wins.
pub fn grid_then_golden_min_tied<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    points: usize,
    xtol: T,
    tie_tol: T,
) -> (T, T) {
    assert!(points >= 2);
    let step = (hi - lo) / T::from_usize(points - 1).unwrap();
    let xs: Vec<T> = (0..points)
        .map(|i| if i == points - 1 { hi } else { lo + step * T::from_usize(i).unwrap() })
        .collect();
    let fs: Vec<T> = xs.iter().map(|&x| f(x)).collect();
    let grid_best = fs.iter().copied().fold(T::infinity(), T::min);

    let mut refined: Vec<(T, T)> = Vec::new();
    for i in 0..points {
        let prev = if i > 0 { fs[i - 1] } else { T::infinity() };
        let next = if i + 1 < points { fs[i + 1] } else { T::infinity() };
        if !(fs[i] <= prev && fs[i] <= next) {
            continue;
        }
        if i > 0 && fs[i] == fs[i - 1] {
            continue; // plateau: the first index represents it
        }
        // generous bound on how far refinement can still descend here
        let side = |nb: T| if nb.is_finite() { nb - fs[i] } else { T::zero() };
        let gain = (side(prev) + side(next)) * T::real(2.0);
        if fs[i] - gain > grid_best + tie_tol {
            continue;
        }
        let a = if i == 0 { lo } else { xs[i - 1] };
        let b = if i + 1 == points { hi } else { xs[i + 1] };
        refined.push(refine_bracket(&f, xs[i], fs[i], a, b, lo, hi, xtol));
    }

    let best = refined.iter().map(|&(_, v)| v).fold(T::infinity(), T::min);
    for &(x, v) in &refined {
        if v <= best + tie_tol {
            return (x, v); // candidates are in ascending x order
        }
    }
    unreachable!("at least one grid-local minimum always exists")
}

/// Maximization counterpart of [`grid_then_golden_min_tied`].
pub fn grid_then_golden_max_tied<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    points: usize,
    xtol: T,
    tie_tol: T,
) -> (T, T) {
    let (x, neg) = grid_then_golden_min_tied(|x| -f(x), lo, hi, points, xtol, tie_tol);
    (x, -neg)
}

/// Parabolic-vertex polish. Golden-section alone locates a smooth minimum
/// only to about sqrt(eps) in x, because near the bottom the function values
/// it compares differ by less than roundoff. A three-point parabola fit with
/// a spacing wide enough for the quadratic term to dominate the noise
/// recovers several more digits of the abscissa.
fn polish_parabolic<T: Scalar>(f: impl Fn(T) -> T, x: T, fx: T, lo: T, hi: T) -> (T, T) {
    let h = (hi - lo) * T::real(1e-5);
    let (xl, xr) = (x - h, x + h);
    if xl < lo || xr > hi {
        return (x, fx);
    }
    let (fl, fr) = (f(xl), f(xr));
    let curv = fl + fr - fx - fx;
    if !(fl > fx) || !(fr > fx) || !(curv > T::zero()) {
        return (x, fx);
    }
    let half = T::real(0.5);
    let xv = x - half * h * (fr - fl) / curv;
    let fv = f(xv);
    if fv <= fx {
        (xv, fv)
    } else {
        (x, fx)
    }
}

/// Maximization counterpart of [`grid_then_golden_min`].
pub fn grid_then_golden_max<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    points: usize,
    xtol: T,
) -> (T, T) {
    let (x, neg) = grid_then_golden_min(|x| -f(x), lo, hi, points, xtol);
    (x, -neg)
}
