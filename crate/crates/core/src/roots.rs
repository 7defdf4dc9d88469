//! Real roots of univariate polynomials via companion-matrix eigenvalues.

use nalgebra::DMatrix;

use crate::poly::Polynomial;

/// Relative size below which a leading coefficient is treated as cancelled.
const LEADING_REL_TOL: f64 = 1e-14;
/// Eigenvalues with `|im| <= IMAG_REL_TOL * (1 + |re|)` count as real. Double
/// roots split into conjugate pairs of size ~sqrt(eps), so this must be loose;
/// the merge step collapses the pair afterwards.
const IMAG_REL_TOL: f64 = 1e-6;
/// Schur iteration cap; nilpotent-like companions can otherwise stall.
const SCHUR_MAX_ITER: usize = 10_000;

/// All real roots of `p`, ascending, with roots closer than `merge_tol` merged.
///
/// Returns an empty list for constant polynomials, including the zero
/// polynomial; callers that care about the identically-zero case check
/// [`Polynomial::is_zero`] first.
pub fn real_roots(p: &Polynomial, merge_tol: f64) -> Vec<f64> {
    let p = p.trimmed(LEADING_REL_TOL);
    if p.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    // Exact factors of k give the root 0 and are divided out.
    let zeros = p.coeffs().iter().take_while(|&&c| c == 0.0).count();
    let q = Polynomial::new(p.coeffs()[zeros..].to_vec());
    let mut roots = match q.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-q.coeffs()[0] / q.coeffs()[1]],
        Some(n) => companion_real_eigenvalues(&q, n),
    };
    if zeros > 0 {
        roots.push(0.0);
    }
    for r in roots.iter_mut() {
        *r = polish(&p, *r);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last() {
            Some(&last) if (r - last).abs() <= merge_tol => {}
            _ => merged.push(r),
        }
    }
    merged
}

fn companion_real_eigenvalues(p: &Polynomial, n: usize) -> Vec<f64> {
    let c = p.coeffs();
    let lead = c[n];
    // Subdiagonal of ones, last column -a_i for the monic polynomial.
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let Some(schur) = m.try_schur(f64::EPSILON, SCHUR_MAX_ITER) else {
        return Vec::new();
    };
    schur
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= IMAG_REL_TOL * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// A few Newton steps, keeping only improvements.
fn polish(p: &Polynomial, mut x: f64) -> f64 {
    let dp = p.derivative();
    let mut fx = p.eval(x).abs();
    for _ in 0..4 {
        let d = dp.eval(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let candidate = x - p.eval(x) / d;
        let fc = p.eval(candidate).abs();
        if fc < fx {
            x = candidate;
            fx = fc;
        } else {
            break;
        }
    }
    x
}
