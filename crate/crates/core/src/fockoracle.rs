//! Truncated Fock-space oracle: matrix representations of the ladder
//! operators and of squeeze, rotation, and beam-splitter unitaries,
//! exponentiated exactly through the Hermitian eigendecomposition of
//! their generators. Used to cross-check the analytic routes at small
//! scale.

use std::f64::consts::PI;

use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::GridFunction;

/// Levels excluded from interior-block assertions; truncation corrupts
/// the highest levels first.
pub const TRUNCATION_MARGIN: usize = 10;

/// A dim x dim matrix representation together with its provenance.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub matrix: Array2<C64>,
    pub dim: usize,
    pub label: String,
}

impl TruncatedOperator {
    /// Max-abs entry of U†U - I over the interior block.
    pub fn interior_unitarity_defect(&self) -> f64 {
        let u = &self.matrix;
        let prod = u.mapv(|c| c.conj()).t().dot(u);
        let lim = self.dim.saturating_sub(TRUNCATION_MARGIN);
        let mut worst = 0.0f64;
        for i in 0..lim {
            for j in 0..lim {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[[i, j]] - expect).norm());
            }
        }
        worst
    }
}

/// Ladder matrices with a[n-1, n] = sqrt(n).
pub fn build_ladder(dim: usize) -> Result<(Array2<C64>, Array2<C64>)> {
    if dim < 2 {
        return Err(Error::Config(format!("dim = {dim} must be at least 2")));
    }
    let mut a = Array2::<C64>::zeros((dim, dim));
    for n in 1..dim {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let a_dag = a.t().to_owned();
    Ok((a, a_dag))
}

/// e^A for anti-Hermitian A, through the eigendecomposition of the
/// Hermitian iA; the result is unitary to machine precision.
pub fn expm_antihermitian(a: &Array2<C64>) -> Result<Array2<C64>> {
    let h = a.mapv(|c| C64::new(0.0, 1.0) * c);
    let defect = h
        .iter()
        .zip(h.t().iter())
        .map(|(x, y)| (x - y.conj()).norm())
        .fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::Asymmetric(defect));
    }
    // the eigensolver misreads a row-major buffer as its transpose, so
    // hand it a column-major copy
    let mut h_f = Array2::<C64>::zeros(h.raw_dim().f());
    h_f.assign(&h);
    let (vals, vecs) = h_f.eigh(UPLO::Lower)?;
    let d = Array2::from_diag(&vals.mapv(|t| C64::from_polar(1.0, -t)));
    Ok(vecs.dot(&d).dot(&vecs.mapv(|c| c.conj()).t()))
}

/// Single-mode squeeze generator (z a†² - z̄ a²)/2, built anti-Hermitian
/// by construction.
pub fn squeeze_generator(z: C64, dim: usize) -> Result<Array2<C64>> {
    let (a, _) = build_ladder(dim)?;
    let a2 = a.dot(&a);
    let ad2 = a2.mapv(|c| c.conj()).t().to_owned();
    Ok((ad2.mapv(|c| c * z) - a2.mapv(|c| c * z.conj())).mapv(|c| c * 0.5))
}

fn trailing_population(column: &Array1<C64>, levels: usize) -> f64 {
    let n = column.len();
    column
        .iter()
        .skip(n.saturating_sub(levels))
        .map(|c| c.norm_sqr())
        .sum()
}

/// S(z) = exp((z a†² - z̄ a²)/2) on the truncated space.
pub fn squeeze_matrix(z: C64, dim: usize) -> Result<TruncatedOperator> {
    if z.norm() > 1.5 {
        return Err(Error::Config(format!(
            "|z| = {:.3} exceeds the truncation-quality bound 1.5",
            z.norm()
        )));
    }
    let matrix = expm_antihermitian(&squeeze_generator(z, dim)?)?;
    let pop = trailing_population(&matrix.column(0).to_owned(), TRUNCATION_MARGIN);
    if pop > 1e-10 {
        return Err(Error::Coverage(format!(
            "top-{TRUNCATION_MARGIN} population of S|0> is {pop:.3e}; dim = {dim} truncates too hard"
        )));
    }
    Ok(TruncatedOperator { matrix, dim, label: format!("S({z})") })
}

/// R(phi) = exp(i phi a†a): diagonal phases, exactly unitary.
pub fn rotation_matrix(phi: f64, dim: usize) -> Result<TruncatedOperator> {
    if dim < 2 {
        return Err(Error::Config(format!("dim = {dim} must be at least 2")));
    }
    let diag = Array1::from_iter((0..dim).map(|n| C64::from_polar(1.0, phi * n as f64)));
    Ok(TruncatedOperator {
        matrix: Array2::from_diag(&diag),
        dim,
        label: format!("R({phi})"),
    })
}

/// Kronecker product, row-major mode ordering |n1 n2> = |n1> (x) |n2>.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::<C64>::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[[i * rb + k, j * cb + l]] = a[[i, j]] * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Two-mode squeeze generator z a1†a2† - z̄ a1a2 on the tensor space.
pub fn two_mode_squeeze_generator(z: C64, dim_per_mode: usize) -> Result<Array2<C64>> {
    let (a, _) = build_ladder(dim_per_mode)?;
    let eye = Array2::<C64>::eye(dim_per_mode);
    let a1 = kron(&a, &eye);
    let a2 = kron(&eye, &a);
    let pair = a1.dot(&a2);
    let pair_dag = pair.mapv(|c| c.conj()).t().to_owned();
    Ok(pair_dag.mapv(|c| c * z) - pair.mapv(|c| c * z.conj()))
}

/// S2(z) = exp(z a1†a2† - z̄ a1a2).
pub fn two_mode_squeeze_matrix(z: C64, dim_per_mode: usize) -> Result<TruncatedOperator> {
    if dim_per_mode > 40 {
        return Err(Error::Config(format!(
            "dim_per_mode = {dim_per_mode} exceeds the tractable bound 40"
        )));
    }
    let matrix = expm_antihermitian(&two_mode_squeeze_generator(z, dim_per_mode)?)?;
    let pop = trailing_population(&matrix.column(0).to_owned(), TRUNCATION_MARGIN * dim_per_mode);
    if pop > 1e-10 {
        return Err(Error::Coverage(format!(
            "trailing population of S2|00> is {pop:.3e}; dim_per_mode = {dim_per_mode} truncates too hard"
        )));
    }
    Ok(TruncatedOperator {
        matrix,
        dim: dim_per_mode * dim_per_mode,
        label: format!("S2({z})"),
    })
}

/// 50/50-class beam splitter exp(theta (a1†a2 - a1a2†)).
pub fn beam_splitter(theta: f64, dim_per_mode: usize) -> Result<TruncatedOperator> {
    let (a, _) = build_ladder(dim_per_mode)?;
    let eye = Array2::<C64>::eye(dim_per_mode);
    let a1 = kron(&a, &eye);
    let a2 = kron(&eye, &a);
    let cross = a1.mapv(|c| c.conj()).t().dot(&a2);
    let cross_dag = cross.mapv(|c| c.conj()).t().to_owned();
    let gen = (cross - cross_dag).mapv(|c| c * theta);
    Ok(TruncatedOperator {
        matrix: expm_antihermitian(&gen)?,
        dim: dim_per_mode * dim_per_mode,
        label: format!("B({theta})"),
    })
}

/// Hermite functions phi_0..phi_{n_max} at x by the stable normalized
/// three-term recurrence.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let phi0 = PI.powf(-0.25) * (-x * x / 2.0).exp();
    out.push(phi0);
    if n_max == 0 {
        return out;
    }
    out.push(2.0f64.sqrt() * x * phi0);
    for n in 2..=n_max {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * x * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
        out.push(next);
    }
    out
}

/// Quadrature overlaps <phi_n, psi> for n < dim.
pub fn hermite_overlaps(psi: &GridFunction, dim: usize) -> Result<Vec<C64>> {
    let h = psi.spacing();
    // highest momentum of phi_{dim-1} is ~ sqrt(2 dim - 1); demand
    // several samples per oscillation
    let p_max = (2.0 * dim as f64 - 1.0).sqrt();
    if h > PI / (2.0 * p_max) {
        return Err(Error::Coverage(format!(
            "grid spacing {h:.4} under-resolves Hermite order {}",
            dim - 1
        )));
    }
    let n = psi.n_points();
    let mut acc = vec![C64::new(0.0, 0.0); dim];
    for i in 0..n {
        let w = if i == 0 || i + 1 == n { 0.5 * h } else { h };
        let basis = hermite_functions(dim - 1, psi.x_at(i));
        let v = psi.samples()[i] * w;
        for (a, b) in acc.iter_mut().zip(&basis) {
            *a += v * b;
        }
    }
    Ok(acc)
}

/// Cross-representation comparison of a grid state against a Fock vector.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub max_dev: f64,
    pub l2_dev: f64,
    pub dim: usize,
    pub margin: usize,
}

/// Projects the grid state onto the first `dim` Hermite functions and
/// compares amplitudes against `fock_state` on the interior block.
pub fn oracle_compare(
    analytic_state: &GridFunction,
    fock_state: &[C64],
    dim: usize,
) -> Result<CompareReport> {
    if fock_state.len() < dim {
        return Err(Error::ShapeMismatch(format!(
            "Fock vector has {} entries, needs {dim}",
            fock_state.len()
        )));
    }
    let amps = hermite_overlaps(analytic_state, dim)?;
    let lim = dim.saturating_sub(TRUNCATION_MARGIN);
    let mut max_dev = 0.0f64;
    let mut l2 = 0.0;
    for i in 0..lim {
        let d = (amps[i] - fock_state[i]).norm();
        max_dev = max_dev.max(d);
        l2 += d * d;
    }
    Ok(CompareReport { max_dev, l2_dev: l2.sqrt(), dim, margin: TRUNCATION_MARGIN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singlemode::{apply_exact, squeezed_vacuum};
    use crate::states::{make_coherent, make_vacuum, GridSpec};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ladder_matrix_elements() {
        let (a, ad) = build_ladder(2).unwrap();
        assert_eq!(a[[0, 1]], c(1.0, 0.0));
        assert_eq!(a[[0, 0]], c(0.0, 0.0));
        assert_eq!(a[[1, 0]], c(0.0, 0.0));
        assert_eq!(ad[[1, 0]], c(1.0, 0.0));

        let dim = 12;
        let (a, ad) = build_ladder(dim).unwrap();
        let comm = a.dot(&ad) - ad.dot(&a);
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i != j {
                    0.0
                } else if i == dim - 1 {
                    -((dim - 1) as f64)
                } else {
                    1.0
                };
                assert_abs_diff_eq!(comm[[i, j]].re, expect, epsilon = 1e-12);
                assert_abs_diff_eq!(comm[[i, j]].im, 0.0, epsilon = 1e-12);
            }
        }
        let number = ad.dot(&a);
        for i in 0..dim {
            assert_abs_diff_eq!(number[[i, i]].re, i as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn squeeze_identity_and_parity() {
        let s0 = squeeze_matrix(c(0.0, 0.0), 20).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(s0.matrix[[i, j]].re, expect, epsilon = 1e-13);
            }
        }

        let s = squeeze_matrix(c(0.5, 0.0), 60).unwrap();
        for n in (1..60).step_by(2) {
            assert!(
                s.matrix[[n, 0]].norm() <= 1e-14,
                "odd amplitude {n}: {:.3e}",
                s.matrix[[n, 0]].norm()
            );
        }
        assert!(s.interior_unitarity_defect() <= 1e-8);
    }

    #[test]
    fn squeeze_amplitude_ratio_vs_quadrature() {
        // |<2|S|0>/<0|S|0>| against overlaps of the closed-form squeezed
        // vacuum with Hermite functions
        let s = squeeze_matrix(c(0.5, 0.0), 60).unwrap();
        let matrix_ratio = (s.matrix[[2, 0]] / s.matrix[[0, 0]]).norm();
        let sv = squeezed_vacuum(0.5, GridSpec::default()).unwrap();
        let amps = hermite_overlaps(&sv, 3).unwrap();
        let overlap_ratio = (amps[2] / amps[0]).norm();
        assert_abs_diff_eq!(matrix_ratio, overlap_ratio, epsilon = 1e-7);
    }

    #[test]
    fn squeeze_guards() {
        assert!(matches!(squeeze_matrix(c(2.0, 0.0), 80), Err(Error::Config(_))));
        // strong squeeze at small dim: trailing population too large
        assert!(matches!(
            squeeze_matrix(c(1.4, 0.0), 16),
            Err(Error::Coverage(_))
        ));
    }

    #[test]
    fn rotation_diagonal() {
        let r0 = rotation_matrix(0.0, 8).unwrap();
        for i in 0..8 {
            assert_eq!(r0.matrix[[i, i]], c(1.0, 0.0));
        }
        let rpi = rotation_matrix(PI, 8).unwrap();
        for i in 0..8 {
            let expect = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(rpi.matrix[[i, i]].re, expect, epsilon = 1e-14);
            assert_abs_diff_eq!(rpi.matrix[[i, i]].im, 0.0, epsilon = 1e-13);
        }
        assert!(rpi.interior_unitarity_defect() < 1e-14);
    }

    #[test]
    fn rotation_removes_squeeze_phase() {
        // R†(theta/2) H(z) R(theta/2) = H(r) for z = r e^{i theta}
        let (r, theta, dim) = (0.4, PI / 3.0, 50);
        let z = C64::from_polar(r, theta);
        let rot = rotation_matrix(theta / 2.0, dim).unwrap().matrix;
        let rot_dag = rot.mapv(|v| v.conj()).t().to_owned();
        let conjugated = rot_dag.dot(&squeeze_generator(z, dim).unwrap()).dot(&rot);
        let plain = squeeze_generator(c(r, 0.0), dim).unwrap();
        let lim = dim - TRUNCATION_MARGIN;
        for i in 0..lim {
            for j in 0..lim {
                assert!(
                    (conjugated[[i, j]] - plain[[i, j]]).norm() < 1e-9,
                    "entry ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn two_mode_pair_structure() {
        let dim = 20;
        let s0 = two_mode_squeeze_matrix(c(0.0, 0.0), dim).unwrap();
        for i in 0..dim * dim {
            assert_abs_diff_eq!(
                s0.matrix[[i, i]].re,
                1.0,
                epsilon = 1e-13
            );
        }
        let s = two_mode_squeeze_matrix(c(0.3, 0.0), dim).unwrap();
        let col = s.matrix.column(0);
        for n in 0..dim {
            for m in 0..dim {
                if n != m {
                    assert!(
                        col[n * dim + m].norm() <= 1e-12,
                        "<{n},{m}|S2|0,0> = {:.3e}",
                        col[n * dim + m].norm()
                    );
                }
            }
        }
    }

    #[test]
    fn beam_splitter_conjugation() {
        // B† S1(z) S2(-z) B = S2(z) on the interior block
        let (r, dim) = (0.3, 25);
        let z = c(r, 0.0);
        let eye = Array2::<C64>::eye(dim);
        // factors built straight from the generator: the constructor's
        // trailing-population guard is marginal at this dimension
        let s_plus = expm_antihermitian(&squeeze_generator(z, dim).unwrap()).unwrap();
        let s_minus = expm_antihermitian(&squeeze_generator(-z, dim).unwrap()).unwrap();
        let product = kron(&s_plus, &eye).dot(&kron(&eye, &s_minus));
        let b = beam_splitter(PI / 4.0, dim).unwrap().matrix;
        let b_dag = b.mapv(|v| v.conj()).t().to_owned();
        let lhs = b_dag.dot(&product).dot(&b);
        let rhs = two_mode_squeeze_matrix(z, dim).unwrap().matrix;
        // truncation corrupts total-photon shells from N = dim downward,
        // fed back at order tanh(r)^(dim - N); shells N <= 10 are clean
        // at this dimension
        let shell_cut = 11;
        let interior: Vec<usize> = (0..dim * dim)
            .filter(|i| i / dim + i % dim < shell_cut)
            .collect();
        let mut worst = 0.0f64;
        for &i in &interior {
            for &j in &interior {
                worst = worst.max((lhs[[i, j]] - rhs[[i, j]]).norm());
            }
        }
        assert!(worst < 1e-6, "conjugation deviation {worst:.3e}");
    }

    #[test]
    fn hermite_recurrence_values() {
        // phi_2(x) = (2x^2 - 1)/sqrt(2) * pi^{-1/4} e^{-x^2/2}
        let x = 0.8;
        let phi = hermite_functions(2, x);
        let expect = (2.0 * x * x - 1.0) / 2.0f64.sqrt() * PI.powf(-0.25) * (-x * x / 2.0).exp();
        assert_abs_diff_eq!(phi[2], expect, epsilon = 1e-14);
        // orthonormality via quadrature on a wide grid
        let spec = GridSpec::new(-12.0, 12.0, 2048);
        let g = GridFunction::from_fn(spec, |x| c(hermite_functions(6, x)[6], 0.0)).unwrap();
        assert_abs_diff_eq!(g.norm(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn hermite_overlap_resolution_guard() {
        let coarse = make_vacuum(GridSpec::new(-8.0, 8.0, 64)).unwrap();
        assert!(matches!(
            hermite_overlaps(&coarse, 60),
            Err(Error::Coverage(_))
        ));
    }

    #[test]
    fn oracle_compare_vacuum() {
        let vac = make_vacuum(GridSpec::default()).unwrap();
        let mut e0 = vec![c(0.0, 0.0); 30];
        e0[0] = c(1.0, 0.0);
        let rep = oracle_compare(&vac, &e0, 30).unwrap();
        assert!(rep.max_dev <= 1e-10, "{:.3e}", rep.max_dev);
        assert_eq!(rep.margin, TRUNCATION_MARGIN);
    }

    #[test]
    fn oracle_compare_squeezed_vacuum() {
        let dim = 60;
        // wide grid: overlaps with order-59 Hermite functions pick up
        // tail mass past |x| = 8
        let vac = make_vacuum(GridSpec::new(-12.0, 12.0, 4096)).unwrap();
        let analytic = apply_exact(0.5, &vac).unwrap();
        let s = squeeze_matrix(c(0.5, 0.0), dim).unwrap();
        let fock: Vec<C64> = s.matrix.column(0).to_vec();
        let rep = oracle_compare(&analytic, &fock, dim).unwrap();
        assert!(rep.l2_dev <= 1e-6, "L2 deviation {:.3e}", rep.l2_dev);
    }

    #[test]
    fn oracle_compare_coherent_poissonian() {
        let alpha = 0.8;
        let dim = 40;
        let state = make_coherent(c(alpha, 0.0), GridSpec::default()).unwrap();
        let amps = hermite_overlaps(&state, dim).unwrap();
        let mut log_fact = 0.0;
        for (n, amp) in amps.iter().enumerate() {
            if n > 0 {
                log_fact += (n as f64).ln();
            }
            let expect = (-alpha * alpha / 2.0 + (n as f64) * alpha.ln() - 0.5 * log_fact).exp();
            assert!(
                (amp.re - expect).abs() < 1e-8 && amp.im.abs() < 1e-8,
                "n = {n}: {amp} vs {expect}"
            );
        }
    }
}


