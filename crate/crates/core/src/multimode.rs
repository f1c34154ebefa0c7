//! Two-mode and N-mode squeezing: the sigma_1 to sigma_3 reduction, the
//! Takagi-style diagonalization e^{-i Phi} Z e^{-i Phi^T} = Z_D, tensor
//! dilation of N-dimensional states, and the multimode eigenvalue lattice.

use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::{Eig, Eigh, UPLO};
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::singlemode::scale_line;
use crate::states::{max_asymmetry, GridSpec, TaylorState};

const SYMMETRY_TOL: f64 = 1e-12;
const DEGENERACY_GAP: f64 = 1e-8;
const PHASE_CLUSTER_TOL: f64 = 1e-8;

/// Takagi-style factorization output: Hermitian Phi and nonnegative
/// diagonal Z_D with e^{-i Phi} Z e^{-i Phi^T} = Z_D.
#[derive(Debug, Clone)]
pub struct TakagiResult {
    pub phi: Array2<C64>,
    /// diagonal entries, descending; nonnegative by the module's phase
    /// convention (phases absorbed into Phi)
    pub z_d: Vec<f64>,
    /// Frobenius norm of e^{-i Phi} Z e^{-i Phi^T} - Z_D
    pub residual: f64,
    /// a singular-value gap fell below 1e-8; Phi is then non-unique
    pub degenerate: bool,
}

fn c_to_pair(c: C64) -> serde_json::Value {
    serde_json::json!([c.re, c.im])
}

/// N x N complex matrix as nested JSON arrays of [re, im].
pub fn matrix_to_json(m: &Array2<C64>) -> serde_json::Value {
    serde_json::Value::Array(
        m.rows()
            .into_iter()
            .map(|row| serde_json::Value::Array(row.iter().map(|&c| c_to_pair(c)).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &serde_json::Value) -> Result<Array2<C64>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix JSON must be an array of rows".into()))?;
    let n = rows.len();
    let mut m = Array2::zeros((n, n));
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| Error::Parse(format!("row {i} is not an array of length {n}")))?;
        for (j, e) in row.iter().enumerate() {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("entry ({i},{j}) is not [re, im]")))?;
            let re = pair[0].as_f64().ok_or_else(|| Error::Parse("non-numeric entry".into()))?;
            let im = pair[1].as_f64().ok_or_else(|| Error::Parse("non-numeric entry".into()))?;
            m[[i, j]] = C64::new(re, im);
        }
    }
    Ok(m)
}

impl TakagiResult {
    pub fn n_modes(&self) -> usize {
        self.z_d.len()
    }

    pub fn z_d_matrix(&self) -> Array2<C64> {
        Array2::from_diag(&Array1::from_iter(
            self.z_d.iter().map(|&s| C64::new(s, 0.0)),
        ))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "Phi": matrix_to_json(&self.phi),
            "Z_D": matrix_to_json(&self.z_d_matrix()),
            "residual": self.residual,
        })
    }
}

/// e^{i Phi} for Hermitian Phi, through its spectral decomposition; the
/// result is unitary to machine precision.
pub fn expi_hermitian(phi: &Array2<C64>) -> Result<Array2<C64>> {
    let asym = phi
        .iter()
        .zip(phi.t().iter())
        .map(|(a, b)| (a - b.conj()).norm())
        .fold(0.0, f64::max);
    if asym > 1e-10 {
        return Err(Error::Asymmetric(asym));
    }
    // the eigensolver misreads a row-major buffer as its transpose, so
    // hand it a column-major copy
    let mut phi_f = Array2::<C64>::zeros(phi.raw_dim().f());
    phi_f.assign(&phi);
    let (vals, vecs) = phi_f.eigh(UPLO::Lower)?;
    let d = Array2::from_diag(&vals.mapv(|t| C64::from_polar(1.0, t)));
    Ok(vecs.dot(&d).dot(&vecs.mapv(|c| c.conj()).t()))
}

fn frobenius(m: &Array2<C64>) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Unitary columns u_k with Z conj(u_k) = s_k u_k, s_k descending, via
/// the real symmetric doubling [[Re Z, Im Z], [Im Z, -Re Z]].
fn takagi_vectors(z: &Array2<C64>) -> Result<(Array2<C64>, Vec<f64>)> {
    let n = z.nrows();
    let mut b = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            b[[i, j]] = z[[i, j]].re;
            b[[i, j + n]] = z[[i, j]].im;
            b[[i + n, j]] = z[[i, j]].im;
            b[[i + n, j + n]] = -z[[i, j]].re;
        }
    }
    let (vals, vecs) = b.eigh(UPLO::Lower)?;
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let zero_tol = 1e-12 * scale.max(1.0);
    // eigenvalues come in +-s pairs; the top n are the singular values
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let mut u = Array2::<C64>::zeros((n, n));
    let mut s = Vec::with_capacity(n);
    // chosen real doubled vectors, for re-orthogonalizing a null cluster
    let mut chosen: Vec<Array1<f64>> = Vec::new();
    let mut col = 0usize;
    // candidates for the null space: every eigenvector with |eigval| ~ 0
    let null_pool: Vec<Array1<f64>> = order
        .iter()
        .filter(|&&k| vals[k].abs() < zero_tol)
        .map(|&k| vecs.column(k).to_owned())
        .collect();
    let j_map = |v: &Array1<f64>| -> Array1<f64> {
        // (x, y) -> (-y, x); maps the +s eigenspace to the -s eigenspace
        let mut out = Array1::zeros(2 * n);
        for i in 0..n {
            out[i] = -v[i + n];
            out[i + n] = v[i];
        }
        out
    };
    for &k in &order {
        if col == n {
            break;
        }
        let sv = vals[k];
        if sv < -zero_tol {
            break;
        }
        let v: Array1<f64> = if sv.abs() >= zero_tol {
            vecs.column(k).to_owned()
        } else {
            // null cluster: the +0/-0 split is arbitrary, so pick vectors
            // orthogonal to every chosen w and to J w
            let mut picked = None;
            for cand in &null_pool {
                let mut v = cand.clone();
                for w in &chosen {
                    let jw = j_map(w);
                    let p1 = v.dot(w);
                    let p2 = v.dot(&jw);
                    v = v - p1 * w - p2 * &jw;
                }
                let nrm = v.dot(&v).sqrt();
                if nrm > 1e-6 {
                    picked = Some(v / nrm);
                    break;
                }
            }
            picked.ok_or_else(|| {
                Error::Linalg("null-space basis exhausted in Takagi doubling".into())
            })?
        };
        s.push(sv.max(0.0));
        for i in 0..n {
            u[[i, col]] = C64::new(v[i], v[i + n]);
        }
        chosen.push(v);
        col += 1;
    }
    if col < n {
        return Err(Error::Linalg("doubled spectrum lost its +s half".into()));
    }
    // sign convention: the largest-modulus entry of each column is made
    // to have positive real part (positive imaginary part on ties at
    // zero); only a global sign is free per column
    for k in 0..n {
        let mut best = 0usize;
        for i in 1..n {
            if u[[i, k]].norm() > u[[best, k]].norm() {
                best = i;
            }
        }
        let lead = u[[best, k]];
        if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
            for i in 0..n {
                u[[i, k]] = -u[[i, k]];
            }
        }
    }
    Ok((u, s))
}

/// Hermitian logarithm: Phi with e^{i Phi} = U for unitary U, eigenphases
/// in (-pi, pi]. Degenerate phase clusters are orthonormalized jointly.
fn hermitian_log_unitary(u: &Array2<C64>) -> Result<Array2<C64>> {
    let n = u.nrows();
    let (vals, vecs) = u.eig()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].arg().partial_cmp(&vals[j].arg()).unwrap());
    let mut phi = Array2::<C64>::zeros((n, n));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && (vals[order[end]].arg() - vals[order[end - 1]].arg()).abs() < PHASE_CLUSTER_TOL
        {
            end += 1;
        }
        let cols: Vec<usize> = order[start..end].to_vec();
        let theta = cols.iter().map(|&k| vals[k].arg()).sum::<f64>() / cols.len() as f64;
        // orthonormalize the cluster basis by modified Gram-Schmidt
        let mut basis: Vec<Array1<C64>> = Vec::with_capacity(cols.len());
        for &k in &cols {
            let mut v = vecs.column(k).to_owned();
            for q in &basis {
                let p: C64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                v = v - p * q;
            }
            let nrm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if nrm < 1e-8 {
                return Err(Error::Linalg("defective cluster in unitary logarithm".into()));
            }
            basis.push(v / nrm);
        }
        for q in &basis {
            for i in 0..n {
                for j in 0..n {
                    phi[[i, j]] += theta * q[i] * q[j].conj();
                }
            }
        }
        start = end;
    }
    // Hermitize to remove roundoff skew
    let phit = phi.mapv(|c| c.conj()).t().to_owned();
    let phi = (&phi + &phit) * C64::new(0.5, 0.0);
    // the backend may hand back eigenvectors of U^T (layout-dependent);
    // then the log built from them is Phi^T = conj(Phi), so pick the
    // candidate that actually exponentiates to U
    let alt = phi.mapv(|c| c.conj());
    let dev = |p: &Array2<C64>| -> Result<f64> { Ok(frobenius(&(&expi_hermitian(p)? - u))) };
    if dev(&phi)? <= dev(&alt)? {
        Ok(phi)
    } else {
        Ok(alt)
    }
}

/// Diagonalizes a complex symmetric Z as e^{-i Phi} Z e^{-i Phi^T} = Z_D
/// with Hermitian Phi, through the symmetric singular-value factorization
/// Z = U Z_D U^T and the principal Hermitian logarithm of U.
pub fn takagi(z: &Array2<C64>) -> Result<TakagiResult> {
    let n = z.nrows();
    if n == 0 || z.ncols() != n {
        return Err(Error::Config(format!("matrix must be square, got {:?}", z.dim())));
    }
    if n > 64 {
        return Err(Error::Config(format!("N = {n} exceeds the supported 64 modes")));
    }
    let asym = max_asymmetry(z);
    if asym > SYMMETRY_TOL {
        return Err(Error::Asymmetric(asym));
    }
    let (u, s) = takagi_vectors(z)?;
    let phi = hermitian_log_unitary(&u)?;
    let degenerate = s.windows(2).any(|w| w[0] - w[1] < DEGENERACY_GAP);
    // residual through the exponential of Phi, so it validates Phi itself
    let w = expi_hermitian(&phi)?;
    let w_dag = w.mapv(|c| c.conj()).t().to_owned();
    let conj_w = w.mapv(|c| c.conj());
    let reduced = w_dag.dot(z).dot(&conj_w);
    let z_d_mat = Array2::from_diag(&Array1::from_iter(s.iter().map(|&v| C64::new(v, 0.0))));
    let residual = frobenius(&(&reduced - &z_d_mat));
    Ok(TakagiResult { phi, z_d: s, residual, degenerate })
}

/// Random complex symmetric matrix with entries in the unit disk,
/// symmetrized as (A + A^T)/2.
pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> Array2<C64> {
    let mut a = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            loop {
                let re: f64 = rng.random_range(-1.0..1.0);
                let im: f64 = rng.random_range(-1.0..1.0);
                if re * re + im * im <= 1.0 {
                    a[[i, j]] = C64::new(re, im);
                    break;
                }
            }
        }
    }
    let at = a.t().to_owned();
    (&a + &at) * C64::new(0.5, 0.0)
}

/// Residuals of the two-mode reduction identities built from explicit
/// 2 x 2 matrix exponentials.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TwoModeRotationReport {
    /// max-abs entry of e^{i pi/4 sigma_2} sigma_1 e^{-i pi/4 sigma_2} - sigma_3
    pub pauli_residual: f64,
    /// max-abs entry of G (z sigma_1) G^T - diag(z, -z) at z = 0.3 + 0.4i
    pub generator_residual: f64,
    /// max-abs entry of the theta = 0 conjugation minus sigma_1
    pub identity_residual: f64,
}

fn expm2(m: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    // scaling and squaring with a Taylor core; ample for 2 x 2 inputs of
    // modest norm
    let norm = m.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    let k = (norm.log2().ceil().max(0.0) as u32) + 4;
    let h = 0.5f64.powi(k as i32);
    let a = [
        [m[0][0] * h, m[0][1] * h],
        [m[1][0] * h, m[1][1] * h],
    ];
    let mul = |x: &[[C64; 2]; 2], y: &[[C64; 2]; 2]| -> [[C64; 2]; 2] {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    out[i][j] += x[i][l] * y[l][j];
                }
            }
        }
        out
    };
    let mut result = [
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    ];
    let mut term = result;
    for n in 1..=20 {
        term = mul(&term, &a);
        for row in &mut term {
            for v in row {
                *v /= n as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..k {
        result = mul(&result, &result);
    }
    result
}

pub fn two_mode_rotation_identity() -> TwoModeRotationReport {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let sigma1 = [[zero, one], [one, zero]];
    let sigma2 = [[zero, -i], [i, zero]];
    let sigma3 = [[one, zero], [zero, -one]];
    let mul = |x: &[[C64; 2]; 2], y: &[[C64; 2]; 2]| -> [[C64; 2]; 2] {
        let mut out = [[zero; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for l in 0..2 {
                    out[a][b] += x[a][l] * y[l][b];
                }
            }
        }
        out
    };
    let conjugate = |theta: f64, m: &[[C64; 2]; 2]| -> [[C64; 2]; 2] {
        let gen_plus = [
            [sigma2[0][0] * i * theta, sigma2[0][1] * i * theta],
            [sigma2[1][0] * i * theta, sigma2[1][1] * i * theta],
        ];
        let gen_minus = [
            [-gen_plus[0][0], -gen_plus[0][1]],
            [-gen_plus[1][0], -gen_plus[1][1]],
        ];
        mul(&mul(&expm2(&gen_plus), m), &expm2(&gen_minus))
    };
    let max_dev = |x: &[[C64; 2]; 2], y: &[[C64; 2]; 2]| -> f64 {
        let mut worst = 0.0f64;
        for a in 0..2 {
            for b in 0..2 {
                worst = worst.max((x[a][b] - y[a][b]).norm());
            }
        }
        worst
    };
    let rotated = conjugate(std::f64::consts::FRAC_PI_4, &sigma1);
    let pauli_residual = max_dev(&rotated, &sigma3);
    // the generator-level consequence: conjugating the two-mode coupling
    // matrix z sigma_1 yields the decoupled diag(z, -z)
    let z = C64::new(0.3, 0.4);
    let coupled = [[zero, z], [z, zero]];
    let decoupled = [[z, zero], [zero, -z]];
    let generator_residual = max_dev(
        &conjugate(std::f64::consts::FRAC_PI_4, &coupled),
        &decoupled,
    );
    let identity_residual = max_dev(&conjugate(0.0, &sigma1), &sigma1);
    TwoModeRotationReport { pauli_residual, generator_residual, identity_residual }
}

/// Tensor-grid state on up to three axes, row-major sample order.
#[derive(Debug, Clone)]
pub struct GridFunctionNd {
    specs: Vec<GridSpec>,
    samples: Vec<C64>,
}

impl GridFunctionNd {
    pub fn from_fn(specs: Vec<GridSpec>, f: impl Fn(&[f64]) -> C64) -> Result<Self> {
        if specs.is_empty() || specs.len() > 3 {
            return Err(Error::Config(format!(
                "tensor grids support 1 to 3 axes, got {}",
                specs.len()
            )));
        }
        for s in &specs {
            s.validate()?;
        }
        let total: usize = specs.iter().map(|s| s.n_points).product();
        let mut samples = Vec::with_capacity(total);
        let mut idx = vec![0usize; specs.len()];
        let mut point = vec![0.0; specs.len()];
        for _ in 0..total {
            for (k, s) in specs.iter().enumerate() {
                point[k] = s.x_at(idx[k]);
            }
            samples.push(f(&point));
            for k in (0..specs.len()).rev() {
                idx[k] += 1;
                if idx[k] < specs[k].n_points {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(Self { specs, samples })
    }

    pub fn specs(&self) -> &[GridSpec] {
        &self.specs
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn n_axes(&self) -> usize {
        self.specs.len()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.specs.len()];
        for k in (0..self.specs.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.specs[k + 1].n_points;
        }
        strides
    }

    pub fn norm_sq(&self) -> f64 {
        let strides = self.strides();
        let h: f64 = self.specs.iter().map(|s| s.spacing()).product();
        let mut acc = 0.0;
        for (flat, v) in self.samples.iter().enumerate() {
            let mut w = 1.0;
            for (k, s) in self.specs.iter().enumerate() {
                let i = flat / strides[k] % s.n_points;
                if i == 0 || i + 1 == s.n_points {
                    w *= 0.5;
                }
            }
            acc += w * v.norm_sqr();
        }
        acc * h
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.specs != other.specs {
            return Err(Error::ShapeMismatch("tensor grids differ".into()));
        }
        let diff = Self {
            specs: self.specs.clone(),
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a - b)
                .collect(),
        };
        Ok(diff.norm())
    }

    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.specs != other.specs {
            return Err(Error::ShapeMismatch("tensor grids differ".into()));
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Applies the single-axis dilation pass along `axis`.
    fn dilate_axis(&mut self, axis: usize, r: f64) -> Result<()> {
        if r == 0.0 {
            return Ok(());
        }
        let scale = (-r).exp();
        let amp = C64::new((-0.5 * r).exp(), 0.0);
        let strides = self.strides();
        let len = self.specs[axis].n_points;
        let stride = strides[axis];
        let total = self.samples.len();
        let mut line = vec![C64::new(0.0, 0.0); len];
        let mut base = 0usize;
        while base < total {
            // skip bases that are interior to a line along `axis`
            if base / stride % len != 0 {
                base += stride;
                continue;
            }
            for i in 0..len {
                line[i] = self.samples[base + i * stride];
            }
            let scaled = scale_line(self.specs[axis], &line, scale)?;
            for i in 0..len {
                self.samples[base + i * stride] = scaled[i] * amp;
            }
            base += 1;
        }
        Ok(())
    }
}

/// Tensor-product dilation: prod_k e^{-r_k/2} psi(e^{-r_1}x_1, ..).
pub fn apply_exact_n(r_values: &[f64], psi: &GridFunctionNd) -> Result<GridFunctionNd> {
    if r_values.len() != psi.n_axes() {
        return Err(Error::ShapeMismatch(format!(
            "{} squeeze parameters for {} axes",
            r_values.len(),
            psi.n_axes()
        )));
    }
    let mut out = psi.clone();
    for (axis, &r) in r_values.iter().enumerate() {
        out.dilate_axis(axis, r)?;
    }
    Ok(out)
}

/// Tensor Taylor coefficients c_{n_1..n_N}, row-major.
#[derive(Debug, Clone)]
pub struct TensorTaylor {
    shape: Vec<usize>,
    coeffs: Vec<C64>,
}

impl TensorTaylor {
    pub fn new(shape: Vec<usize>, coeffs: Vec<C64>) -> Result<Self> {
        let total: usize = shape.iter().product();
        if shape.is_empty() || coeffs.len() != total {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for shape {:?}",
                coeffs.len(),
                shape
            )));
        }
        Ok(Self { shape, coeffs })
    }

    /// Tensor product of per-axis one-dimensional coefficient vectors.
    pub fn product(axes: &[TaylorState]) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Config("at least one axis required".into()));
        }
        let shape: Vec<usize> = axes.iter().map(|t| t.len()).collect();
        let total: usize = shape.iter().product();
        let mut coeffs = Vec::with_capacity(total);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..total {
            let mut v = C64::new(1.0, 0.0);
            for (k, t) in axes.iter().enumerate() {
                v *= t.coeff(idx[k]);
            }
            coeffs.push(v);
            for k in (0..shape.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(Self { shape, coeffs })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, index: &[usize]) -> C64 {
        let mut flat = 0usize;
        for (k, &i) in index.iter().enumerate() {
            flat = flat * self.shape[k] + i;
        }
        self.coeffs[flat]
    }

    pub fn evaluate(&self, point: &[f64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut idx = vec![0usize; self.shape.len()];
        for &c in &self.coeffs {
            let mut mono = 1.0;
            for (k, &i) in idx.iter().enumerate() {
                mono *= point[k].powi(i as i32);
            }
            acc += c * mono;
            for k in (0..self.shape.len()).rev() {
                idx[k] += 1;
                if idx[k] < self.shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        acc
    }

    pub fn to_grid(&self, specs: Vec<GridSpec>) -> Result<GridFunctionNd> {
        GridFunctionNd::from_fn(specs, |p| self.evaluate(p))
    }
}

/// Series representation of the N-mode squeeze on the monomial lattice:
/// c_{n_1..n_N} -> s^-_{n_1..n_N} c_{n_1..n_N}.
pub fn multimode_series_apply(r_values: &[f64], t: &TensorTaylor) -> Result<TensorTaylor> {
    if r_values.len() != t.shape.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} squeeze parameters for rank-{} tensor",
            r_values.len(),
            t.shape.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(t.coeffs.len());
    let mut idx = vec![0usize; t.shape.len()];
    for &c in &t.coeffs {
        let log_s: f64 = idx
            .iter()
            .zip(r_values)
            .map(|(&n, &r)| r * (n as f64 + 0.5))
            .sum();
        coeffs.push(c * (-log_s).exp());
        for k in (0..t.shape.len()).rev() {
            idx[k] += 1;
            if idx[k] < t.shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    TensorTaylor::new(t.shape.clone(), coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Point of the multimode eigenvalue lattice
/// s^+-_{n_1..n_N} = exp{ +- sum_k r_k (n_k + 1/2) }.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EigenLattice {
    pub r_values: Vec<f64>,
    pub index: Vec<usize>,
    /// sum_k r_k (n_k + 1/2); the lattice in log space
    pub log_s_plus: f64,
    pub s_plus: f64,
    pub s_minus: f64,
}

impl EigenLattice {
    pub fn value(&self, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => self.s_plus,
            Sign::Minus => self.s_minus,
        }
    }
}

/// Evaluates one lattice point in log space. Signed r_k are accepted so
/// that the (z, -z) two-mode diagonal is expressible directly.
pub fn eigen_lattice(r_values: &[f64], index: &[usize], sign: Sign) -> Result<(EigenLattice, f64)> {
    if r_values.len() != index.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} squeeze parameters for {} indices",
            r_values.len(),
            index.len()
        )));
    }
    let log_s_plus: f64 = r_values
        .iter()
        .zip(index)
        .map(|(&r, &n)| r * (n as f64 + 0.5))
        .sum();
    let lattice = EigenLattice {
        r_values: r_values.to_vec(),
        index: index.to_vec(),
        log_s_plus,
        s_plus: log_s_plus.exp(),
        s_minus: (-log_s_plus).exp(),
    };
    let v = lattice.value(sign);
    Ok((lattice, v))
}
