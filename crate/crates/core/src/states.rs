//! State representations: sampled wavefunctions on uniform grids, truncated
//! power series (the entire-analytic side), and delta-derivative coefficient
//! sequences (the distributional side), together with the inner products and
//! transforms connecting them.

use std::f64::consts::PI;
use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ln(n!) accumulated term by term; exact to ~1e-15 relative for the
/// index range used here (n well below 10^4).
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Description of a uniform 1D spatial grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub const fn new(x_min: f64, x_max: f64, n_points: usize) -> Self {
        Self { x_min, x_max, n_points }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(Error::Config(format!(
                "n_points = {} but at least 2 samples are required",
                self.n_points
            )));
        }
        if !(self.x_max > self.x_min) {
            return Err(Error::Config(format!(
                "x_max = {} must exceed x_min = {}",
                self.x_max, self.x_min
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x_min + self.spacing() * i as f64
    }

    /// True when the node set is symmetric under x -> -x.
    pub fn is_symmetric(&self) -> bool {
        (self.x_min + self.x_max).abs() < 1e-12 * self.spacing().max(1.0)
    }
}

impl Default for GridSpec {
    /// Wide enough that Gaussians and mildly squeezed states (|r| <= 1)
    /// decay below 1e-14 at the boundary.
    fn default() -> Self {
        Self::new(-8.0, 8.0, 2048)
    }
}

/// A complex-valued wavefunction sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    samples: Vec<C64>,
}

impl GridFunction {
    pub fn from_fn(spec: GridSpec, f: impl Fn(f64) -> C64) -> Result<Self> {
        spec.validate()?;
        let samples = (0..spec.n_points).map(|i| f(spec.x_at(i))).collect();
        Ok(Self { spec, samples })
    }

    pub fn from_samples(spec: GridSpec, samples: Vec<C64>) -> Result<Self> {
        spec.validate()?;
        if samples.len() != spec.n_points {
            return Err(Error::ShapeMismatch(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                spec.n_points
            )));
        }
        Ok(Self { spec, samples })
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn spacing(&self) -> f64 {
        self.spec.spacing()
    }

    pub fn n_points(&self) -> usize {
        self.spec.n_points
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.spec.x_at(i)
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn map(&self, f: impl Fn(f64, C64) -> C64) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, &v)| f(self.x_at(i), v))
            .collect();
        Self { spec: self.spec, samples }
    }

    /// Largest |psi| over the two outermost samples on each side.
    pub fn boundary_magnitude(&self) -> f64 {
        let n = self.samples.len();
        [0, 1, n - 2, n - 1]
            .iter()
            .map(|&i| self.samples[i].norm())
            .fold(0.0, f64::max)
    }

    fn quadrature_weight(&self, i: usize) -> f64 {
        // composite trapezoid; spectrally accurate for states decaying
        // below tolerance at the boundary
        let h = self.spacing();
        if i == 0 || i + 1 == self.samples.len() {
            0.5 * h
        } else {
            h
        }
    }

    /// <f, g> = int conj(f) g dx, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<C64> {
        if self.spec != other.spec {
            return Err(Error::ShapeMismatch(
                "inner product requires identical grids".into(),
            ));
        }
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.samples.len() {
            acc += self.quadrature_weight(i) * self.samples[i].conj() * other.samples[i];
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> f64 {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, v)| self.quadrature_weight(i) * v.norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Quadrature of int w(x) |psi|^2 dx.
    pub fn density_moment(&self, w: impl Fn(f64) -> f64) -> f64 {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, v)| self.quadrature_weight(i) * w(self.x_at(i)) * v.norm_sqr())
            .sum()
    }

    pub fn mean_x(&self) -> f64 {
        self.density_moment(|x| x) / self.norm_sq()
    }

    pub fn var_x(&self) -> f64 {
        let m = self.mean_x();
        self.density_moment(|x| (x - m) * (x - m)) / self.norm_sq()
    }

    /// L2 distance to another function on the same grid.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.spec != other.spec {
            return Err(Error::ShapeMismatch("l2 distance requires identical grids".into()));
        }
        let mut acc = 0.0;
        for i in 0..self.samples.len() {
            acc += self.quadrature_weight(i) * (self.samples[i] - other.samples[i]).norm_sqr();
        }
        Ok(acc.sqrt())
    }

    /// Off-grid evaluation by `order+1`-point Lagrange interpolation
    /// (order 3 = cubic). Points outside the grid evaluate to zero.
    pub fn evaluate_lagrange(&self, x: f64, order: usize) -> C64 {
        let n = self.samples.len();
        let h = self.spacing();
        if x < self.spec.x_min - 0.5 * h || x > self.spec.x_max + 0.5 * h {
            return C64::new(0.0, 0.0);
        }
        let npts = order + 1;
        let t = (x - self.spec.x_min) / h;
        // stencil centered on x, clamped at the ends
        let mut lo = (t.floor() as isize - (npts as isize - 1) / 2).max(0) as usize;
        lo = lo.min(n - npts);
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..npts {
            let xj = lo + j;
            let mut w = 1.0;
            for k in 0..npts {
                if k != j {
                    let xk = lo + k;
                    w *= (t - xk as f64) / (xj as f64 - xk as f64);
                }
            }
            acc += w * self.samples[xj];
        }
        acc
    }

    pub fn evaluate_cubic(&self, x: f64) -> C64 {
        self.evaluate_lagrange(x, 3)
    }

    /// Write the state as CSV with a `# x,re,im` header row.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# x,re,im")?;
        for (i, v) in self.samples.iter().enumerate() {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", self.x_at(i), v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_csv(r: &mut impl BufRead) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns, got {}", parts.len())));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
            };
            xs.push(parse(parts[0])?);
            vs.push(C64::new(parse(parts[1])?, parse(parts[2])?));
        }
        if xs.len() < 2 {
            return Err(Error::Parse("need at least 2 rows".into()));
        }
        let spec = GridSpec::new(xs[0], *xs.last().unwrap(), xs.len());
        let h = spec.spacing();
        for (i, &x) in xs.iter().enumerate() {
            if (x - spec.x_at(i)).abs() > 1e-9 * h.max(1.0) {
                return Err(Error::Parse(format!("row {i}: non-uniform x = {x}")));
            }
        }
        GridFunction::from_samples(spec, vs)
    }
}

/// Ground-state Gaussian pi^{-1/4} exp(-x^2/2).
pub fn make_vacuum(spec: GridSpec) -> Result<GridFunction> {
    let norm = PI.powf(-0.25);
    GridFunction::from_fn(spec, |x| C64::new(norm * (-0.5 * x * x).exp(), 0.0))
}

/// Coherent state for a = (x + ip)/sqrt(2): a displaced Gaussian with
/// <x> = sqrt(2) Re(alpha) and <p> = sqrt(2) Im(alpha). The overall phase
/// is fixed so the position representation is real and positive for real
/// alpha.
pub fn make_coherent(alpha: C64, spec: GridSpec) -> Result<GridFunction> {
    let norm = C64::new(PI.powf(-0.25), 0.0)
        * (-0.5 * alpha * alpha - 0.5 * alpha.norm_sqr()).exp();
    let s2a = C64::new(2f64.sqrt(), 0.0) * alpha;
    GridFunction::from_fn(spec, |x| norm * (C64::new(-0.5 * x * x, 0.0) + s2a * x).exp())
}

/// Smooth compactly supported test bump exp(-1/(1-(x/a)^2)) on |x| < a.
pub fn make_bump(a: f64, spec: GridSpec) -> Result<GridFunction> {
    if a <= 0.0 {
        return Err(Error::Config("bump half-width must be positive".into()));
    }
    GridFunction::from_fn(spec, |x| {
        let t = x / a;
        if t.abs() < 1.0 {
            C64::new((-1.0 / (1.0 - t * t)).exp(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Unitary Fourier transform with the exp(-ipx) kernel, returned on the
/// same node set as the input so that self-dual states can be compared
/// directly. Realized as a quadrature sum with phasor recurrences.
pub fn fourier_transform(f: &GridFunction) -> Result<GridFunction> {
    if !f.spec().is_symmetric() {
        return Err(Error::Config(
            "fourier transform requires a grid symmetric about 0".into(),
        ));
    }
    let n = f.n_points();
    let h = f.spacing();
    let scale = 1.0 / (2.0 * PI).sqrt();
    let xs: Vec<f64> = (0..n).map(|i| f.x_at(i)).collect();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (k, o) in out.iter_mut().enumerate() {
        let p = xs[k];
        // phase e^{-i p x_j}, advanced by e^{-i p h} per sample
        let step = C64::from_polar(1.0, -p * h);
        let mut phase = C64::from_polar(1.0, -p * xs[0]);
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            let w = if j == 0 || j + 1 == n { 0.5 } else { 1.0 };
            acc += w * phase * f.samples()[j];
            phase *= step;
        }
        *o = scale * h * acc;
    }
    GridFunction::from_samples(f.spec(), out)
}

/// Mean of p over |F[psi]|^2.
pub fn mean_p(f: &GridFunction) -> Result<f64> {
    let ft = fourier_transform(f)?;
    Ok(ft.mean_x())
}

pub fn var_p(f: &GridFunction) -> Result<f64> {
    let ft = fourier_transform(f)?;
    Ok(ft.var_x())
}

/// Truncated power series sum_n c_n x^n of an entire-analytic state.
/// Coefficients are stored raw (no sqrt(n!) weights); weighted basis
/// coefficients are formed on demand in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorState {
    coeffs: Vec<C64>,
}

impl TaylorState {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    /// x^n / sqrt(n!), the entire-analytic eigenstate at index n.
    pub fn monomial_normalized(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new((-0.5 * ln_factorial(n)).exp(), 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C64 {
        self.coeffs.get(n).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation of the full series.
    pub fn evaluate(&self, x: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates sum_{n >= from} c_n x^n without forming the cancelling head.
    pub fn evaluate_tail(&self, from: usize, x: f64) -> C64 {
        if from >= self.coeffs.len() {
            return C64::new(0.0, 0.0);
        }
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs[from..].iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(from as i32)
    }

    /// Magnitude bound |c_N| R^N of the last retained term on radius R.
    pub fn tail_term_bound(&self, radius: f64) -> f64 {
        match self.coeffs.last() {
            Some(c) => c.norm() * radius.powi((self.coeffs.len() - 1) as i32),
            None => 0.0,
        }
    }

    /// Drops trailing coefficients below `tol` in magnitude.
    pub fn truncated(mut self, tol: f64) -> Self {
        while let Some(c) = self.coeffs.last() {
            if c.norm() < tol && self.coeffs.len() > 1 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn to_grid(&self, spec: GridSpec) -> Result<GridFunction> {
        GridFunction::from_fn(spec, |x| self.evaluate(x))
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, C64) -> C64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| f(n, c))
                .collect(),
        }
    }

    /// JSON serialization as an array of [re, im] pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::json!([c.re, c.im]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected JSON array of [re, im] pairs".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("expected [re, im] pair".into()))?;
            let re = pair[0].as_f64().ok_or_else(|| Error::Parse("non-numeric re".into()))?;
            let im = pair[1].as_f64().ok_or_else(|| Error::Parse("non-numeric im".into()))?;
            coeffs.push(C64::new(re, im));
        }
        Ok(Self { coeffs })
    }
}

/// Taylor coefficients of the vacuum pi^{-1/4} exp(-x^2/2) up to x^n_max.
pub fn taylor_vacuum(n_max: usize) -> TaylorState {
    let norm = PI.powf(-0.25);
    let mut coeffs = vec![C64::new(0.0, 0.0); n_max + 1];
    // c_{2k} = norm (-1/2)^k / k!
    let mut c = norm;
    let mut k = 0usize;
    while 2 * k <= n_max {
        coeffs[2 * k] = C64::new(c, 0.0);
        k += 1;
        c *= -0.5 / k as f64;
    }
    TaylorState::new(coeffs)
}

/// Taylor coefficients of the coherent state used by [`make_coherent`]:
/// the Cauchy product of the exp(-x^2/2) and exp(sqrt(2) alpha x) series.
pub fn taylor_coherent(alpha: C64, n_max: usize) -> TaylorState {
    let norm = C64::new(PI.powf(-0.25), 0.0)
        * (-0.5 * alpha * alpha - 0.5 * alpha.norm_sqr()).exp();
    // a_m = (sqrt(2) alpha)^m / m!
    let s2a = C64::new(2f64.sqrt(), 0.0) * alpha;
    let mut lin = vec![C64::new(1.0, 0.0); n_max + 1];
    for m in 1..=n_max {
        lin[m] = lin[m - 1] * s2a / m as f64;
    }
    // g_{2k} = (-1/2)^k / k!
    let mut gauss = vec![0.0f64; n_max + 1];
    let mut g = 1.0;
    let mut k = 0usize;
    while 2 * k <= n_max {
        gauss[2 * k] = g;
        k += 1;
        g *= -0.5 / k as f64;
    }
    let coeffs = (0..=n_max)
        .map(|n| {
            let mut acc = C64::new(0.0, 0.0);
            for j in (0..=n).step_by(2) {
                acc += gauss[j] * lin[n - j];
            }
            norm * acc
        })
        .collect();
    TaylorState::new(coeffs)
}

/// Which analytic state a Taylor expansion should represent.
#[derive(Debug, Clone, Copy)]
pub enum StateKind {
    Vacuum,
    Coherent(C64),
}

pub fn taylor_of_state(kind: StateKind, n_max: usize) -> TaylorState {
    match kind {
        StateKind::Vacuum => taylor_vacuum(n_max),
        StateKind::Coherent(alpha) => taylor_coherent(alpha, n_max),
    }
}

/// Coefficient sequence d_n over the delta-derivative basis
/// f^-_n = (-1)^n delta^{(n)} / sqrt(n!). Usable only through pairings.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    coeffs: Vec<C64>,
}

impl DualState {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    /// The basis element f^-_n itself: a unit coefficient at index n.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// sum_n d_n <f^-_n, phi> with <f^-_n, phi> = phi^{(n)}(0)/sqrt(n!)
    /// = c_n sqrt(n!). Log factors are combined before exponentiation.
    pub fn pair(&self, phi: &TaylorState) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &d)| {
                let c = phi.coeff(n);
                if d == C64::new(0.0, 0.0) || c == C64::new(0.0, 0.0) {
                    C64::new(0.0, 0.0)
                } else {
                    d * c * (0.5 * ln_factorial(n)).exp()
                }
            })
            .sum()
    }
}

/// <f^-_n, phi> for a single index, in log space.
pub fn dual_basis_pairing(n: usize, phi: &TaylorState) -> C64 {
    phi.coeff(n) * (0.5 * ln_factorial(n)).exp()
}

/// Squeeze parameters: a single complex z = r e^{i theta} or an N x N
/// complex symmetric matrix.
#[derive(Debug, Clone)]
pub enum SqueezeSpec {
    Single { r: f64, theta: f64 },
    Multi(ndarray::Array2<C64>),
}

impl SqueezeSpec {
    pub fn single(r: f64, theta: f64) -> Result<Self> {
        if r < 0.0 {
            return Err(Error::Config(format!("squeeze magnitude r = {r} must be >= 0")));
        }
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::Config(format!("theta = {theta} must lie in (-pi, pi]")));
        }
        Ok(Self::Single { r, theta })
    }

    pub fn multi(z: ndarray::Array2<C64>) -> Result<Self> {
        let asym = max_asymmetry(&z);
        if asym > 1e-12 {
            return Err(Error::Asymmetric(asym));
        }
        Ok(Self::Multi(z))
    }
}

pub(crate) fn max_asymmetry(z: &ndarray::Array2<C64>) -> f64 {
    let n = z.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..i {
            worst = worst.max((z[[i, j]] - z[[j, i]]).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn vacuum_value_at_origin() {
        let psi = make_vacuum(GridSpec::new(0.0, 1.0, 2)).unwrap();
        assert_abs_diff_eq!(psi.samples()[0].re, 0.7511255444649425, epsilon = 1e-15);
        let psi1 = psi.samples()[1];
        assert_abs_diff_eq!(psi1.re, PI.powf(-0.25) * (-0.5f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn vacuum_normalized() {
        let psi = make_vacuum(GridSpec::default()).unwrap();
        assert_abs_diff_eq!(psi.norm_sq(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn invalid_grid_rejected() {
        assert!(make_vacuum(GridSpec::new(0.0, 1.0, 1)).is_err());
        assert!(make_vacuum(GridSpec::new(1.0, 1.0, 16)).is_err());
    }

    #[test]
    fn coherent_zero_is_vacuum() {
        let spec = GridSpec::default();
        let a = make_coherent(c(0.0, 0.0), spec).unwrap();
        let v = make_vacuum(spec).unwrap();
        assert!(a.l2_distance(&v).unwrap() < 1e-14);
    }

    #[test]
    fn coherent_displacements() {
        let spec = GridSpec::default();
        let a = make_coherent(c(1.0, 0.0), spec).unwrap();
        assert_abs_diff_eq!(a.norm_sq(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.mean_x(), 2f64.sqrt(), epsilon = 1e-9);
        let b = make_coherent(c(0.0, 1.0), spec).unwrap();
        assert_abs_diff_eq!(b.mean_x(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(mean_p(&b).unwrap(), 2f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn inner_product_basics() {
        let spec = GridSpec::default();
        let v = make_vacuum(spec).unwrap();
        let ip = v.inner_product(&v).unwrap();
        assert_abs_diff_eq!(ip.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-14);

        let xv = v.map(|x, val| x * val);
        let parity = v.inner_product(&xv).unwrap();
        assert_abs_diff_eq!(parity.norm(), 0.0, epsilon = 1e-12);

        let x2v = v.map(|x, val| x * x * val);
        let second = v.inner_product(&x2v).unwrap();
        assert_abs_diff_eq!(second.re, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn inner_product_mismatched_grids() {
        let v = make_vacuum(GridSpec::default()).unwrap();
        let w = make_vacuum(GridSpec::new(-8.0, 8.0, 1024)).unwrap();
        assert!(v.inner_product(&w).is_err());
    }

    #[test]
    fn fourier_gaussian_self_dual() {
        let v = make_vacuum(GridSpec::default()).unwrap();
        let ft = fourier_transform(&v).unwrap();
        assert!(ft.l2_distance(&v).unwrap() < 1e-10);
    }

    #[test]
    fn fourier_parseval() {
        let a = make_coherent(c(0.7, -0.4), GridSpec::default()).unwrap();
        let ft = fourier_transform(&a).unwrap();
        assert_abs_diff_eq!(ft.norm(), a.norm(), epsilon = 1e-10);
    }

    #[test]
    fn double_fourier_is_parity() {
        let a = make_coherent(c(0.8, 0.3), GridSpec::default()).unwrap();
        let ft2 = fourier_transform(&fourier_transform(&a).unwrap()).unwrap();
        let flipped = GridFunction::from_samples(
            a.spec(),
            a.samples().iter().rev().copied().collect(),
        )
        .unwrap();
        assert!(ft2.l2_distance(&flipped).unwrap() < 1e-9);
    }

    #[test]
    fn fourier_requires_symmetric_grid() {
        let f = make_vacuum(GridSpec::new(-4.0, 8.0, 512)).unwrap();
        assert!(fourier_transform(&f).is_err());
    }

    #[test]
    fn vacuum_taylor_low_order() {
        let t = taylor_vacuum(8);
        let norm = PI.powf(-0.25);
        assert_abs_diff_eq!(t.coeff(0).re, norm, epsilon = 1e-15);
        assert_abs_diff_eq!(t.coeff(1).norm(), 0.0);
        assert_abs_diff_eq!(t.coeff(2).re, -norm / 2.0, epsilon = 1e-15);
        // even coefficients alternate in sign, odd vanish
        let mut sign = 1.0;
        for k in 0..=4 {
            assert!(sign * t.coeff(2 * k).re > 0.0);
            sign = -sign;
            if 2 * k + 1 <= 8 {
                assert_eq!(t.coeff(2 * k + 1).norm(), 0.0);
            }
        }
    }

    #[test]
    fn taylor_matches_grid_vacuum() {
        let t = taylor_vacuum(60);
        let v = make_vacuum(GridSpec::default()).unwrap();
        for i in 0..v.n_points() {
            let x = v.x_at(i);
            if x.abs() <= 3.0 {
                assert!((t.evaluate(x) - v.samples()[i]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn taylor_matches_grid_coherent() {
        let t = taylor_coherent(c(1.0, 0.0), 40);
        let g = make_coherent(c(1.0, 0.0), GridSpec::default()).unwrap();
        let sample = g.evaluate_cubic(0.5);
        assert!((t.evaluate(0.5) - sample).norm() < 1e-10);
    }

    #[test]
    fn dual_pairing_kronecker() {
        for n in 0..=20 {
            for m in 0..=20 {
                let d = DualState::basis(m);
                let t = TaylorState::monomial_normalized(n);
                let p = d.pair(&t);
                if n == m {
                    // stored-coefficient route: exact up to one rounding of exp
                    assert!((p - c(1.0, 0.0)).norm() <= 4e-16, "pairing ({n},{m}) = {p}");
                } else {
                    assert_eq!(p, c(0.0, 0.0), "pairing ({n},{m}) not exactly 0");
                }
            }
        }
    }

    #[test]
    fn csv_roundtrip() {
        let v = make_coherent(c(0.3, 0.2), GridSpec::new(-8.0, 8.0, 256)).unwrap();
        let mut buf = Vec::new();
        v.write_csv(&mut buf).unwrap();
        let back = GridFunction::read_csv(&mut std::io::Cursor::new(buf)).unwrap();
        assert!(v.l2_distance(&back).unwrap() < 1e-12);
    }

    #[test]
    fn squeeze_spec_validation() {
        assert!(SqueezeSpec::single(-0.1, 0.0).is_err());
        assert!(SqueezeSpec::single(0.5, 0.0).is_ok());
        let mut z = ndarray::Array2::from_elem((2, 2), c(0.0, 0.0));
        z[[0, 1]] = c(0.4, 0.0);
        assert!(SqueezeSpec::multi(z.clone()).is_err());
        z[[1, 0]] = c(0.4, 0.0);
        assert!(SqueezeSpec::multi(z).is_ok());
    }
}
