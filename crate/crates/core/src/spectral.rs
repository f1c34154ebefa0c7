//! The continuous spectrum of the squeeze generator: generalized power-law
//! eigenfunctions, the Mellin-type transform realized on a logarithmic
//! grid, spectral-resolution application, and the analytic continuation
//! whose simple poles reproduce the discrete resonant families.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{ln_factorial, GridFunction, GridSpec, TaylorState};

/// Half-line parity branch of the generalized eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// Generalized eigenfunction psi^E_+-(x) = (2 pi r)^{-1/2} x_+-^{-(iE/r + 1/2)}:
/// supported on one half-line, zero on the other.
pub fn psi_e(energy: f64, parity: Parity, r: f64, x: f64) -> Result<C64> {
    if r <= 0.0 {
        return Err(Error::Config(format!("r = {r} must be positive")));
    }
    if x == 0.0 {
        return Err(Error::Singular(
            "psi^E is a distribution; its pointwise value at x = 0 is undefined".into(),
        ));
    }
    let supported = match parity {
        Parity::Plus => x > 0.0,
        Parity::Minus => x < 0.0,
    };
    if !supported {
        return Ok(C64::new(0.0, 0.0));
    }
    let a = x.abs();
    let modulus = (2.0 * PI * r).sqrt().recip() / a.sqrt();
    Ok(C64::from_polar(modulus, -(energy / r) * a.ln()))
}

/// Numerical controls for the Mellin-side machinery.
#[derive(Debug, Clone, Copy)]
pub struct MellinParams {
    /// lower log-grid edge; x below exp(u_min) is handled analytically
    pub u_min: f64,
    /// Gauss-Legendre panels on [u_min, 0]
    pub panels_inner: usize,
    /// Gauss-Legendre panels on [0, ln x_max]
    pub panels_outer: usize,
    /// nodes per panel
    pub gl_order: usize,
    /// Taylor terms subtracted near the origin in the forward transform
    pub n_subtract: usize,
    /// energy grid extends to +- e_max_over_r * r
    pub e_max_over_r: f64,
    /// energy spacing 2 pi r / e_span; the span controls the periodization
    /// error of discrete Plancherel sums
    pub e_span: f64,
}

impl Default for MellinParams {
    fn default() -> Self {
        Self {
            u_min: -14.0,
            panels_inner: 64,
            panels_outer: 16,
            gl_order: 16,
            n_subtract: 4,
            e_max_over_r: 40.0,
            e_span: 64.0,
        }
    }
}

/// Continuous-spectrum coordinates of a state: amplitudes over both
/// half-line branches on a uniform energy grid.
#[derive(Debug, Clone)]
pub struct MellinAmplitude {
    pub e_grid: Vec<f64>,
    pub c_plus: Vec<C64>,
    pub c_minus: Vec<C64>,
    pub r: f64,
    /// spatial grid the amplitudes were taken from, used for reconstruction
    pub source: GridSpec,
}

impl MellinAmplitude {
    pub fn e_spacing(&self) -> f64 {
        self.e_grid[1] - self.e_grid[0]
    }

    /// sum_+- int |c_+-(E)|^2 dE by the trapezoid rule.
    pub fn plancherel_sum(&self) -> f64 {
        let de = self.e_spacing();
        let n = self.e_grid.len();
        let mut acc = 0.0;
        for i in 0..n {
            let w = if i == 0 || i + 1 == n { 0.5 * de } else { de };
            acc += w * (self.c_plus[i].norm_sqr() + self.c_minus[i].norm_sqr());
        }
        acc
    }

    /// Largest amplitude magnitude at the energy-grid edges.
    pub fn boundary_magnitude(&self) -> f64 {
        let n = self.e_grid.len();
        [&self.c_plus, &self.c_minus]
            .iter()
            .flat_map(|c| [c[0].norm(), c[n - 1].norm()])
            .fold(0.0, f64::max)
    }

    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# E,re_c_plus,im_c_plus,re_c_minus,im_c_minus")?;
        for i in 0..self.e_grid.len() {
            writeln!(
                w,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                self.e_grid[i],
                self.c_plus[i].re,
                self.c_plus[i].im,
                self.c_minus[i].re,
                self.c_minus[i].im
            )?;
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// three-term recurrence.
fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-based initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre nodes/weights over [a, b].
fn composite_gl(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        for (x, w) in xs.iter().zip(&ws) {
            nodes.push(mid + 0.5 * width * x);
            weights.push(0.5 * width * w);
        }
    }
    (nodes, weights)
}

/// Degree-(m-1) polynomial fit of psi through the m grid nodes nearest
/// x = 0, returning derivatives psi^{(k)}(0) for k < n_out.
fn derivatives_at_zero(psi: &GridFunction, m: usize, n_out: usize) -> Vec<C64> {
    let h = psi.spacing();
    let spec = psi.spec();
    // index of node nearest zero
    let t0 = (-spec.x_min / h).round() as isize;
    let lo = (t0 - (m as isize) / 2)
        .max(0)
        .min(spec.n_points as isize - m as isize) as usize;
    // Vandermonde in the scaled variable t = x/h
    let mut a = vec![vec![C64::new(0.0, 0.0); m + 1]; m];
    for row in 0..m {
        let t = (lo + row) as f64 + spec.x_min / h;
        let mut p = 1.0;
        for col in 0..m {
            a[row][col] = C64::new(p, 0.0);
            p *= t;
        }
        a[row][m] = psi.samples()[lo + row];
    }
    // Gaussian elimination with partial pivoting
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
            .unwrap();
        a.swap(col, piv);
        let d = a[col][col];
        for j in col..=m {
            a[col][j] /= d;
        }
        for row in 0..m {
            if row != col {
                let f = a[row][col];
                if f.norm() != 0.0 {
                    for j in col..=m {
                        let sub = f * a[col][j];
                        a[row][j] -= sub;
                    }
                }
            }
        }
    }
    // coefficient of t^k is a[k][m]; d^k/dx^k = k! coeff / h^k
    (0..n_out)
        .map(|k| {
            let mut kfact = 1.0;
            for j in 2..=k {
                kfact *= j as f64;
            }
            a[k][m] * kfact / h.powi(k as i32)
        })
        .collect()
}

/// Precomputed half-line data for the forward transform: quadrature nodes
/// u_i with amortized coefficients a_i so that the Mellin integral at
/// frequency w is sum_i a_i e^{i w u_i} plus explicit pole terms.
struct BranchTable {
    nodes: Vec<f64>,
    coeffs: Vec<C64>,
    /// derivatives psi^{(k)}(0)/k! on this half line (signed argument)
    taylor_head: Vec<C64>,
}

fn branch_table(psi: &GridFunction, parity: Parity, params: &MellinParams) -> BranchTable {
    let sign = parity.sign();
    let derivs = derivatives_at_zero(psi, 9, params.n_subtract);
    let head: Vec<C64> = derivs
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let mut kfact = 1.0;
            for j in 2..=k {
                kfact *= j as f64;
            }
            d * sign.powi(k as i32) / kfact
        })
        .collect();
    let eval = |x: f64| psi.evaluate_lagrange(sign * x, 5);
    let head_poly = |x: f64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut p = 1.0;
        for &c in &head {
            acc += c * p;
            p *= x;
        }
        acc
    };
    let x_max = psi.spec().x_max.abs().max(psi.spec().x_min.abs());
    let (inner_u, inner_w) = composite_gl(params.u_min, 0.0, params.panels_inner, params.gl_order);
    let (outer_u, outer_w) =
        composite_gl(0.0, x_max.ln(), params.panels_outer, params.gl_order);
    let mut nodes = Vec::with_capacity(inner_u.len() + outer_u.len());
    let mut coeffs = Vec::with_capacity(nodes.capacity());
    for (&u, &w) in inner_u.iter().zip(&inner_w) {
        let x = u.exp();
        nodes.push(u);
        coeffs.push(w * (0.5 * u).exp() * (eval(x) - head_poly(x)));
    }
    for (&u, &w) in outer_u.iter().zip(&outer_w) {
        let x = u.exp();
        nodes.push(u);
        coeffs.push(w * (0.5 * u).exp() * eval(x));
    }
    BranchTable { nodes, coeffs, taylor_head: head }
}

impl BranchTable {
    /// int_0^inf x^{i w - 1/2} psi dx, with the subtracted head restored
    /// analytically over (0, 1].
    fn mellin_at(&self, w: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&u, &a) in self.nodes.iter().zip(&self.coeffs) {
            acc += a * C64::from_polar(1.0, w * u);
        }
        for (k, &c) in self.taylor_head.iter().enumerate() {
            acc += c / C64::new(k as f64 + 0.5, w);
        }
        acc
    }
}

/// Forward transform onto the generalized eigenfunction basis:
/// c_+-(E) = <psi^E_+-, psi>, evaluated after the log substitution
/// x = +-e^u with the near-origin Taylor head handled in closed form.
pub fn mellin_forward(
    psi: &GridFunction,
    r: f64,
    params: &MellinParams,
) -> Result<MellinAmplitude> {
    if r <= 0.0 {
        return Err(Error::Config(format!("r = {r} must be positive")));
    }
    let b = psi.boundary_magnitude();
    if b > 1e-12 {
        return Err(Error::Coverage(format!(
            "|psi| = {b:.3e} at the spatial boundary; the log grid cannot cover the tail"
        )));
    }
    let plus = branch_table(psi, Parity::Plus, params);
    let minus = branch_table(psi, Parity::Minus, params);

    let de = 2.0 * PI * r / params.e_span;
    let half = (params.e_max_over_r * r / de).ceil() as usize;
    let n_e = 2 * half + 1;
    let scale = (2.0 * PI * r).sqrt().recip();
    let mut e_grid = Vec::with_capacity(n_e);
    let mut c_plus = Vec::with_capacity(n_e);
    let mut c_minus = Vec::with_capacity(n_e);
    for k in 0..n_e {
        let e = (k as isize - half as isize) as f64 * de;
        let w = e / r;
        e_grid.push(e);
        c_plus.push(scale * plus.mellin_at(w));
        c_minus.push(scale * minus.mellin_at(w));
    }
    Ok(MellinAmplitude { e_grid, c_plus, c_minus, r, source: psi.spec() })
}

/// Applies a bounded spectral multiplier g(E) through the resolution of
/// the identity: psi_g(x) = sum_+- int g(E) psi^E_+-(x) c_+-(E) dE.
/// g = 1 reconstructs the input, g = e^{iE} applies the squeeze, g = E
/// applies the generator.
pub fn spectral_apply(
    amp: &MellinAmplitude,
    g: impl Fn(f64) -> C64,
    spec: GridSpec,
) -> Result<GridFunction> {
    spec.validate()?;
    let de = amp.e_spacing();
    let n = amp.e_grid.len();
    // weighted spectral density per branch
    let weigh = |c: &[C64]| -> Vec<C64> {
        (0..n)
            .map(|k| {
                let w = if k == 0 || k + 1 == n { 0.5 * de } else { de };
                w * g(amp.e_grid[k]) * c[k]
            })
            .collect()
    };
    let wp = weigh(&amp.c_plus);
    let wm = weigh(&amp.c_minus);
    // truncation guard: the weighted amplitude must have decayed at the edge
    let edge = wp[0].norm().max(wp[n - 1].norm()).max(wm[0].norm()).max(wm[n - 1].norm());
    let peak = wp.iter().chain(&wm).map(|c| c.norm()).fold(0.0, f64::max);
    if edge > 1e-6 * peak.max(1e-300) {
        return Err(Error::Divergence(format!(
            "weighted amplitude has not decayed at the energy-grid edge (edge/peak = {:.3e})",
            edge / peak
        )));
    }
    let scale = (2.0 * PI * amp.r).sqrt().recip();
    let dw = de / amp.r;
    let w0 = amp.e_grid[0] / amp.r;
    let samples = (0..spec.n_points)
        .map(|i| {
            let x = spec.x_at(i);
            if x == 0.0 {
                // filled in by neighbor average below
                return C64::new(f64::NAN, 0.0);
            }
            let t = x.abs().ln();
            let weighted = if x > 0.0 { &wp } else { &wm };
            // phase e^{-i w_k t} advanced by recurrence over the uniform w grid
            let step = C64::from_polar(1.0, -dw * t);
            let mut phase = C64::from_polar(1.0, -w0 * t);
            let mut acc = C64::new(0.0, 0.0);
            for &c in weighted {
                acc += c * phase;
                phase *= step;
            }
            scale / x.abs().sqrt() * acc
        })
        .collect::<Vec<_>>();
    let mut samples = samples;
    for i in 0..samples.len() {
        if samples[i].re.is_nan() {
            let lo = if i > 0 { samples[i - 1] } else { samples[i + 1] };
            let hi = if i + 1 < samples.len() { samples[i + 1] } else { samples[i - 1] };
            samples[i] = 0.5 * (lo + hi);
        }
    }
    GridFunction::from_samples(spec, samples)
}

/// A state carrying both grid samples (for the integrals) and Taylor
/// coefficients at the origin (for subtractions and small-x tails).
#[derive(Debug, Clone)]
pub struct HybridState {
    pub grid: GridFunction,
    pub taylor: TaylorState,
}

impl HybridState {
    pub fn new(grid: GridFunction, taylor: TaylorState) -> Self {
        Self { grid, taylor }
    }
}

/// Value of the analytically continued half-line pairing
/// M(lambda; phi) = int_0^inf x^lambda phi(x) dx.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuationResult {
    pub lambda: [f64; 2],
    pub value: [f64; 2],
    pub n_subtracted: usize,
    /// indices n with lambda within 1e-9 of the pole at -n-1; the value
    /// then reports the finite part
    pub pole_flags: Vec<usize>,
    #[serde(skip)]
    pub value_c: C64,
}

const POLE_TOL: f64 = 1e-9;
/// switch radius between Taylor-tail and direct-subtraction evaluation
const TAIL_SWITCH: f64 = 0.5;

/// Analytic continuation of M(lambda; phi) past the abscissa of
/// convergence by subtracting `n_sub` Taylor terms on (0, 1]:
///
///   M = int_0^1 x^lambda [phi - T] dx + sum_{k<n_sub} c_k/(lambda+k+1)
///     + int_1^inf x^lambda phi dx,
///
/// meromorphic in lambda with simple poles at lambda = -n-1 carrying
/// residues phi^{(n)}(0)/n!.
pub fn continue_pairing(
    lambda: C64,
    parity: Parity,
    phi: &HybridState,
    n_sub: usize,
    params: &MellinParams,
) -> Result<ContinuationResult> {
    if lambda.re + n_sub as f64 + 1.0 <= 0.1 {
        return Err(Error::Config(format!(
            "n_subtracted = {n_sub} insufficient for Re(lambda) = {}",
            lambda.re
        )));
    }
    let sign = parity.sign();
    // signed Taylor coefficients: phi(sign * x) = sum c_k x^k
    let coeffs: Vec<C64> = phi
        .taylor
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| c * sign.powi(k as i32))
        .collect();
    let head = |x: f64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut p = 1.0;
        for &c in coeffs.iter().take(n_sub) {
            acc += c * p;
            p *= x;
        }
        acc
    };
    let tail = |x: f64| -> C64 {
        // sum_{k >= n_sub} c_k x^k, evaluated without the cancelling head
        let mut acc = C64::new(0.0, 0.0);
        for &c in coeffs[n_sub.min(coeffs.len())..].iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(n_sub as i32)
    };
    let subtracted = |x: f64| -> C64 {
        if x <= TAIL_SWITCH {
            tail(x)
        } else {
            phi.grid.evaluate_lagrange(sign * x, 5) - head(x)
        }
    };

    let x_max = phi.grid.spec().x_max.abs().max(phi.grid.spec().x_min.abs());
    let lp1 = lambda + 1.0;
    // numeric piece on [x_min_log, 1]
    let (inner_u, inner_w) = composite_gl(params.u_min, 0.0, params.panels_inner, params.gl_order);
    let mut inner = C64::new(0.0, 0.0);
    for (&u, &w) in inner_u.iter().zip(&inner_w) {
        inner += w * (lp1 * u).exp() * subtracted(u.exp());
    }
    // analytic continuation of the same integrand below the log grid
    let x_floor = params.u_min.exp();
    let mut below = C64::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate().skip(n_sub) {
        let denom = lp1 + k as f64;
        below += c * (denom * x_floor.ln()).exp() / denom;
    }
    // pole terms from the subtracted head over (0, 1]
    let mut poles = C64::new(0.0, 0.0);
    let mut pole_flags = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().take(n_sub) {
        let denom = lp1 + k as f64;
        if denom.norm() < POLE_TOL {
            pole_flags.push(k);
        } else {
            poles += c / denom;
        }
    }
    // outer piece on [1, x_max]
    let (outer_u, outer_w) = composite_gl(0.0, x_max.ln(), params.panels_outer, params.gl_order);
    let mut outer = C64::new(0.0, 0.0);
    for (&u, &w) in outer_u.iter().zip(&outer_w) {
        outer += w * (lp1 * u).exp() * phi.grid.evaluate_lagrange(sign * u.exp(), 5);
    }
    let value = inner + below + poles + outer;
    Ok(ContinuationResult {
        lambda: [lambda.re, lambda.im],
        value: [value.re, value.im],
        n_subtracted: n_sub,
        pole_flags,
        value_c: value,
    })
}

/// Residue of M(lambda; phi) at lambda = -(n+1), extracted from four
/// symmetric approach points at each of two radii and Richardson
/// extrapolated in the radius.
pub fn residue_lambda(
    n: usize,
    parity: Parity,
    phi: &HybridState,
    params: &MellinParams,
) -> Result<C64> {
    let lambda0 = C64::new(-(n as f64) - 1.0, 0.0);
    let n_sub = n + 2;
    let sample = |eps: f64| -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..4 {
            let d = C64::from_polar(eps, 0.5 * PI * k as f64);
            let m = continue_pairing(lambda0 + d, parity, phi, n_sub, params)?;
            acc += d * m.value_c;
        }
        Ok(acc / 4.0)
    };
    let (e1, e2) = (1e-2, 1e-3);
    let a1 = sample(e1)?;
    let a2 = sample(e2)?;
    let (p1, p2) = (e1 * e1 * e1 * e1, e2 * e2 * e2 * e2);
    Ok((a2 * p1 - a1 * p2) / (p1 - p2))
}

/// Connection between a resonance pole and the distributional eigenvector:
/// the extracted residue, the coefficient pairing <f^-_n, phi>, and their
/// ratio, which must be independent of phi.
#[derive(Debug, Clone)]
pub struct ResonanceResidue {
    pub n: usize,
    pub r: f64,
    /// residue of <psi^E_+, phi> at E = -E_n in the energy plane
    pub residue: C64,
    /// <f^-_n, phi> = phi^{(n)}(0)/sqrt(n!)
    pub pairing: C64,
    pub ratio: C64,
}

/// Maps the pole of the continued eigenfunction pairing at E = -E_n to
/// the resonant-state pairing. The energy-plane residue picks up the
/// eigenfunction prefactor and the Jacobian dE/dlambda = i r.
pub fn residue_at_resonance(
    n: usize,
    r: f64,
    phi: &HybridState,
    params: &MellinParams,
) -> Result<ResonanceResidue> {
    if r <= 0.0 {
        return Err(Error::Config(format!("r = {r} must be positive")));
    }
    let pairing = phi.taylor.coeff(n) * (0.5 * ln_factorial(n)).exp();
    if pairing.norm() < 1e-12 {
        return Err(Error::IllConditioned(format!(
            "<f^-_{n}, phi> = {:.3e}; the residue ratio is not resolvable",
            pairing.norm()
        )));
    }
    let res_lambda = residue_lambda(n, Parity::Plus, phi, params)?;
    let residue = C64::new(0.0, r) * (2.0 * PI * r).sqrt().recip() * res_lambda;
    Ok(ResonanceResidue { n, r, residue, pairing, ratio: residue / pairing })
}

/// Symplectic-equivalence report for the inverted-oscillator form of the
/// generator.
#[derive(Debug, Clone, Serialize)]
pub struct InvertedOscillatorReport {
    pub r: f64,
    /// determinant of the (x,p) <- (Q,P) linear map
    pub det: f64,
    /// |{Q,P} - 1| under the inverse map
    pub poisson_residual: f64,
    /// max-abs entry of M^T A M - B where A is the form of -r x p and
    /// B the form of (P^2 - r^2 Q^2)/2
    pub congruence_residual: f64,
    /// generalized eigenvalues +- i r (n + 1/2) for n <= 5, as imag parts
    pub eigenvalues_im: Vec<f64>,
}

pub fn inverted_oscillator_check(r: f64) -> Result<InvertedOscillatorReport> {
    if r <= 0.0 {
        return Err(Error::Config(format!("r = {r} must be positive")));
    }
    let s = (2.0 * r).sqrt();
    // x = (rQ - P)/sqrt(2r), p = (rQ + P)/sqrt(2r)
    let m = [[r / s, -1.0 / s], [r / s, 1.0 / s]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // {Q, P} in terms of (x, p) via the inverse map
    let inv = [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ];
    let poisson = inv[0][0] * inv[1][1] - inv[0][1] * inv[1][0];
    // -r x p as a symmetric form in (x, p)
    let a = [[0.0, -r / 2.0], [-r / 2.0, 0.0]];
    // (P^2 - r^2 Q^2)/2 as a symmetric form in (Q, P)
    let b = [[-r * r / 2.0, 0.0], [0.0, 0.5]];
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for k in 0..2 {
                for l in 0..2 {
                    acc += m[k][i] * a[k][l] * m[l][j];
                }
            }
            worst = worst.max((acc - b[i][j]).abs());
        }
    }
    Ok(InvertedOscillatorReport {
        r,
        det,
        poisson_residual: (poisson - 1.0).abs(),
        congruence_residual: worst,
        eigenvalues_im: (0..=5).map(|n| r * (n as f64 + 0.5)).collect(),
    })
}
