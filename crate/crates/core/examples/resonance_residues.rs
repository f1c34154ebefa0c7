//! Analytic continuation of the half-line pairing M(lambda; phi) =
//! int_0^inf x^lambda phi(x) dx past its abscissa of convergence: simple
//! poles at lambda = -n-1 carry residues phi^(n)(0)/n!, and the induced
//! energy-plane residues are proportional to the resonant pairings
//! <f^-_n, phi> with a phi-independent ratio.

use num_complex::Complex64 as C64;

use squeeze_spectra::spectral::{
    continue_pairing, residue_at_resonance, residue_lambda, HybridState, MellinParams, Parity,
};
use squeeze_spectra::states::{GridFunction, GridSpec, TaylorState};

fn hybrid(a: f64, b: f64) -> HybridState {
    // (1 + a x) e^{-b x^2} with its Taylor series
    let mut even = vec![C64::new(0.0, 0.0); 81];
    let mut v = 1.0;
    for k in 0..=40 {
        even[2 * k] = C64::new(v, 0.0);
        v *= -b / (k as f64 + 1.0);
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); 82];
    for k in 0..=80 {
        coeffs[k] += even[k];
        coeffs[k + 1] += even[k] * a;
    }
    HybridState::new(
        GridFunction::from_fn(GridSpec::default(), |x| {
            C64::new((1.0 + a * x) * (-b * x * x).exp(), 0.0)
        })
        .unwrap(),
        TaylorState::new(coeffs),
    )
}

fn main() {
    let params = MellinParams::default();
    let gauss = hybrid(0.0, 1.0);

    // off-pole values against the Gamma-function closed form
    println!("continuation of int_0^inf x^lambda e^(-x^2) dx:");
    for (lambda, gamma_half) in [(0.0, 0.8862269254527579), (-0.5, 1.8128049541109543)] {
        let m = continue_pairing(C64::new(lambda, 0.0), Parity::Plus, &gauss, 4, &params).unwrap();
        println!(
            "  lambda = {lambda:+.1}: {:+.12} (closed form {gamma_half:+.12})",
            m.value_c.re
        );
    }

    // residues at the poles recover the Taylor coefficients
    println!("\nresidues at lambda = -(n+1) vs phi^(n)(0)/n!:");
    for n in 0..=4 {
        let res = residue_lambda(n, Parity::Plus, &gauss, &params).unwrap();
        println!(
            "  n = {n}: residue {:+.8}, coefficient {:+.8}",
            res.re,
            gauss.taylor.coeff(n).re
        );
    }

    // the residue-to-pairing ratio does not depend on the test function
    println!("\nenergy-plane residue / <f^-_n, phi> across test functions (r = 0.5):");
    for n in 0..=2 {
        let ratios: Vec<C64> = [hybrid(1.0, 1.0), hybrid(1.0, 0.5), hybrid(0.5, 1.0)]
            .iter()
            .map(|phi| residue_at_resonance(n, 0.5, phi, &params).unwrap().ratio)
            .collect();
        println!(
            "  n = {n}: {}",
            ratios
                .iter()
                .map(|c| format!("{:+.9}{:+.9}i", c.re, c.im))
                .collect::<Vec<_>>()
                .join("  ")
        );
    }
}
