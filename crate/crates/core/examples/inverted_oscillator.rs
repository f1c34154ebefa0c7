//! Symplectic equivalence of the squeeze generator with the inverted
//! oscillator (P^2 - r^2 Q^2)/2: unit-determinant quadrature map,
//! Poisson-bracket preservation, and the generalized eigenvalue ladder.

use squeeze_spectra::spectral::inverted_oscillator_check;

fn main() {
    for r in [0.3, 0.7, 1.2] {
        let rep = inverted_oscillator_check(r).unwrap();
        println!("r = {r}");
        println!("  map determinant        = {:.16}", rep.det);
        println!("  Poisson residual       = {:.3e}", rep.poisson_residual);
        println!("  congruence residual    = {:.3e}", rep.congruence_residual);
        println!(
            "  eigenvalues (imag part) = {}",
            rep.eigenvalues_im
                .iter()
                .map(|v| format!("{v:+.3}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
}
