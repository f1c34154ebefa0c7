//! Discrete resonant structure of S(r): complex generator eigenvalues
//! E_n = i r (n + 1/2), the dual real eigenvalue ladder s^+-_n, and the
//! biorthogonality of the monomial eigenvectors with their duals.

use squeeze_spectra::singlemode::{apply_h_taylor, biorthogonality, resonant_pair};
use squeeze_spectra::states::TaylorState;

fn main() {
    let r = 0.7;
    println!("resonant ladder at r = {r}");
    println!("{:>3} {:>22} {:>14} {:>14} {:>10}", "n", "E_n", "s_plus", "s_minus", "s+ * s-");
    for n in 0..=6 {
        let p = resonant_pair(n, r).unwrap();
        println!(
            "{n:>3} {:>22} {:>14.6e} {:>14.6e} {:>10.6}",
            format!("{:+.4}{:+.4}i", p.e_n.re, p.e_n.im),
            p.s_plus,
            p.s_minus,
            p.s_plus * p.s_minus
        );
    }

    // the monomial f^+_n = x^n / sqrt(n!) is an exact eigenvector of H
    let f3 = TaylorState::monomial_normalized(3);
    let hf3 = apply_h_taylor(r, &f3);
    let ratio = hf3.coeff(3) / f3.coeff(3);
    println!("\nH f^+_3 / f^+_3 = {:+.4}{:+.4}i (expect i r (3.5) = +0.0000+{:.4}i)",
        ratio.re, ratio.im, r * 3.5);

    // biorthogonality <f^-_m, f^+_n> = delta_nm, exact in the pairing
    let mut worst = 0.0f64;
    for n in 0..=20 {
        for m in 0..=20 {
            let expect = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((biorthogonality(n, m) - expect).abs());
        }
    }
    println!("biorthogonality worst deviation over n,m <= 20: {worst:.1e}");
}
