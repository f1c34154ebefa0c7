//! N-mode eigenvalue lattice s^+-_{n_1..n_N} = exp(+- sum r_k (n_k + 1/2))
//! and the tensor-product series action of the diagonalized squeeze on
//! multi-variable Taylor states.

use squeeze_spectra::multimode::{
    eigen_lattice, multimode_series_apply, two_mode_rotation_identity, Sign, TensorTaylor,
};
use squeeze_spectra::states::TaylorState;

fn main() {
    // the sigma_1 -> sigma_3 rotation underlying the two-mode reduction
    let rot = two_mode_rotation_identity();
    println!(
        "two-mode Pauli rotation residuals: identity {:.1e}, generator {:.1e}",
        rot.pauli_residual, rot.generator_residual
    );

    // lattice slice at r = (0.4, 0.9)
    let r = [0.4, 0.9];
    println!("\ns^+ lattice for r = {r:?}:");
    for n in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|m| {
                let (l, _) = eigen_lattice(&r, &[n, m], Sign::Plus).unwrap();
                format!("{:>10.4}", l.s_plus)
            })
            .collect();
        println!("  n = {n}: {}", row.join(" "));
    }

    // the monomial x^2 y^1 is an exact eigenvector of the tensor series
    let mono = TensorTaylor::product(&[
        TaylorState::monomial_normalized(2),
        TaylorState::monomial_normalized(1),
    ])
    .unwrap();
    let applied = multimode_series_apply(&r, &mono).unwrap();
    let scale = applied.coeff(&[2, 1]) / mono.coeff(&[2, 1]);
    let (l, _) = eigen_lattice(&r, &[2, 1], Sign::Minus).unwrap();
    println!(
        "\nseries action on x^2 y: coefficient scale {:.10} (lattice s^- = {:.10})",
        scale.re, l.s_minus
    );
}
