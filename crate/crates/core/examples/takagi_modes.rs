//! Reduction of an N-mode squeeze matrix to independent single-mode
//! factors: factor a random complex symmetric Z as
//! e^{-i Phi} Z e^{-i Phi^T} = Z_D with Hermitian Phi and nonnegative
//! diagonal Z_D (the per-mode squeeze strengths).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use squeeze_spectra::multimode::{random_symmetric, takagi};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2usize, 4, 8] {
        let z = random_symmetric(n, &mut rng);
        let t = takagi(&z).unwrap();
        println!("N = {n}:");
        println!(
            "  mode strengths Z_D = [{}]",
            t.z_d.iter().map(|s| format!("{s:.6}")).collect::<Vec<_>>().join(", ")
        );
        println!("  conjugation residual = {:.3e}", t.residual);
        println!("  degenerate spectrum  = {}", t.degenerate);
    }
}
