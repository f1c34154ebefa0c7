//! Exact dilation action of the squeeze operator on grid states:
//! S(r) psi(x) = e^{-r/2} psi(e^{-r} x), with the group law and the
//! quadrature variances as sanity checks.

use squeeze_spectra::singlemode::apply_exact;
use squeeze_spectra::states::{make_vacuum, var_p, GridSpec};

fn main() {
    let spec = GridSpec::default();
    let vacuum = make_vacuum(spec).unwrap();
    println!("vacuum: norm = {:.12}, var x = {:.12}", vacuum.norm(), vacuum.var_x());

    for r in [0.25, 0.5, 1.0] {
        let squeezed = apply_exact(r, &vacuum).unwrap();
        let vp = var_p(&squeezed).unwrap();
        println!(
            "r = {r:4}: norm = {:.12}, var x = {:.8} (e^{{2r}}/2 = {:.8}), var p = {:.8}, product = {:.10}",
            squeezed.norm(),
            squeezed.var_x(),
            (2.0 * r).exp() / 2.0,
            vp,
            squeezed.var_x() * vp,
        );
    }

    // group law: S(a) S(b) = S(a + b)
    let two_step = apply_exact(0.3, &apply_exact(0.2, &vacuum).unwrap()).unwrap();
    let one_step = apply_exact(0.5, &vacuum).unwrap();
    println!(
        "group law |S(0.3)S(0.2) - S(0.5)| applied to the vacuum: L2 = {:.3e}",
        two_step.l2_distance(&one_step).unwrap()
    );
}
