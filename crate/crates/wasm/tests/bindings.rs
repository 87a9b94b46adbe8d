//! Success paths only: constructing a `JsError` needs a wasm host.

use fdwave_wasm::{coefficients, solve_1d, spectrum};

#[test]
fn solve_matches_exact_profile() {
    let s = solve_1d(32, 32, 10, 1.5, 1.5, "pcg-rchan").unwrap();
    let (x, num, exact) = (s.x(), s.numeric(), s.exact());
    assert_eq!(x.len(), 33);
    assert_eq!((num[0], num[32]), (0.0, 0.0));
    let final_err = num.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(final_err <= s.max_error() && s.max_error() < 1e-3, "{final_err} {}", s.max_error());
    assert_eq!(s.iterations().len(), 32);
    assert_eq!(s.setup_iters(), -1);
    let g = solve_1d(32, 32, 10, 1.5, 1.5, "gsf-pcg-rchan").unwrap();
    assert!(g.setup_iters() > 0);
    assert!((g.max_error() - s.max_error()).abs() < 1e-10);
}

#[test]
fn spectrum_respects_bound() {
    let sp = spectrum(64, 64, 10, 1.5, 1.5, "rchan").unwrap();
    assert_eq!(sp.original().len(), 63);
    assert!(sp.preconditioned().iter().all(|&v| v > sp.lower_bound()));
    assert!(spectrum(16, 16, 4, 1.5, 1.5, "none").unwrap().preconditioned().is_empty());
}

#[test]
fn coefficient_lengths_and_signs() {
    let c = coefficients(1.5, 0.5, 4, 0.01, 20).unwrap();
    assert_eq!((c.g_hat().len(), c.g().len(), c.lambda().len(), c.mu().len()), (21, 21, 21, 21));
    assert!(c.g_hat()[0] > 0.0 && c.g_hat()[1..].iter().all(|&v| v < 0.0));
    assert_eq!(c.g()[0], 1.0);
}
