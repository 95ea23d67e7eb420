//! Independent oracles re-deriving the frozen reference values used in
//! the unit tests: adaptive Simpson quadrature after substitutions that
//! remove the endpoint singularities, plus a cusp-splitting variant for
//! the evaluated ramp products.

use fracspec_core::fracops::{hat_ramps, l2_inner_ramps, rl_derivative};
use fracspec_core::special::{gauss_jacobi, kernel_primitive};
use fracspec_core::Mesh;

/// Adaptive Simpson with absolute tolerance and a depth cap.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, depth)
}

const COS_INTEGRAL_REF: f64 = 1.1600841290182095528207356822769862651377;
const KERNEL_REF: f64 = 0.7435427651243745766389001474591571567414;
const HAT_INNER_REF: f64 = -0.703_009_014_910_571_7;

#[test]
fn adaptive_oracle_rederives_singular_cosine_integral() {
    // ∫_0^1 t^{-1/4} cos t dt = (4/3) ∫_0^1 cos(u^{4/3}) du after t = u^{4/3}
    let oracle = 4.0 / 3.0 * adaptive_simpson(&|u: f64| u.powf(4.0 / 3.0).cos(), 0.0, 1.0, 1e-14, 40);
    assert!(
        (oracle - COS_INTEGRAL_REF).abs() <= 1e-13,
        "oracle {oracle} vs frozen {COS_INTEGRAL_REF}"
    );
    let rule = gauss_jacobi(-0.25f64, 8).unwrap();
    let got = rule.integrate(|t| t.cos());
    assert!((got - oracle).abs() <= 1e-12 * oracle.abs());
}

#[test]
fn adaptive_oracle_rederives_kernel_primitive() {
    // ∫_0^1 t^{0.4} (t+0.5)^{0.6} dt = (5/7) ∫_0^1 (u^{5/7} + 0.5)^{0.6} du
    // after t = u^{5/7}
    let oracle = 5.0 / 7.0
        * adaptive_simpson(
            &|u: f64| (u.powf(5.0 / 7.0) + 0.5).powf(0.6),
            0.0,
            1.0,
            1e-14,
            40,
        );
    assert!(
        (oracle - KERNEL_REF).abs() <= 1e-12,
        "oracle {oracle} vs frozen {KERNEL_REF}"
    );
    let got: f64 = kernel_primitive(0.4, 0.6, 1.0, 0.5).unwrap();
    assert!((got - oracle).abs() <= 1e-11 * oracle.abs());
}

#[test]
fn adaptive_oracle_rederives_fractional_hat_inner_product() {
    // pointwise product of the evaluated fractional hat derivatives,
    // integrated element by element (the cusps sit at the panel ends)
    let mesh = Mesh::new(0.0f64, 1.0, 4).unwrap();
    let t = 0.7;
    let d2 = rl_derivative(&hat_ramps(&mesh, 2).unwrap(), t).unwrap();
    let d3 = rl_derivative(&hat_ramps(&mesh, 3).unwrap(), t).unwrap();
    let f = |x: f64| d2.eval(x) * d3.eval(x);
    let mut oracle = 0.0;
    for e in 0..4 {
        oracle += adaptive_simpson(&f, mesh.node(e), mesh.node(e + 1), 1e-13, 48);
    }
    assert!(
        (oracle - HAT_INNER_REF).abs() <= 2e-9,
        "oracle {oracle} vs frozen {HAT_INNER_REF}"
    );
    let exact = l2_inner_ramps(&d2, &d3, &mesh).unwrap();
    assert!((exact - oracle).abs() <= 5e-9 * oracle.abs());
}
