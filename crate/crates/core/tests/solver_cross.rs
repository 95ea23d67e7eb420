//! Cross-method agreement between the FEM pipeline and the closed-form
//! inverse (direct) solver.

use fracspec_core::assembly::{mass_matrix, stiffness_matrix};
use fracspec_core::direct::{apply_inverse, principal_eigen_power};
use fracspec_core::eigen::solve_eigenproblem;
use fracspec_core::fracops::GridFunction;
use fracspec_core::{FractionalOrders, Matrix64, Mesh};

/// Test-side dense solver: plain Gaussian elimination with partial
/// pivoting, independent of the library's factorizations.
#[allow(clippy::needless_range_loop)]
fn gauss_solve(a: &Matrix64, b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m = vec![vec![0.0f64; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = a[(i, j)];
        }
        m[i][n] = b[i];
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &s| m[r][col].abs().partial_cmp(&m[s][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        let d = m[col][col];
        assert!(d.abs() > 0.0);
        for row in (col + 1)..n {
            let f = m[row][col] / d;
            if f != 0.0 {
                for j in col..=n {
                    m[row][j] -= f * m[col][j];
                }
            }
        }
    }
    let mut x = vec![0.0f64; n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for j in (row + 1)..n {
            acc -= m[row][j] * x[j];
        }
        x[row] = acc / m[row][row];
    }
    x
}

#[test]
fn fem_bvp_solution_matches_direct_inverse() {
    // K U = load for f = 1 against the closed-form inverse, nodally
    let n = 200;
    let mesh = Mesh::new(0.0f64, 1.0, n).unwrap();
    let orders = FractionalOrders::new(0.6, 0.9).unwrap();
    let k = stiffness_matrix(&mesh, &orders).unwrap();
    // load_j = ∫ f phi_j = h for f = 1
    let load = vec![mesh.h(); n - 1];
    let fem = gauss_solve(&k, &load);

    let direct = apply_inverse(&GridFunction::from_real_fn(mesh, |_| 1.0), &orders).unwrap();
    let scale = direct.u.max_abs();
    let mut worst = 0.0f64;
    for j in 1..n {
        worst = worst.max((fem[j - 1] - direct.u.values()[j].re).abs() / scale);
    }
    assert!(worst <= 0.02, "FEM vs direct max relative gap {worst}");
}

#[test]
fn inverse_power_matches_fem_principal_eigenvalue() {
    let n = 200;
    let mesh = Mesh::new(0.0f64, 1.0, n).unwrap();
    let orders = FractionalOrders::new(0.6, 0.9).unwrap();
    let spectrum = solve_eigenproblem(&mesh, &orders).unwrap();
    let fem_lambda = spectrum.pairs[0].lambda.re;
    let (power_lambda, u, _) = principal_eigen_power(&orders, &mesh, 1e-9, 200).unwrap();
    let gap = (power_lambda - fem_lambda).abs() / fem_lambda;
    assert!(
        gap <= 0.01,
        "principal eigenvalue gap {gap}: FEM {fem_lambda}, power {power_lambda}"
    );
    for j in 1..n {
        assert!(u.values()[j].re > 0.0, "power eigenfunction not positive at {j}");
    }
}

#[test]
fn spectrum_scales_exactly_with_interval_width() {
    // the kernel scaling F(p,q,cX,cd) = c^{p+q+1} F(p,q,X,d) makes the
    // discrete spectrum covariant: lambda(a,b) = lambda(0,1) (b-a)^{-(alpha+beta)}
    let orders = FractionalOrders::new(0.6, 0.9).unwrap();
    let unit = fracspec_core::eigen::eigenvalues_for(
        &Mesh::new(0.0f64, 1.0, 24).unwrap(),
        &orders,
    )
    .unwrap();
    let wide = fracspec_core::eigen::eigenvalues_for(
        &Mesh::new(-2.0f64, 3.0, 24).unwrap(),
        &orders,
    )
    .unwrap();
    let factor = 5.0f64.powf(-(0.6 + 0.9));
    for (u, w) in unit.iter().zip(&wide) {
        let want = u * factor;
        assert!(
            (w - want).norm() <= 1e-9 * want.norm().max(1e-12),
            "scaling violated: {w} vs {want}"
        );
    }
}

#[test]
fn strongly_nonsymmetric_case_has_single_real_low_mode() {
    // at (0.2, 0.9) only the first eigenpair is real among the
    // numerically accurate low indices
    let mesh = Mesh::new(0.0f64, 1.0, 100).unwrap();
    let orders = FractionalOrders::new(0.2, 0.9).unwrap();
    let spectrum = solve_eigenproblem(&mesh, &orders).unwrap();
    let third = spectrum.pairs.len() / 3;
    for (i, p) in spectrum.pairs.iter().take(third).enumerate() {
        let real = fracspec_core::eigen::is_real_eigenvalue(p.lambda);
        if i == 0 {
            assert!(real, "principal eigenvalue not real: {}", p.lambda);
        } else {
            assert!(!real, "unexpected real eigenvalue at index {i}: {}", p.lambda);
        }
    }
}

#[test]
fn mass_action_consistency() {
    // M applied to samples of a smooth function approximates the load
    // vector of that function (sanity tying assembly and mesh together)
    let mesh = Mesh::new(0.0f64, 1.0, 64).unwrap();
    let m = mass_matrix(&mesh);
    let f: Vec<f64> = (1..64).map(|j| (std::f64::consts::PI * mesh.node(j)).sin()).collect();
    let mf = m.matvec(&f);
    for (j, v) in mf.iter().enumerate() {
        let x = mesh.node(j + 1);
        let want = mesh.h() * (std::f64::consts::PI * x).sin();
        assert!((v - want).abs() <= mesh.h() * mesh.h() * 2.0);
    }
}
