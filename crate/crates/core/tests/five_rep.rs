use desitter_core::algebra::{fock_structure_table, GeneratorSet, QUADRATIC_MARGIN};
use desitter_core::five::*;
use desitter_core::fock::FockSpace;
use desitter_core::generator::Generator;
use desitter_core::C64;
use nalgebra::Matrix5;

/// Plain power series, summed until the terms vanish; independent of the
/// scaling-and-squaring exponential.
fn series_exp(g: &FiveMatrix, theta: f64) -> Matrix5<C64> {
    let a = g.matrix * C64::new(0.0, theta);
    let mut term = Matrix5::<C64>::identity();
    let mut sum = term;
    for k in 1..200 {
        term = term * a / C64::new(k as f64, 0.0);
        sum += term;
        if term.iter().all(|z| z.norm() < 1e-300) {
            break;
        }
    }
    sum
}

fn max_diff(a: &Matrix5<C64>, b: &Matrix5<C64>) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

#[test]
fn rotation_closed_form() {
    for theta in [0.3f64, -1.1, 2.0, std::f64::consts::PI] {
        let m = exponentiate(&generator_matrix(Generator::J3), theta);
        let (s, c) = theta.sin_cos();
        let mut expected = Matrix5::<C64>::identity();
        // exp(iθJ3) with J3 = -i at (1,2): x' = x cos θ + y sin θ
        expected[(0, 0)] = C64::new(c, 0.0);
        expected[(0, 1)] = C64::new(s, 0.0);
        expected[(1, 0)] = C64::new(-s, 0.0);
        expected[(1, 1)] = C64::new(c, 0.0);
        assert!(max_diff(&m.matrix, &expected) < 1e-14, "θ = {theta}");
        assert!(max_diff(&m.matrix, &series_exp(&generator_matrix(Generator::J3), theta)) < 1e-13);
    }
}

#[test]
fn boost_closed_form() {
    for eta in [0.4f64, -1.5, 2.5] {
        let m = exponentiate(&generator_matrix(Generator::K3), eta);
        let (ch, sh) = (eta.cosh(), eta.sinh());
        let mut expected = Matrix5::<C64>::identity();
        expected[(2, 2)] = C64::new(ch, 0.0);
        expected[(3, 3)] = C64::new(ch, 0.0);
        expected[(2, 3)] = C64::new(-sh, 0.0);
        expected[(3, 2)] = C64::new(-sh, 0.0);
        assert!(max_diff(&m.matrix, &expected) < 1e-12 * ch, "η = {eta}");
    }
}

#[test]
fn exponentials_match_series() {
    for g in Generator::ALL {
        for theta in [0.0, 0.5, -2.0, 3.0] {
            let m = exponentiate(&generator_matrix(g), theta);
            assert!(max_diff(&m.matrix, &series_exp(&generator_matrix(g), theta)) < 1e-12, "{g} {theta}");
            assert!(m.max_imag() < 1e-13);
        }
        assert_eq!(exponentiate(&generator_matrix(g), 0.0).matrix, Matrix5::identity());
    }
}

#[test]
fn metric_is_preserved() {
    assert!(preserve_metric_check(&generator_matrix(Generator::J1), &[0.5, -0.5, 2.0, -2.0]) < 1e-12);
    assert!(preserve_metric_check(&generator_matrix(Generator::K3), &[1.5]) < 1e-10);
    assert!(preserve_metric_check(&generator_matrix(Generator::S0), &[std::f64::consts::PI]) < 1e-12);
    for g in Generator::ALL {
        assert!(preserve_metric_check(&generator_matrix(g), &[0.5, -0.5, 2.0, -2.0]) < 1e-10, "{g}");
    }
    // a group element keeps the quadratic form of a point
    let v = FiveVector::new(0.3, -1.0, 2.0, 0.7, 1.4);
    let w = exponentiate(&generator_matrix(Generator::Q2), 0.8).apply(&v);
    assert!((w.quadratic_form() - v.quadratic_form()).abs() < 1e-12);
}

#[test]
fn representations_share_structure_constants() {
    let gens = GeneratorSet::build(FockSpace::new(6).unwrap());
    let fock = fock_structure_table(&gens, QUADRATIC_MARGIN).unwrap();
    let five = five_structure_table();
    assert!(fock.max_deviation(&five) < 1e-10);
    assert!(five.max_residual() < 1e-12);
}

#[test]
fn poincare_table() {
    use PoincareGenerator as P;
    let set = PoincareSet::standard();
    let report = check_poincare(&set);
    assert_eq!(report.report.entries.len(), 45);
    assert_eq!(report.report.max_residual, 0.0);
    assert_eq!(report.report.entry("[J3,P1]").unwrap().rhs, "i*P2");
    assert_eq!(report.report.entry("[P1,P2]").unwrap().rhs, "0");
    assert_eq!(report.report.entry("[K1,P1]").unwrap().rhs, "-i*P0");
    assert_eq!(report.report.entry("[K3,P0]").unwrap().rhs, "-i*P3");
    let (c, _) = poincare_commutator(&set, P::K3, P::P0);
    assert!(c.coefficient(P::P3).norm() > 0.5);

    let holds: Vec<(&str, bool)> = report.candidates.iter().map(|p| (p.relation.as_str(), p.holds)).collect();
    assert_eq!(
        holds,
        vec![
            ("[P_i, J_k] = -i eps_ijk J_k", false),
            ("[P_i, K_k] = -i eps_ijk K_k", false),
            ("[P_i, P_i] = 0", true),
            ("[P_i, P_0] = 0", true),
            ("[P_0, J_i] = 0", true),
            ("[P_0, K_i] = 0", false),
        ]
    );
}

#[test]
fn matrix_json_layout() {
    let json = serde_json::to_value(generator_matrix(Generator::J3)).unwrap();
    assert_eq!(json["label"], "J3");
    assert_eq!(json["matrix"][0][1], serde_json::json!([0.0, -1.0]));
    assert_eq!(json["matrix"][1][0], serde_json::json!([0.0, 1.0]));
    assert_eq!(json["matrix"].as_array().unwrap().len(), 5);
}
