use std::fs::File;

use adiashort::models::{read_gamma_csv, synthesize_profile, validate_model, DriveTable, Parity, Sign};
use adiashort::{integrate, DriveModel, GammaPolicy, SimulationConfig, Window};

#[test]
fn profile_csv_reloads_as_custom_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.csv");
    let w = Window::symmetric(15.0).unwrap();
    let model = DriveModel::landau_zener(1.0).unwrap();
    let profile = synthesize_profile(&model, w, 3001, Sign::Plus).unwrap();
    profile.write_csv(File::create(&path).unwrap()).unwrap();

    let spline = read_gamma_csv(File::open(&path).unwrap()).unwrap();
    let policy = GammaPolicy::custom(spline);
    for t in [-14.9, -3.3, 0.0, 0.01, 7.77] {
        let exact = GammaPolicy::shortcut(Sign::Plus, w).gamma(&model, t).unwrap();
        assert!((policy.gamma(&model, t).unwrap() - exact).abs() < 1e-4, "t={t}");
    }
    // a sampled γ still gives near-perfect transfer
    let traj = integrate(&SimulationConfig::new(model, policy, w)).unwrap();
    assert!(traj.last().p2() > 0.995);
    assert!(traj.max_abs_a_minus() < 1e-3);
}

#[test]
fn tabulated_drive_behaves_like_analytic_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("drive.csv");
    let mut text = String::from("t,omega,delta\n");
    for i in 0..=600 {
        let t = -15.0 + 0.05 * f64::from(i);
        text.push_str(&format!("{t},{},{}\n", 1.0 / t.cosh(), t.tanh()));
    }
    std::fs::write(&path, text).unwrap();

    let table = DriveTable::read_csv(File::open(&path).unwrap()).unwrap();
    let tab = DriveModel::tabulated(table);
    let ae = DriveModel::allen_eberly(1.0, 1.0).unwrap();
    let w = Window::symmetric(15.0).unwrap();

    let diag = validate_model(&tab, w);
    assert_eq!(diag.coupling_parity, Parity::Even);
    assert_eq!(diag.detuning_parity, Parity::Odd);
    assert!(diag.norm_guarantee);

    let run = |m: &DriveModel| {
        let cfg = SimulationConfig::new(m.clone(), GammaPolicy::shortcut(Sign::Plus, w), w);
        integrate(&cfg).unwrap().final_state()
    };
    assert!(run(&tab).distance(&run(&ae)) < 1e-4);
}
