use schwarz_fourier::verify::{all_passed, run_suite, Fault, Suite, DEFAULT_SEED};

#[test]
fn every_suite_passes_on_a_correct_build() {
    let outcomes = run_suite(Suite::All, DEFAULT_SEED, Fault::None);
    for o in &outcomes {
        println!("{o}");
    }
    assert!(outcomes.len() >= 30);
    assert!(all_passed(&outcomes), "failed: {:?}", outcomes.iter().filter(|o| !o.passed).collect::<Vec<_>>());
}

#[test]
fn dropped_nyquist_half_is_detected() {
    for suite in [Suite::Fourier, Suite::Dtd] {
        let outcomes = run_suite(suite, DEFAULT_SEED, Fault::DropNyquistHalf);
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
        assert!(!failed.is_empty(), "{suite:?} suite missed the fault");
    }
    let fourier = run_suite(Suite::Fourier, DEFAULT_SEED, Fault::DropNyquistHalf);
    let failed: Vec<_> = fourier.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    assert!(failed.contains(&"nyquist_mode_reproduced"));
    assert!(failed.contains(&"interpolation_nodal_exact"));
}

#[test]
fn suite_names_parse() {
    for s in ["kernels", "fourier", "dtd", "schwarz", "all"] {
        assert!(s.parse::<Suite>().is_ok());
    }
    assert!("everything".parse::<Suite>().is_err());
    assert_eq!("drop-nyquist-half".parse::<Fault>().unwrap(), Fault::DropNyquistHalf);
}
