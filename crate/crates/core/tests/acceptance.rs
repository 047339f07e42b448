//! One test per acceptance criterion, so the harness reports a pass/fail
//! line for each. Details print with `--nocapture`.

use cubic_bm::verify;

fn criterion(id: u8) {
    let c = verify::run(id);
    println!("{}", c.line());
    assert!(c.passed, "{}", c.line());
}

macro_rules! criteria {
    ($($name:ident = $id:literal),* $(,)?) => {
        $(#[test] fn $name() { criterion($id) })*
    };
}

criteria! {
    criterion_01_cubic_reciprocity = 1,
    criterion_02_wild_digits = 2,
    criterion_03_mod9_congruence = 3,
    criterion_04_three_prime_counterexamples = 4,
    criterion_05_mod18_family_member = 5,
    criterion_06_pairing_on_integral_points = 6,
    criterion_07_special_values_and_surjectivity = 7,
    criterion_08_oracle_equivalences = 8,
    criterion_09_density_trends = 9,
    criterion_10_soundness_controls = 10,
}
