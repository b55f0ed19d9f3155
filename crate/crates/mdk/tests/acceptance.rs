//! Acceptance battery: one test and one printed pass/fail line per
//! criterion. Run with `--nocapture` to see the lines as they complete.

use mdk::verify::{self, CheckResult};
use mdk_core::TransitionMatrix;

fn report(n: usize, name: &str, results: &[CheckResult]) {
    let pass = results.iter().all(|c| c.pass);
    println!(
        "criterion {n:2} ({name}): {}",
        if pass { "pass" } else { "FAIL" }
    );
    for c in results {
        assert!(c.pass, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn criterion_01_golden_matrices() {
    report(1, "golden I and M matrices", &[verify::check_golden_matrices()]);
}

#[test]
fn criterion_02_golden_differences() {
    report(2, "golden M^t - I^t matrices", &[verify::check_golden_differences()]);
}

#[test]
fn criterion_03_vertex_counts() {
    report(3, "Fibonacci vertex counts", &[verify::check_vertex_counts()]);
}

#[test]
fn criterion_04_intertwining() {
    report(
        4,
        "symbolic intertwining",
        &[
            verify::check_intertwining_fibonacci(),
            verify::check_intertwining_full2(),
        ],
    );
}

#[test]
fn criterion_05_kernel_triviality() {
    report(
        5,
        "trivial kernels",
        &[verify::check_kernels_fibonacci(), verify::check_kernels_full()],
    );
}

#[test]
fn criterion_06_reduction_chain() {
    report(6, "reduction chain", &[verify::check_reduction_chain()]);
}

#[test]
fn criterion_07_n_h_stage() {
    report(7, "N/H stage", &[verify::check_n_h_stage()]);
}

#[test]
fn criterion_08_r_q_j_stage() {
    report(8, "R/Q/J stage", &[verify::check_r_q_j_stage()]);
}

#[test]
fn criterion_09_g_sequence_filtration() {
    report(9, "g sequence and filtration", &[verify::check_g_filtration()]);
}

#[test]
fn criterion_10_dyck_family_torsion() {
    report(
        10,
        "full-shift torsion vs oracle",
        &[
            verify::check_torsion_profile(2),
            verify::check_torsion_profile(3),
        ],
    );
}

#[test]
fn criterion_11_reducer_oracle_agreement() {
    report(
        11,
        "reducer vs path oracle, exhaustive",
        &[
            verify::check_reducer_oracle(&TransitionMatrix::fibonacci(), "fibonacci", 8),
            verify::check_reducer_oracle(&TransitionMatrix::full(2).unwrap(), "full:2", 8),
        ],
    );
}

#[test]
fn criterion_12_property_suites() {
    report(
        12,
        "property suites",
        &[
            verify::check_snf_random(500),
            verify::check_word_symmetries(&TransitionMatrix::fibonacci(), "fibonacci"),
            verify::check_word_symmetries(&TransitionMatrix::full(2).unwrap(), "full:2"),
        ],
    );
}

#[test]
fn criterion_13_spectral() {
    report(13, "Perron eigenvalue", &[verify::check_spectral()]);
}
