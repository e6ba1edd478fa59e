//! Acceptance run: one `[PASS]` or `[FAIL]` line per criterion, nonzero exit
//! if any criterion fails. The library checks are the same functions the core
//! integration tests run; the CLI criterion drives the built binary.

#[allow(dead_code, unused_imports)]
#[path = "../../core/tests/lattice.rs"]
mod lattice;

#[allow(dead_code, unused_imports)]
#[path = "../../core/tests/fourier.rs"]
mod fourier;

#[allow(dead_code, unused_imports)]
#[path = "../../core/tests/oracles.rs"]
mod oracles;

#[allow(dead_code, unused_imports)]
#[path = "../../core/tests/wavelets.rs"]
mod wavelets;

use std::panic;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<fn()>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "translation lattice laws",
            checks: vec![
                lattice::lattice_norms_vanish_only_at_zero,
                lattice::lattice_is_symmetric,
                lattice::lattice_translates_onto_itself,
                lattice::lattice_digit_splitting_identity,
            ],
        },
        Criterion {
            id: 2,
            title: "character system",
            checks: vec![
                lattice::characters_are_orthonormal_on_the_unit_ball,
                lattice::characters_are_trivial_on_the_lattice,
                lattice::results_do_not_depend_on_the_modulus,
            ],
        },
        Criterion {
            id: 3,
            title: "Fourier engine",
            checks: vec![
                fourier::plancherel_and_inversion,
                fourier::transform_of_an_indicator,
                fourier::covariance_of_dilated_translates,
            ],
        },
        Criterion {
            id: 4,
            title: "Shannon multiwavelet",
            checks: vec![wavelets::shannon_is_an_orthonormal_mra_multiwavelet],
        },
        Criterion {
            id: 5,
            title: "annulus family",
            checks: vec![wavelets::annulus_family_is_parseval_not_orthonormal],
        },
        Criterion {
            id: 6,
            title: "shifted-ball family",
            checks: vec![wavelets::shifted_ball_family_is_parseval],
        },
        Criterion { id: 7, title: "negative controls", checks: vec![wavelets::negative_controls] },
        Criterion {
            id: 8,
            title: "cross-oracle equivalences",
            checks: vec![
                oracles::wavelet_sets_match_frame_conditions,
                oracles::multiplicity_equals_fiber_rank,
                oracles::dimension_function_matches_multiplicity,
                oracles::dilation_test_agrees_with_brute_force,
                wavelets::multiplicity_matches_fiber_rank,
            ],
        },
        Criterion { id: 9, title: "spectral identities", checks: vec![wavelets::spectral_identities] },
        Criterion { id: 10, title: "command-line scripts", checks: vec![bundled_scripts] },
    ]
}

fn scripts() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts");
    let mut all: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("scripts directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "lfs"))
        .collect();
    all.sort();
    all
}

fn lfpc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lfpc")).args(args).output().expect("run lfpc")
}

/// Every bundled script parses, survives a print/parse round trip, gives the
/// same bytes on two runs, and exits with the code it declares.
fn bundled_scripts() {
    let all = scripts();
    assert!(all.len() >= 4, "expected bundled scripts");
    for path in all {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(&path).unwrap();
        let tree = lfpc_cli::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = lfpc_cli::print(&tree);
        assert_eq!(lfpc_cli::parse(&printed).unwrap(), tree, "{name}: round trip");
        let expected: i32 = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect-exit:"))
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or_else(|| panic!("{name}: missing expect-exit"));
        let p = path.to_str().unwrap();
        let first = lfpc(&["--mode", "report", p]);
        let second = lfpc(&["--mode", "report", p]);
        assert_eq!(first.status.code(), Some(expected), "{name}: exit code");
        assert_eq!(first.stdout, second.stdout, "{name}: output differs between runs");
        for line in String::from_utf8(first.stdout).unwrap().lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(lfpc(&[p]).status.code(), Some(expected), "{name}: strict exit code");
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let ok = c.checks.iter().all(|check| panic::catch_unwind(*check).is_ok());
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] C{} {} ({:.1}s)", c.id, c.title, start.elapsed().as_secs_f64());
        if !ok {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
