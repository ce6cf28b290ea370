//! Machine-readable verification reports, as the CLI emits them.
//!
//! Builds a run configuration programmatically, executes it, and prints the
//! deterministic JSON report (byte-identical across runs and thread counts)
//! together with the exit code the `pmc-verify` binary would return.
//!
//! Run: cargo run --example verification_report

use pmc_verify::cli::{execute, parse_args, ParseOutcome};

fn main() {
    let args = [
        "verify",
        "--surface",
        "clifford_torus",
        "--c",
        "1",
        "--r",
        "0.6",
        "--grid",
        "2",
        "--identities",
        "simons-phi,laplacian-t,schwarz-bound",
    ];
    let ParseOutcome::Run(config) = parse_args(args) else {
        panic!("arguments failed to parse");
    };
    let execution = execute(&config).unwrap();
    println!("exit code: {}\n", execution.exit_code);
    println!("{}", execution.report);
}
