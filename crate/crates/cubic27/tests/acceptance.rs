//! Runs the twelve acceptance criteria and prints one line per criterion.

use cubic27::acceptance::Suite;
use std::process::ExitCode;

fn main() -> ExitCode {
    let suite = Suite::new();
    let outcomes = suite.run_all();
    for o in &outcomes {
        println!("{}", o.line());
        for c in o.checks.iter().filter(|c| !c.ok) {
            println!("    {}: {}", c.what, c.detail);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
