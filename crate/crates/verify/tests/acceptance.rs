use std::process::ExitCode;

use qinv_core::verify::{self, Level};

fn main() -> ExitCode {
    let results = match verify::run(Level::Desk, 2024, |r| println!("{}", r.line())) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance run aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
