use std::process::ExitCode;

fn main() -> ExitCode {
    let report = pcml_core::cli::run(std::env::args_os());
    let text = report.text();
    if report.exit_code != pcml_core::cli::EXIT_USAGE {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    ExitCode::from(report.exit_code as u8)
}
