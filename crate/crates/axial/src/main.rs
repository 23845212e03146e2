use std::io::Write;

fn main() {
    let report = axial::run(std::env::args_os());
    std::io::stdout().write_all(report.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(report.stderr.as_bytes()).expect("stderr");
    std::process::exit(report.code);
}
