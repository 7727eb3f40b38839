use std::io::Write;

fn main() {
    stablepot_cli::configure_threads();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = stablepot_cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
