use std::io::Write;

fn main() {
    let out = coxwalls_cli::run_command(std::env::args_os());
    match &out.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.report) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(out.report.as_bytes());
        }
    }
    std::process::exit(out.code);
}
