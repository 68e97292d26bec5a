use clap::Parser;
use cubsc_cli::{exit, init_threads, run, RunConfig};

fn main() {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::INVALID } else { exit::OK };
            std::process::exit(code);
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        std::process::exit(exit::INVALID);
    }
    match run(&cfg) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit::INVALID);
        }
    }
}
