use clap::Parser;

fn main() {
    let cli = blockqs_bench::cli::Cli::parse();
    match blockqs_bench::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
