use clap::Parser;

fn main() {
    let cli = hypwave_cli::Cli::parse();
    std::process::exit(hypwave_cli::run(cli));
}
