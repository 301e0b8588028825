use clap::Parser;

fn main() {
    std::process::exit(galtrace::cli::main_with(galtrace::cli::Cli::parse()));
}
