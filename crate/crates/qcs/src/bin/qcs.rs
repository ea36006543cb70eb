use clap::Parser;

fn main() {
    let cli = qcs::cli::Cli::parse();
    let (out, code) = qcs::cli::run(&cli);
    if code == 0 || code == 1 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
