fn main() {
    std::process::exit(cumulant_calculus::cli::run(std::env::args_os()));
}
