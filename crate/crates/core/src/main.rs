fn main() {
    std::process::exit(trichrome::cli::run_from(std::env::args_os()));
}
