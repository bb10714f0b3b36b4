fn main() {
    std::process::exit(superensemble::cli::run(std::env::args_os()));
}
