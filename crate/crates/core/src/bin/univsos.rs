fn main() {
    std::process::exit(univsos::cli::run(std::env::args_os()));
}
