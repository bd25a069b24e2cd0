fn main() {
    std::process::exit(antiflag::cli::run(std::env::args()));
}
