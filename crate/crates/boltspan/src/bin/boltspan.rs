fn main() {
    std::process::exit(boltspan::cli::run(std::env::args()));
}
