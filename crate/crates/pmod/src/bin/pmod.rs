fn main() {
    std::process::exit(pmod::cli::run());
}
