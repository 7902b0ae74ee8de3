fn main() {
    std::process::exit(bcf::cli::run());
}
