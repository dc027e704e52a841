fn main() {
    std::process::exit(dcqa::cli::run());
}
