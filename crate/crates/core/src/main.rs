fn main() {
    std::process::exit(zetagaps::cli::run());
}
