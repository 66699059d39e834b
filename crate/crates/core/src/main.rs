fn main() {
    std::process::exit(tetherpath::cli::run());
}
