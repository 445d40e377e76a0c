fn main() {
    std::process::exit(permpoly::cli::run());
}
