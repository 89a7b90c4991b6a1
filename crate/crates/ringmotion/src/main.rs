fn main() {
    std::process::exit(ringmotion::cli_stub());
}
