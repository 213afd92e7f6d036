fn main() {
    std::process::exit(peek2::cli::main());
}
