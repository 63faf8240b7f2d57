fn main() {
    std::process::exit(ht::cli::main_with_args(std::env::args()));
}
