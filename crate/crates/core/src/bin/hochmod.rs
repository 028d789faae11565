fn main() {
    std::process::exit(hochmod::cli::main_with_args(std::env::args()));
}
