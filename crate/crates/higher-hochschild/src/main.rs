fn main() {
    std::process::exit(higher_hochschild::cli::main_with_args(std::env::args_os()));
}
