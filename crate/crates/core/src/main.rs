fn main() {
    std::process::exit(qhodge::cli::main_with_args(std::env::args_os()))
}
