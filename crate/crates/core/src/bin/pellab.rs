fn main() {
    std::process::exit(pellab::cli::main_with_args(std::env::args_os()));
}
