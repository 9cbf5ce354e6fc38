fn main() {
    std::process::exit(reflekt::cli::main_with_args(std::env::args_os()));
}
