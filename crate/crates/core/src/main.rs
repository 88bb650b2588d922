fn main() {
    std::process::exit(hurwitz::cli::main_with_args(std::env::args_os()));
}
