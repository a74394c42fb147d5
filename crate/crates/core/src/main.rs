fn main() {
    std::process::exit(sonine_core::cli::main_with_args(std::env::args_os()));
}
