fn main() {
    std::process::exit(grs_core::cli::main_with_args(std::env::args_os()));
}
