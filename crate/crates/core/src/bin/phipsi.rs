fn main() {
    std::process::exit(phipsi::cli::main_with_args(std::env::args_os()));
}
