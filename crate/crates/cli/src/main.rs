fn main() {
    std::process::exit(maxab_cli::main_with_args(std::env::args_os()));
}
