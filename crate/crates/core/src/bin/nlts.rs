fn main() {
    std::process::exit(nlts::cli::main_with_args(std::env::args_os()));
}
