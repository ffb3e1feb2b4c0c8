fn main() {
    std::process::exit(aded_harness::cli::main_with_args(std::env::args_os()));
}
