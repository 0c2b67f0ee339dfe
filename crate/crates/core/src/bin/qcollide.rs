fn main() {
    std::process::exit(qcollide::cli::main_with_args(std::env::args_os()));
}
