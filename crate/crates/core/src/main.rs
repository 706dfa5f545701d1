fn main() {
    std::process::exit(workdist::cli::main_with_args(std::env::args_os()));
}
