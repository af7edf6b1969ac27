fn main() {
    std::process::exit(convkit::cli::main_with(std::env::args_os()));
}
