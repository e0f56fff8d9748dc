fn main() {
    std::process::exit(evencox::cli::run(std::env::args_os()));
}
