fn main() {
    std::process::exit(chowlab::cli::run(std::env::args_os()));
}
