fn main() {
    std::process::exit(nielsen::cli::run(std::env::args_os()));
}
