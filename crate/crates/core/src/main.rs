fn main() {
    std::process::exit(schoenberg::cli::run(std::env::args_os()));
}
