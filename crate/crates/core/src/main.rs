fn main() {
    std::process::exit(dustboard::cli::run(std::env::args_os()));
}
