fn main() {
    std::process::exit(kframes::cli::run(std::env::args_os()));
}
