fn main() {
    std::process::exit(hypcat::cli::run(std::env::args_os()));
}
