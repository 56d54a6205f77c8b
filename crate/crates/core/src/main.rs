fn main() {
    std::process::exit(iselab::cli::run(std::env::args_os()));
}
