fn main() {
    std::process::exit(ftplast::cli::run(std::env::args_os()));
}
