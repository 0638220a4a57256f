fn main() {
    std::process::exit(knotpoly::cli::run(std::env::args_os()));
}
