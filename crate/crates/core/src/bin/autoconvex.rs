fn main() {
    std::process::exit(autoconvex::cli::run(std::env::args_os()));
}
