fn main() {
    std::process::exit(qcrel::cli::run(std::env::args_os()));
}
