fn main() {
    std::process::exit(qaffine_cli::run(std::env::args_os()));
}
