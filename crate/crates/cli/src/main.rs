fn main() {
    std::process::exit(chainfeas_cli::run(std::env::args_os()));
}
