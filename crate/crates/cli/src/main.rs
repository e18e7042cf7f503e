fn main() {
    std::process::exit(xflow_cli::run_cli(std::env::args_os()));
}
