fn main() {
    std::process::exit(thomas::frontend::run_cli(std::env::args_os()));
}
