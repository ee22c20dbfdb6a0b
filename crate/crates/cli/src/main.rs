fn main() {
    std::process::exit(hypercert_cli::run(std::env::args_os()));
}
