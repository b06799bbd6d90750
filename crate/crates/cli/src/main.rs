fn main() {
    std::process::exit(maxsur_cli::run(std::env::args_os()));
}
