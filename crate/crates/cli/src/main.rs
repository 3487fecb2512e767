fn main() {
    std::process::exit(hquad_cli::run(std::env::args_os()));
}
