fn main() {
    std::process::exit(zariski_cli::main_with_args(std::env::args_os()));
}
