fn main() {
    std::process::exit(coxlevy_cli::run(std::env::args_os()));
}
