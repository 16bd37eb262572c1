fn main() {
    std::process::exit(ratideal_cli::run(std::env::args_os()));
}
