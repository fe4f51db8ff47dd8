fn main() {
    std::process::exit(hamrep::cli::run(std::env::args_os()));
}
