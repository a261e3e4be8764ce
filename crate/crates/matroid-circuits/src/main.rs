fn main() {
    std::process::exit(matroid_circuits::cli::run(std::env::args_os()));
}
