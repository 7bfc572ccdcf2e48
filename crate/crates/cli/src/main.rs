fn main() {
    std::process::exit(nfold_cli::run(std::env::args_os()));
}
