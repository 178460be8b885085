fn main() {
    std::process::exit(coherent_lab::cli::run(std::env::args_os()));
}
