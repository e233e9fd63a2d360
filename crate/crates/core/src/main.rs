fn main() {
    std::process::exit(markov_spectra::cli::cli_main(std::env::args_os()));
}
