fn main() {
    std::process::exit(tabsynth::cli::run(std::env::args_os()));
}
