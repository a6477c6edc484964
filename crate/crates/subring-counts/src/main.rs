fn main() {
    std::process::exit(subring_counts::cli::run(std::env::args_os()));
}
