fn main() {
    std::process::exit(worm3::cli::run(std::env::args_os()));
}
