fn main() {
    std::process::exit(lexsent::cli::run(std::env::args_os()));
}
