fn main() {
    std::process::exit(iris::cli::run_cli(std::env::args_os()));
}
