fn main() {
    std::process::exit(fsgraph_cli::run(std::env::args_os()));
}
