fn main() {
    std::process::exit(orientgraph::cli::run(std::env::args_os()));
}
