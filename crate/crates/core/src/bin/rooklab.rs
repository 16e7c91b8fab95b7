fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(rooklab::cli::run(&argv));
}
