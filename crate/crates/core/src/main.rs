fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(semicont::cli::run(&args));
}
