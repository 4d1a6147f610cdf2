fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(tsum_cli::run(&argv));
}
