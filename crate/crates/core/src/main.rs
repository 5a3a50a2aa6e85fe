fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(bohmian_earth::cli::run(&argv));
}
