fn main() {
    std::process::exit(cominpair::cli::run(std::env::args_os()));
}
