fn main() {
    std::process::exit(rotorgraph_cli::run(std::env::args_os()));
}
