fn main() {
    std::process::exit(onelambda::cli::cli_main(std::env::args_os()));
}
