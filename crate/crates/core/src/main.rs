fn main() {
    std::process::exit(graver::cli_main(std::env::args_os()));
}
