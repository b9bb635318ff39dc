fn main() {
    std::process::exit(kronhwv::cli::cli_main(std::env::args_os()));
}
