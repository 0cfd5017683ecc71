fn main() {
    std::process::exit(psembed::cli::run_from(std::env::args_os()));
}
