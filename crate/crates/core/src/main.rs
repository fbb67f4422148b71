fn main() {
    std::process::exit(pdm_channel::cli::main_with(std::env::args_os()));
}
