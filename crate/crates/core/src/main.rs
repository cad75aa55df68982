fn main() {
    std::process::exit(orient3::cli::main_with_args(std::env::args_os()));
}
