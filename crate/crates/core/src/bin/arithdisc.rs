fn main() {
    std::process::exit(arithdisc::cli::main_with_args(std::env::args_os()));
}
