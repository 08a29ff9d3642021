fn main() {
    std::process::exit(quatseq_cli::main_with_args(std::env::args_os()));
}
