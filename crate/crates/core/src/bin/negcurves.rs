fn main() {
    std::process::exit(negcurves::cli::main_with_args(std::env::args_os()));
}
