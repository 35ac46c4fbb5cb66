fn main() -> std::process::ExitCode {
    specineq::cli::main_with(std::env::args_os())
}
