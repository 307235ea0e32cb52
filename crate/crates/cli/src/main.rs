fn main() -> std::process::ExitCode {
    hyperfourier_cli::run(std::env::args_os())
}
