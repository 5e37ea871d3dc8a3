fn main() -> std::process::ExitCode {
    ccrit_core::cli::main()
}
