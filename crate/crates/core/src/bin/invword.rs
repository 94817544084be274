fn main() -> std::process::ExitCode {
    invariant_word::cli::main()
}
