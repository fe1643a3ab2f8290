fn main() -> std::process::ExitCode {
    coverage_planner::cli::main()
}
