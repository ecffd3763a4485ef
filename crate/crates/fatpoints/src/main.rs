fn main() {
    std::process::exit(fatpoints::cli::run_from_env());
}
