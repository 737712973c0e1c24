fn main() {
    std::process::exit(active_consensus::cli::main());
}
