fn main() {
    std::process::exit(noisebound::cli::main_entry());
}
