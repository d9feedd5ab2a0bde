fn main() {
    std::process::exit(iobound::cli::run());
}
