fn main() {
    std::process::exit(pmc_verify::cli::run());
}
