fn main() {
    std::process::exit(wallforge::cli::main());
}
