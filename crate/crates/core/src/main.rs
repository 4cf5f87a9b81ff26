fn main() {
    std::process::exit(dicaut::cli::main());
}
