fn main() {
    std::process::exit(coxkit::cli::main());
}
