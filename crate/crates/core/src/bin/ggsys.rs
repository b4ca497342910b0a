fn main() {
    std::process::exit(ggsys::cli::main());
}
