fn main() {
    std::process::exit(wirtinger::cli::main());
}
