fn main() {
    std::process::exit(mcgstab::run(std::env::args()));
}
