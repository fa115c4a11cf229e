fn main() {
    // CLI wiring lands after the library modules.
    eprintln!("not yet implemented");
    std::process::exit(2);
}
