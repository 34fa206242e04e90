fn main() {
    std::process::exit(excessum::cli::main_entry());
}
