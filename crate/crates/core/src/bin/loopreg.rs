fn main() {
    std::process::exit(loopreg::cli::main_entry());
}
