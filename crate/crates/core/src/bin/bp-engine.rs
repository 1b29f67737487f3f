fn main() {
    bp_engine::cli::main()
}
