fn main() {
    radinfo::cli::run_main();
}
