fn main() {
    roothk::cli::main_exit()
}
