fn main() {
    std::process::exit(mavshield_tools::run(std::env::args_os()));
}
