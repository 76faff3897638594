fn main() {
    std::process::exit(qfft::run(std::env::args_os()));
}
