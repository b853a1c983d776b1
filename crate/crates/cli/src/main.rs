fn main() {
    std::process::exit(finsynth_cli::run(std::env::args_os()));
}
