fn main() {
    if let Err(e) = scaled_mtp::cli::run(std::env::args_os()) {
        eprintln!("{}", e.message.trim_end());
        std::process::exit(e.code);
    }
}
