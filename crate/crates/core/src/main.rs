fn main() {
    let code = siegel_lift::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
