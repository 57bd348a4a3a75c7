fn main() {
    let out = valkey::cli::run(std::env::args().collect());
    println!("{}", out.stdout);
    std::process::exit(out.status);
}
