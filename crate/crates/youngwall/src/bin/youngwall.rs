//! `youngwall` command-line tool; see [`youngwall::cli`].

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = youngwall::cli::run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
