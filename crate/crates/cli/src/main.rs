use std::io::Write;

fn main() {
    let o = qn_cli::run(std::env::args().skip(1), &mut std::io::stdin().lock());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(o.status);
}
