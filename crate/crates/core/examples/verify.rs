//! Runs the whole check suite at GF(2)^2 through the command-line entry
//! point and prints the report.

fn main() {
    let out = singcxn::cli::run(["singcxn", "verify-all", "--p", "2", "--n", "2"]);
    print!("{}", out.stdout);
    println!("exit code {}", out.code);
}
