//! Drives the command line in-process and reads back the JSON report.

fn main() {
    let (code, out, _) = qcrel::cli::run_capture(["qcrel", "--format", "json", "grover", "--relation", "{(0,2),(2,2),(1,3),(3,3)}"]);
    let report = qcrel::cli::Report::from_json(&out).expect("valid report");
    println!("exit {code}, schema {}, command {}", report.schema, report.command);
    println!("possible outcomes {}", report.results["possible_outcomes"]);
    for c in &report.checks {
        println!("{} {} {}", if c.informational { "info" } else { "check" }, c.name, c.detail);
    }
}
