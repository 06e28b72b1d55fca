//! Build a run configuration in code, check it, and render the CSV the
//! `geoscatter` binary would write.

use geoscatter::cli::{render_csv, Command, Preset, RunConfig};

fn main() {
    let mut config: RunConfig = Preset::Fig1.config();
    config.command = Some(Command::Sweep);
    config.kinematics.k_steps = 5;
    println!("{}", config.to_json());

    let report = config.check(None, std::path::Path::new("."));
    for d in &report.diagnostics {
        println!("{d}");
    }
    let plan = report.plan.expect("preset is valid");
    print!("{}", render_csv(&plan).expect("closed forms do not fail"));
}
