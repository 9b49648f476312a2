//! Runs every job file in `corpus/` the way the command line does.

use std::path::Path;

use toric_bgg::cli::{exit_code, job_from_json, read_json, run_job, Format};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for path in paths {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let result = read_json(&path).and_then(|v| job_from_json(&v)).and_then(|j| run_job(&j));
        match result {
            Ok(out) => {
                println!("== {name} (exit {})", out.exit_code());
                print!("{}", out.render(Format::Text));
            }
            Err(e) => println!("== {name} failed with exit {}: {e}", exit_code(&e)),
        }
    }
}
