// File-driven analysis as run by the `tclab` binary: read an input, build
// the report, render it, and feed the fan back in as a raw fan.

use std::fs;

use tclab::cli::{self, Family, Format, RunConfig};

pub fn run_example() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let mut cfg = RunConfig::new(Family::Cluster, format!("{data}/a2.json"));
    cfg.facets = true;
    cfg.rays = true;
    cfg.verify = true;
    cfg.realize = Some(format!("{data}/ell3.json").into());
    let report = cli::run(&cfg).unwrap();
    assert_eq!(report.exit_code(), 0);
    print!("{}", cli::render(&report, Format::Table));

    let realization = report.realization.as_ref().unwrap();
    print!("{}", cli::polytope_file(realization, 2));

    let dir = std::env::temp_dir().join(format!("tclab-example-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let saved = dir.join("a2_report.json");
    fs::write(&saved, cli::to_json(&report)).unwrap();

    let mut raw = RunConfig::new(Family::RawFan, &saved);
    raw.facets = true;
    raw.rays = true;
    let again = cli::run(&raw).unwrap();
    let tc = |r: &cli::Report| serde_json::to_value(&r.type_cone).unwrap();
    assert_eq!(tc(&again), tc(&report));
    assert_eq!(again.extreme_rays, report.extreme_rays);
    println!("raw-fan round trip reproduces the type cone analysis");
    fs::remove_dir_all(&dir).unwrap();
}

#[allow(dead_code)]
fn main() {
    run_example();
}
