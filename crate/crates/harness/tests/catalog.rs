use scf_harness::report::{render_table, run_all, RunReport};
use scf_harness::runner::RunConfig;

/// Every property, at its pinned premise floor.
#[test]
fn whole_catalog_passes() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = RunConfig { jobs, ..RunConfig::new(5, 300) };
    let report = run_all(&cfg, "").unwrap();
    assert!(report.all_pass(), "{}", render_table(&report));
    assert_eq!(RunReport::from_json(&report.to_json()).unwrap(), report);
}
