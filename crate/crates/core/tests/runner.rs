use weylcheck::catalog::find;
use weylcheck::config::{ConfigError, Geometry};
use weylcheck::report::Verdict;
use weylcheck::runner::{identity, run, RunError, RunOptions, IDENTITIES, TASKS};

fn catalog(name: &str) -> Geometry {
    find(name).unwrap().geometry().unwrap()
}

fn tasks(names: &[&str]) -> RunOptions {
    RunOptions { tasks: names.iter().map(|s| s.to_string()).collect(), ..RunOptions::default() }
}

#[test]
fn unknown_task_lists_the_registry() {
    let err = run(&catalog("euclidean_3"), &tasks(&["nope"])).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let msg = err.to_string();
    for (name, _) in TASKS {
        assert!(msg.contains(name));
    }
}

#[test]
fn inapplicable_task_is_a_geometry_error() {
    let err = run(&catalog("euclidean_3"), &tasks(&["gauduchon-tod"])).unwrap_err();
    assert!(matches!(err, RunError::Geometry { .. }));
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn degenerate_metric_fails_sampling() {
    let text = "[chart]\ncoords = [\"x\", \"y\", \"z\"]\nbox = [[-1, 1], [-1, 1], [-1, 1]]\n\n[metric]\ncomponents = [\"0\", \"0\", \"0\", \"1\", \"0\", \"1\"]\n\n[run]\ntasks = [\"eq13\"]\n";
    let err = run(&Geometry::parse(text).unwrap(), &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn malformed_files_are_config_errors() {
    assert!(matches!(Geometry::parse("[chart"), Err(ConfigError::Toml(_))));
    let bad_expr = find("euclidean_3").unwrap().config.replace("\"x1\", \"x2\"]\n\n[weyl", "\"x1 +\", \"x2\"]\n\n[weyl");
    assert!(Geometry::parse(&bad_expr).is_err());
}

#[test]
fn failed_task_gives_exit_one() {
    let doc = run(&catalog("radial"), &tasks(&["harmonic", "chain"])).unwrap();
    assert_eq!(doc.reports[0].verdict, Verdict::Fail);
    assert_eq!(doc.exit_code(), 1);
    let doc = run(&catalog("radial"), &tasks(&["chain"])).unwrap();
    assert_eq!(doc.exit_code(), 0);
}

#[test]
fn orientation_override_reverses_twistoriality() {
    let g = catalog("gibbons_hawking");
    let mut o = tasks(&["twistorial"]);
    assert!(run(&g, &o).unwrap().passed);
    o.orientation = Some(-1);
    let doc = run(&g, &o).unwrap();
    assert!(!doc.passed);
    assert_eq!(doc.options.orientation, -1);
}

#[test]
fn identities_are_report_only() {
    let g = catalog("gibbons_hawking");
    for (name, _) in IDENTITIES {
        if *name == "lemma34" {
            continue;
        }
        let doc = identity(name, &g, &RunOptions::default()).unwrap();
        assert_eq!(doc.reports[0].verdict, Verdict::ReportOnly);
        assert_eq!(&doc.reports[0].task, name);
        assert!(doc.reports[0].max_residual < 1e-8, "{name}");
    }
    let doc = identity("lemma34", &catalog("holomorphic_square"), &RunOptions::default()).unwrap();
    assert!(doc.reports[0].max_residual < 1e-8);
    assert_eq!(identity("eq99", &g, &RunOptions::default()).unwrap_err().exit_code(), 2);
}

#[test]
fn gauduchon_tod_function_has_weight_minus_one() {
    let g = catalog("constant_curvature_3");
    let h = g.gauge_transformed(&g.domain.chart().parse("1 + 0.3*x1").unwrap());
    let doc = run(&h, &tasks(&["gauduchon-tod", "gt-flat"])).unwrap();
    assert!(doc.passed);
    let mut wrong = h.clone();
    wrong.gt_k = g.gt_k.clone();
    assert!(!run(&wrong, &tasks(&["gauduchon-tod"])).unwrap().passed);
}

#[test]
fn json_report_has_schema_and_config_echo() {
    let doc = run(&catalog("hopf_type"), &tasks(&["morphism"])).unwrap();
    let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["reports"][0]["verdict"], "pass");
    assert_eq!(v["config"]["name"], "hopf_type");
    assert_eq!(v["options"]["points"], 64);
    assert!(v.get("timestamp").is_none());
}
