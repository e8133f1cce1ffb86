use serde_json::Value;
use tropsing::io::{self, Envelope, JobError, JobSpec};
use tropsing::rational::int;
use tropsing::{FlagClass, SingularityKind, SvgOptions};

const INTRO: &str = r#"{
  "schema": "tropsing/1",
  "polynomial": [
    {"point": [1, 2], "coefficient": "1"},
    {"point": [2, 0], "coefficient": "-t"},
    {"point": [1, 1], "coefficient": "-2 - t^3"},
    {"point": [1, 0], "coefficient": "1 + 2*t + t^3"},
    {"point": [0, 1], "coefficient": "t^3"},
    {"point": [0, 0], "coefficient": "-t - t^3"}
  ]
}"#;

fn job(text: &str) -> JobSpec {
    JobSpec::from_json(text).unwrap()
}

fn to_value<T: serde::Serialize>(body: T) -> Value {
    serde_json::to_value(Envelope::new(body)).unwrap()
}

#[test]
fn intro_polynomial_heights_come_from_valuations() {
    let j = job(INTRO);
    let cfg = j.config().unwrap();
    let u = j.heights(&cfg).unwrap();
    assert_eq!(
        serde_json::to_value(&u).unwrap(),
        serde_json::json!(["-1", "0", "-1", "-3", "0", "0"])
    );
}

#[test]
fn intro_classifies_as_weight_two_edge() {
    let report = io::classify(&job(INTRO)).unwrap();
    assert_eq!(report.kind, SingularityKind::TypeB1);
    let v = to_value(&report);
    assert_eq!(v["schema"], "tropsing/1");
    assert_eq!(v["kind"], "TypeB1");
    assert_eq!(v["l1"], "1");
    assert_eq!(v["l2"], "1");
}

#[test]
fn intro_curve_document() {
    let out = io::curve(&job(INTRO)).unwrap();
    assert!(out.balanced);
    assert_eq!(out.genus, 0);
    let v = to_value(&out);
    let edges = v["curve"]["edges"].as_array().unwrap();
    assert_eq!(edges.iter().filter(|e| e["weight"] == 2).count(), 1);
}

#[test]
fn intro_discriminant_decomposes() {
    let out = io::discriminant(&job(INTRO)).unwrap();
    assert_eq!(out.codimension, 1);
    assert_eq!(out.in_discriminant, Some(true));
    let d = out.decomposition.expect("decomposition");
    let cfg = job(INTRO).config().unwrap();
    let u = job(INTRO).heights(&cfg).unwrap();
    assert_eq!(d.reconstruct(&cfg), u);
}

#[test]
fn unit_triangle_is_never_discriminantal() {
    let j = job(r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["0", "2", "1/3"]}"#);
    let out = io::discriminant(&j).unwrap();
    assert_eq!(out.codimension, 0);
    assert_eq!(out.in_discriminant, Some(false));
}

#[test]
fn plot_marks_weight_and_singular_point() {
    let opts = SvgOptions::default();
    let (_, svg) = io::plot(&job(INTRO), &opts).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"<text class="weight""#));
    assert!(svg.contains(">2</text>"));
    assert_eq!(svg.matches(r#"class="singular""#).count(), 1);
    assert_eq!(svg.matches(r#"class="cell""#).count(), 3);
    assert_eq!(svg.matches(r#"class="marked""#).count(), 6);
    let (_, again) = io::plot(&job(INTRO), &opts).unwrap();
    assert_eq!(svg, again);
}

#[test]
fn plot_skips_singular_marker_off_the_curve() {
    let j = job(r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["0", "5", "0"]}"#);
    let (_, svg) = io::plot(&j, &SvgOptions::default()).unwrap();
    assert!(!svg.contains(r#"class="singular""#));
}

#[test]
fn square_flags_and_lift() {
    let text = r#"{"points": [[0,0],[1,0],[0,1],[1,1],[2,1],[0,2],[1,2],[2,2]]}"#;
    let out = io::flags(&job(text)).unwrap();
    assert_eq!(out.gale_dual.rows.len(), 5);
    assert!(out.loops.is_empty());
    assert!(!out.flags.is_empty());
    assert!(out.flags.iter().all(|f| f.error.is_none()));
    let four_point = out
        .flags
        .iter()
        .find(|f| matches!(f.class, Some(FlagClass::CaseA { .. })))
        .expect("a four-point flag");

    let mut lift_job = job(text);
    lift_job.flag = Some(four_point.flats.clone());
    lift_job.options.seed = Some(5);
    let lifted = io::lift(&lift_job).unwrap();
    assert!(lifted.singular_at_one_one);
    assert!(lifted.sample.in_weight_class);
    // the sampled polynomial is a valid job input and reproduces its heights
    let again = JobSpec {
        polynomial: Some(lifted.sample.f.clone()),
        ..job(text)
    };
    let cfg = again.config().unwrap();
    assert_eq!(again.heights(&cfg).unwrap(), lifted.sample.neg_val);
    // same seed, same polynomial
    assert_eq!(io::lift(&lift_job).unwrap().sample.f, lifted.sample.f);
}

#[test]
fn lift_without_flag_or_heights_is_missing() {
    let err = io::lift(&job(r#"{"points": [[0,0],[1,0],[0,1],[1,1]]}"#)).unwrap_err();
    assert_eq!(err, JobError::Missing("flag"));
    assert_eq!(err.kind(), "missing");
}

#[test]
fn domain_errors_have_kinds() {
    let err =
        io::subdivide(&job(r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["0"]}"#)).unwrap_err();
    assert_eq!(err.kind(), "subdivision");
    let err = io::subdivide(&job(
        r#"{"points": [[0,0],[2,0],[0,2]], "heights": ["0","0","0"]}"#,
    ))
    .unwrap_err();
    assert_eq!(err.kind(), "config");
    let relaxed =
        job(r#"{"points": [[0,0],[2,0],[0,2]], "heights": ["0","0","0"], "relaxed": true}"#);
    assert_eq!(io::subdivide(&relaxed).unwrap().cells.len(), 1);
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(JobSpec::from_json(r#"{"points": [], "hieghts": []}"#).is_err());
}

#[test]
fn classify_at_a_chosen_point() {
    let mut j = job(INTRO);
    j.at = Some(tropsing::Point2::new(int(5), int(5)));
    let report = io::classify(&j).unwrap();
    assert_eq!(report.kind, SingularityKind::NotSingularAtOrigin);
}

#[test]
fn subdivide_reports_support_planes() {
    let j = job(INTRO);
    let cfg = j.config().unwrap();
    let u = j.heights(&cfg).unwrap();
    let out = io::subdivide(&j).unwrap();
    for (cell, plane) in out.cells.iter().zip(&out.planes) {
        for &k in &cell.marked {
            assert_eq!(plane.eval(cfg.point(k)), u[k]);
        }
        // unmarked points lie strictly below the plane
        for k in (0..cfg.len()).filter(|k| !cell.marked.contains(k)) {
            assert!(plane.eval(cfg.point(k)) > u[k]);
        }
    }
}
