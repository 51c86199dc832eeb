use std::collections::HashMap;

use cenalg::centrify::{central_relations, check_prop_gsbasis, z_presentation, PropVerdict};
use cenalg::coeffs::FieldDescriptor;
use cenalg::commands::{run_command, CommandArgs};
use cenalg::presets::{build_named, default_field, PRESET_NAMES};
use cenalg::text::{bundled_preset, parse_presentation};

#[test]
fn bundled_files_match_builders() {
    for name in PRESET_NAMES {
        let doc = parse_presentation(bundled_preset(name).unwrap()).unwrap();
        let built = build_named(name, &HashMap::new(), Some(&default_field(name))).unwrap();
        assert_eq!(doc.presentation.canonical_relations(), built.canonical_relations(), "{}", name);
        assert_eq!(doc.presentation.central(), built.central(), "{}", name);
    }
}

#[test]
fn solvable_pipeline_from_text() {
    let text = "\
presentation s
field Q
generators x > y > z
relation R_xy: x*y - y*x - y
relation R_xz: x*z - z*x - z
relation R_yz: y*z - z*y
central all
";
    let p = parse_presentation(text).unwrap().presentation;
    let zp = z_presentation(&p, p.central()).unwrap();
    match check_prop_gsbasis(&zp, 16).unwrap().verdict {
        PropVerdict::Witness { remainder, .. } => assert!(!remainder.is_zero()),
        PropVerdict::Flat => panic!("expected a witness"),
    }
    let rels = central_relations(&zp, 6).unwrap().relations;
    assert_eq!(rels.len(), 1);
    assert_eq!(zp.render_central(&rels[0]), "z_yz");
}

#[test]
fn unknown_central_is_reported() {
    let text = "presentation t\nfield Q\ngenerators X\nrelation R_X: X*X\ncentral R_W\n";
    let e = parse_presentation(text).unwrap_err();
    assert!(e.to_string().contains("R_W"));
}

#[test]
fn aw_over_other_fields() {
    let args = CommandArgs {
        preset: Some("aw2".into()),
        field: Some("Q(t)".into()),
        ..Default::default()
    };
    let r = run_command("obstacles", &args).unwrap();
    assert!(r.success);
    assert!(FieldDescriptor::rational_functions("t").is_ok());
}
