use forge_core::replay::{replay, replay_many, Section};
use forge_core::Error;

#[test]
fn reports_are_deterministic() {
    for s in [Section::LtsKp, Section::TwoDim, Section::Jordan] {
        let a = replay(s).unwrap();
        let b = replay(s).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let sections = Section::all();
    let seq = replay_many(&sections, false).unwrap();
    let par = replay_many(&sections, true).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn every_section_but_the_envelope_passes() {
    for r in replay_many(&Section::all(), false).unwrap() {
        if r.section == Section::Envelope {
            continue;
        }
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn envelope_report_isolates_the_leibniz_failures() {
    let r = replay(Section::Envelope).unwrap();
    for c in &r.claims {
        assert_eq!(c.pass, !c.name.contains("Leibniz identity"), "{}", c.name);
    }
}

#[test]
fn unknown_section() {
    assert!(matches!(Section::parse("sec9"), Err(Error::UnknownSection(_))));
    assert_eq!(Section::parse("ex2.4").unwrap(), Section::Dialgebra);
    assert_eq!(Section::parse("two-dim").unwrap(), Section::TwoDim);
}
