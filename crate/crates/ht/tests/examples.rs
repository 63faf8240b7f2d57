//! Every bundled script meets the expectations in its header comments, and
//! every bundled file parses.

use std::fs;
use std::path::PathBuf;

use ht::script::{load_script, write_script, parse_script_with};
use ht::{config, defs, examples_dir, universe};
use ht_core::check_script;

fn files(ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(examples_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}

#[test]
fn scripts_meet_their_expectations() {
    let scripts = files("ht");
    assert_eq!(scripts.len(), 7);
    for path in scripts {
        let f = load_script(&path).unwrap();
        assert!(
            f.expectations.iter().any(|e| e.ok) && f.expectations.iter().any(|e| !e.ok),
            "{} declares no passing or no failing config",
            path.display()
        );
        for e in &f.expectations {
            let mut s = f.script.clone();
            s.config = e.overrides.apply(s.config);
            let r = check_script(&s);
            let name = path.file_name().unwrap().to_string_lossy();
            assert_eq!(r.is_ok(), e.ok, "{name} under {:?}: {:?}", e.overrides.to_flags(), r.rejection);
            if let Some(rej) = &r.rejection {
                if let Some(step) = e.step {
                    assert_eq!(rej.step, step, "{name}");
                }
                if let Some(kind) = &e.kind {
                    assert_eq!(rej.error.kind(), kind, "{name}");
                }
            }
        }
    }
}

#[test]
fn written_scripts_read_back() {
    for path in files("ht") {
        let f = load_script(&path).unwrap();
        let text = write_script(&f.script);
        let back = parse_script_with(&text, &mut |_| Err("inline only".into())).unwrap();
        assert_eq!(back.script, f.script, "{}", path.display());
    }
}

#[test]
fn other_bundled_files_parse() {
    for p in files("defs") {
        defs::load_defs(&p).unwrap();
    }
    let cfgs = files("cfg");
    assert_eq!(cfgs.len(), 2);
    for p in cfgs {
        let c = config::load_config(&p).unwrap();
        assert!(c.prov_axioms && !c.reflection && !c.excluded_middle);
    }
    for p in files("truth") {
        let u = universe::load_universe(&p).unwrap();
        u.validate().unwrap();
    }
}
