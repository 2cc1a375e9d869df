use atomcert_core::atoms::{self, VerdictKind};
use atomcert_core::certificate::{run, RunOptions, Stage};
use atomcert_core::instance::InstanceSpec;

#[test]
fn verra_certifies() {
    let r = run(&InstanceSpec::verra(), &RunOptions::default()).unwrap();
    let failed: Vec<_> = r.failed_checks().map(|c| c.name.clone()).collect();
    assert!(failed.is_empty(), "{:?}", failed);
    assert_eq!(r.verdict(), Some(VerdictKind::IrrationalCertified));
    assert_eq!(r.exit_code(), 0);
    let s = r.to_json_string();
    assert_eq!(
        s,
        run(&InstanceSpec::verra(), &RunOptions::default())
            .unwrap()
            .to_json_string()
    );
}

#[test]
fn partial_run_marks_later_stages() {
    let opts = RunOptions {
        order: None,
        through: Stage::Solve,
    };
    let r = run(&InstanceSpec::verra(), &opts).unwrap();
    let v = r.to_json();
    assert_eq!(v["stages"]["spectrum"]["status"], "not run");
    assert_eq!(v["stages"]["atoms"]["status"], "not run");
    assert_eq!(v["stages"]["solve"]["status"], "ok");
    assert_eq!(v["verdict"], "not run");
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn zero_atoms_from_spectrum() {
    let inst = InstanceSpec::verra();
    let r = run(&inst, &RunOptions::default()).unwrap();
    let spec = &r.spectrum.done().unwrap().report;
    let cases = atoms::zero_atom_cases(spec, &inst).unwrap();
    assert_eq!(cases.len(), 2);
    assert_eq!(
        cases[0].plus.to_string(),
        "E_0^+: (ρ = 2, P = t^2 + 21 + t^-2)"
    );
    assert_eq!(cases[0].minus.to_string(), "E_0^-: (ρ = 1, P = 1)");
    assert_eq!(
        cases[1].minus.to_string(),
        "E_0^-: (ρ = 1, P = t^2 + 20 + t^-2)"
    );
}
