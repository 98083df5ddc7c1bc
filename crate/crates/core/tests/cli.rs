use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

fn grpops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

#[test]
fn check_clean_ring() {
    let o = grpops(&["check", &path("valid/z6ring.og")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "all checks passed\n");
}

#[test]
fn check_broken_ring_shows_a_witness() {
    let o = grpops(&["check", "--format", "machine", &path("failing/broken.og")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("status=fail\n"));
    assert!(out
        .lines()
        .any(|l| l.starts_with("witness path=mul.left_distrib w.a=")));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["check", "--format", "machine", &path("failing/z4_ring.ig")];
    let (a, b) = (grpops(&args), grpops(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn max_witnesses_caps_the_listing() {
    let o = grpops(&[
        "check",
        "--format",
        "machine",
        "--max-witnesses",
        "1",
        &path("failing/z4_ring.ig"),
    ]);
    let witnesses = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("witness path=interchange.mul "))
        .count();
    assert_eq!(witnesses, 1);
}

#[test]
fn cover_of_c4_has_two_objects() {
    let o = grpops(&["cover", &path("valid/c4.ig"), "--subobject", "0,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = grpops::io::parse(&stdout(&o)).unwrap();
    match s {
        grpops::io::Structure::InternalGroupoid(g) => {
            assert_eq!(g.groupoid().n_objects(), 2);
            assert_eq!(g.groupoid().n_morphisms(), 8);
        }
        other => panic!("expected an internal groupoid, got {}", other.kind()),
    }
}

#[test]
fn cover_rejects_a_non_subobject() {
    let o = grpops(&["cover", &path("valid/f4.ig"), "--subobject", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("closed.r2"));
}

#[test]
fn classify_f4() {
    let o = grpops(&["classify", "--format", "machine", &path("valid/f4.ig")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("summary subgroups=5 liftable=2\n"));
}

#[test]
fn delta_then_eta_then_check() {
    let dir = std::env::temp_dir().join(format!("grpops-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let xm = dir.join("c4.xm");
    let o = grpops(&["delta", &path("valid/c4.ig")]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&xm, &o.stdout).unwrap();
    let o = grpops(&["check", xm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = grpops(&["eta", xm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("{\n  \"kind\": \"internal_groupoid\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn roundtrip_commands() {
    for f in ["valid/z3_z2_inversion.xm", "valid/pair_z2.ig"] {
        let o = grpops(&["roundtrip", &path(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn semidirect_command() {
    let dir = std::env::temp_dir().join(format!("grpops-sd-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for n in ["2", "3"] {
        let o = grpops(&["generate", "cyclic-group", n]);
        std::fs::write(dir.join(format!("z{n}.og")), &o.stdout).unwrap();
    }
    let (b, a) = (dir.join("z2.og"), dir.join("z3.og"));
    let (b, a) = (b.to_str().unwrap(), a.to_str().unwrap());
    let o = grpops(&["semidirect", b, a, &path("valid/inversion.act")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"order\": 6"));
    let o = grpops(&["semidirect", b, a, &path("failing/shift.act")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    // groups swapped: structural mismatch
    let o = grpops(&["semidirect", a, b, &path("valid/inversion.act")]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extra_identities_apply_to_every_group() {
    let dir = std::env::temp_dir().join(format!("grpops-id-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ids = dir.join("ids.txt");
    std::fs::write(&ids, "# both groups abelian\nforall a b. (+ a b) = (+ b a)\n").unwrap();
    let ids = ids.to_str().unwrap();
    let o = grpops(&["check", "--identities", ids, &path("valid/z3_z2_inversion.xm")]);
    assert_eq!(o.status.code(), Some(0));
    let o = grpops(&["check", "--identities", ids, &path("valid/s3.og")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("identities.0/identity"));
    std::fs::write(dir.join("bad.txt"), "forall a. (+ a\n").unwrap();
    let o = grpops(&[
        "check",
        "--identities",
        dir.join("bad.txt").to_str().unwrap(),
        &path("valid/s3.og"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(grpops(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(grpops(&["check"]).status.code(), Some(2));
    assert_eq!(grpops(&["check", "/no/such/file.og"]).status.code(), Some(2));
    assert_eq!(
        grpops(&["delta", &path("valid/z6ring.og")]).status.code(),
        Some(2)
    );
    assert_eq!(grpops(&["--help"]).status.code(), Some(0));
}

#[test]
fn subobjects_of_z6() {
    let o = grpops(&["subobjects", "--format", "machine", &path("valid/z6ring.og")]);
    assert_eq!(
        stdout(&o),
        "subobject members=0 order=1\n\
         subobject members=0,3 order=2\n\
         subobject members=0,2,4 order=3\n\
         subobject members=0,1,2,3,4,5 order=6\n\
         summary subobjects=4\n"
    );
}

#[test]
fn generate_round_trips_through_check() {
    let o = grpops(&["generate", "module", "3", "3", "--one-object"]);
    assert_eq!(o.status.code(), Some(0));
    let s = grpops::io::parse(&stdout(&o)).unwrap();
    assert_eq!(s.kind(), "internal_groupoid");
    assert_eq!(grpops(&["generate", "module", "3"]).status.code(), Some(2));
}
