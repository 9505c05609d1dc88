//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line. Criteria run one at a time so that the
//! runtime bounds are measured without contention.

use std::io::Write;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use e8trig::alcove::{AlcovePoint, RootDatum};
use e8trig::chevalley::{e8, JacobiMode, DIM};
use e8trig::delpezzo::{
    anticanonical_model, config_from_chi, config_from_chi_unchecked, confirm_failure, extract_marked_point,
    general_position, run_pipeline, GeneralPosition, RootFamily,
};
use e8trig::picard::{default_simple_system, dynkin_type, enumerate_roots, root_index, Character, LatticeVector};
use e8trig::records::{from_json, PipelineInput};
use e8trig::scalar::{q, q_frac, Rational};
use e8trig::trigonal::{classify_marked_point, invariant_signature, smoothness_check, FiberType, Signature, Smoothness};
use e8trig::two_torsion::{gamma_rank, pairing2, qform, ExtendedElement, TildeElement, TwoTorsionVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

/// Collects named checks and reports them on one line.
struct Criterion {
    number: u32,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(number: u32) -> Self {
        Self { number, start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(mut self, limit: Duration) {
        let elapsed = self.start.elapsed();
        self.check(elapsed <= limit, format!("runtime {elapsed:.2?} exceeds {limit:?}"));
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut detail = self.notes.clone();
        detail.extend(self.failures.iter().map(|f| format!("failed: {f}")));
        let line = format!("criterion {}: {verdict} ({elapsed:.2?}; {})\n", self.number, detail.join("; "));
        // Written past the test harness capture so the verdict is always visible.
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        assert!(self.failures.is_empty(), "criterion {} failed: {:?}", self.number, self.failures);
    }
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn stored(name: &str) -> Vec<(Character, Rational)> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("stored characters");
    let inputs: Vec<PipelineInput> = from_json(&text).expect("valid records");
    inputs.iter().map(|i| i.parse().expect("valid character")).collect()
}

fn simple_reflection(k: usize) -> usize {
    root_index(&default_simple_system().roots()[k]).expect("simple root")
}

fn signature(chi: &Character, base: &Rational) -> Signature {
    let run = run_pipeline(chi, base).expect("pipeline");
    invariant_signature(&run.marked.curve.ramification_form().expect("form")).expect("signature")
}

#[test]
fn criterion_1_root_system() {
    let _guard = serial();
    let mut c = Criterion::new(1);
    let roots = enumerate_roots();
    c.check(roots.len() == 240, format!("{} roots", roots.len()));
    let even: Vec<LatticeVector> = roots.iter().filter(|r| r.c_l() % 2 == 0).copied().collect();
    let even_type = dynkin_type(&even).map(|t| t.to_string()).unwrap_or_default();
    c.check(even.len() == 112 && even_type == "D8", format!("c_l even: {} roots of type {even_type}", even.len()));
    let zero = roots.iter().filter(|r| r.c_l() == 0).count();
    c.note(format!("c_l even: 112 roots, D8; c_l = 0 alone: {zero} roots"));
    let fixed = default_simple_system().roots()[0];
    let orth: Vec<LatticeVector> = roots.iter().filter(|r| r.inner(&fixed) == 0).copied().collect();
    let orth_type = dynkin_type(&orth).map(|t| t.to_string()).unwrap_or_default();
    c.check(orth.len() == 126 && orth_type == "E7", format!("orthogonal: {} roots of type {orth_type}", orth.len()));
    c.finish(Duration::from_secs(1));
}

#[test]
fn criterion_2_reeder_suite() {
    let _guard = serial();
    let mut c = Criterion::new(2);
    let mut expected: Vec<(String, u64)> = vec![("E8".into(), 1), ("E7".into(), 2), ("E6".into(), 3), ("D4".into(), 4)];
    expected.extend((1..=8).map(|n| (format!("A{n}"), n as u64 + 1)));
    for (t, n) in &expected {
        let order = RootDatum::from_label(t).unwrap().fundamental_group().order();
        c.check(order == *n, format!("|Omega({t})| = {order}, expected {n}"));
    }
    let e7 = RootDatum::from_label("E7").unwrap();
    let stab = e7.stabilizer(&e7.barycentre()).map(|s| s.len()).unwrap_or(0);
    c.check(stab == 2, format!("E7 barycentre stabiliser has order {stab}"));
    let e8d = RootDatum::from_label("E8").unwrap();
    let classes = e8d.kac_classes(2).unwrap();
    for k in &classes {
        let s = e8d.stabilizer(&AlcovePoint::new(k.point.coords.clone())).map(|s| s.len()).unwrap_or(0);
        c.check(s == 1, format!("E8 stabiliser at {} has order {s}", k.point));
    }
    let mut nonidentity: Vec<String> = classes
        .iter()
        .filter(|k| k.point.coords.iter().any(|x| !x.is_zero()))
        .map(|k| k.fixed_type.to_string())
        .collect();
    nonidentity.sort();
    c.check(nonidentity == ["D8", "E7+A1"], format!("nonidentity order-2 classes {nonidentity:?}"));
    c.note(format!("order-2 classes of E8: {nonidentity:?}"));
    c.finish(Duration::from_secs(5));
}

#[test]
fn criterion_3_chevalley_suite() {
    let _guard = serial();
    let mut c = Criterion::new(3);
    let g = e8();
    c.check(DIM == 248 && g.roots().len() == 240, "dimension 248");
    match g.jacobi_check(JacobiMode::Full) {
        Ok(r) => {
            c.check(r.violations == 0, "Jacobi violations");
            c.note(format!("Jacobi on {} triples", r.triples_checked));
        }
        Err(e) => c.check(false, e.to_string()),
    }
    c.check(g.theta_is_automorphism(), "theta is not an automorphism");
    c.check(g.theta_trace() == -8, format!("trace(dtheta on h) = {}", g.theta_trace()));
    let dims = g.theta_eigenspace_dims();
    c.check(dims == (120, 128), format!("eigenspaces {dims:?}"));
    let fixed = g.fixed_subalgebra_type().map(|t| t.to_string()).unwrap_or_default();
    c.check(fixed == "D8", format!("fixed subalgebra {fixed}"));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random_additive = |rng: &mut ChaCha8Rng| {
        Character::additive(std::array::from_fn(|_| q_frac(rng.gen_range(-12..=12), rng.gen_range(1..=5))))
    };
    let mut rss = 0;
    while rss < 20 {
        let chi = random_additive(&mut rng);
        if !chi.is_regular_semisimple() {
            continue;
        }
        rss += 1;
        let d = g.centralizer_dim(&g.cartan_element(&chi).unwrap());
        c.check(d == 8, format!("rss centraliser dimension {d}"));
    }
    let mut singular = 0;
    while singular < 5 {
        let chi = random_additive(&mut rng);
        let root = enumerate_roots()[rng.gen_range(0..240)];
        let n = default_simple_system().coordinates(&root).unwrap();
        let Some(k) = n.iter().position(|x| x.abs() == 1) else { continue };
        let chi = chi.place_on_hyperplane(&root, k).unwrap();
        singular += 1;
        let d = g.centralizer_dim(&g.cartan_element(&chi).unwrap());
        c.check(d > 8, format!("non-rss centraliser dimension {d}"));
    }
    c.note("centralisers: 20 rss of dim 8, 5 non-rss above 8");
    c.finish(Duration::from_secs(300));
}

#[test]
fn criterion_4_two_torsion_suite() {
    let _guard = serial();
    let mut c = Criterion::new(4);
    let all: Vec<TwoTorsionVector> = TwoTorsionVector::all().collect();
    let ones = all.iter().filter(|v| qform(**v) == 1).count();
    c.check((all.len() - ones, ones) == (136, 120), format!("q counts ({}, {ones})", all.len() - ones));
    let polarization = all.iter().all(|&v| all.iter().all(|&w| (qform(v + w) + qform(v) + qform(w)) % 2 == pairing2(v, w)));
    c.check(polarization, "polarization identity");
    let tilde: Vec<TildeElement> = TildeElement::all().collect();
    c.check(tilde.len() == 512, format!("|V~| = {}", tilde.len()));
    let square_law = all.iter().all(|&v| {
        let sign = if qform(v) == 1 { -1 } else { 1 };
        TildeElement::new(1, v).square() == TildeElement::new(sign, TwoTorsionVector::zero())
    });
    c.check(square_law, "square law");
    let kernel = tilde.iter().filter(|e| e.chi_q() == 1).count();
    let extended_kernel = ExtendedElement::all().filter(|e| e.chi_q() == 0).count();
    c.note(format!("|ker chi_q| on V~ = {kernel}; on the order-1024 mu4 extension = {extended_kernel}"));
    c.check(kernel == 256, format!("|ker chi_q| = {kernel}, expected 256"));
    c.check(gamma_rank() == 8, format!("gamma rank {}", gamma_rank()));
    c.finish(Duration::from_secs(1));
}

fn end_to_end(number: u32, file: &str, expected: FiberType, disc_order: usize, index: u8) {
    let _guard = serial();
    let mut c = Criterion::new(number);
    for (i, (chi, base)) in stored(file).iter().enumerate() {
        let start = Instant::now();
        let cfg = config_from_chi(chi, base).unwrap();
        c.check(general_position(&cfg) == GeneralPosition::Pass, format!("#{i} general position"));
        let sextic = match anticanonical_model(&cfg) {
            Ok(s) => s,
            Err(e) => {
                c.check(false, format!("#{i}: {e}"));
                continue;
            }
        };
        c.check(sextic.ladder == [2, 4, 7, 22], format!("#{i} ladder {:?}", sextic.ladder));
        c.check(sextic.relation.len() == 23, format!("#{i} relation length"));
        c.check(!sextic.f0.is_zero(), format!("#{i} f0 = 0"));
        let marked = match extract_marked_point(&cfg, &sextic) {
            Ok(m) => m,
            Err(e) => {
                c.check(false, format!("#{i}: {e}"));
                continue;
            }
        };
        let form = marked.curve.ramification_form().unwrap();
        c.check(form.degree() == 12 && !form.is_zero(), format!("#{i} ramification form degree"));
        let order = form.root_multiplicity(&marked.s0, &marked.t0).0;
        c.check(order == disc_order, format!("#{i} discriminant order {order}"));
        let report = classify_marked_point(&marked.curve, &marked.s0, &marked.t0).unwrap();
        c.check(report.fiber_type == expected, format!("#{i} fiber {:?}", report.fiber_type));
        c.check(report.w0.as_ref() == Some(&marked.w0), format!("#{i} w0"));
        c.check(marked.ram_index == index, format!("#{i} ramification index {}", marked.ram_index));
        let smooth = smoothness_check(&marked.curve);
        c.check(smooth == Smoothness::Smooth, format!("#{i} smoothness {smooth:?}"));
        let t = start.elapsed();
        c.check(t <= Duration::from_secs(120), format!("#{i} took {t:.2?}"));
    }
    c.note(format!("5 characters, index {index}, discriminant order {disc_order}"));
    c.finish(Duration::from_secs(600));
}

#[test]
fn criterion_5_nodal_pipeline() {
    end_to_end(5, "nodal_characters.json", FiberType::Simple, 1, 2);
}

#[test]
fn criterion_6_cuspidal_pipeline() {
    end_to_end(6, "cuspidal_characters.json", FiberType::Total, 2, 3);
}

#[test]
fn criterion_7_equivariance() {
    let _guard = serial();
    let mut c = Criterion::new(7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut comparisons = 0;
    for file in ["nodal_characters.json", "cuspidal_characters.json"] {
        for (i, (chi, base)) in stored(file).iter().enumerate() {
            let reference = signature(chi, base);
            for k in 0..8 {
                let moved = chi.precompose(&[simple_reflection(k)]).unwrap();
                c.check(chi.root_value_multiset() == moved.root_value_multiset(), format!("{file} #{i} s{} multiset", k + 1));
                c.check(signature(&moved, base) == reference, format!("{file} #{i} s{} signature", k + 1));
                comparisons += 1;
            }
            if chi.mode() == e8trig::picard::CharacterMode::Additive {
                for _ in 0..3 {
                    let mut s = 0;
                    while s == 0 {
                        s = rng.gen_range(-9..=9);
                    }
                    let scale = q_frac(s, rng.gen_range(1..=4));
                    let scaled = chi.scaled(&scale).unwrap();
                    c.check(signature(&scaled, &(base * &scale)) == reference, format!("{file} #{i} scaled by {scale}"));
                    comparisons += 1;
                }
            }
        }
    }
    c.note(format!("{comparisons} exact signature comparisons"));
    c.finish(Duration::from_secs(1800));
}

#[test]
fn criterion_8_failure_geometry() {
    let _guard = serial();
    let mut c = Criterion::new(8);
    let e = LatticeVector::e;
    let l = LatticeVector::l();
    let sum = |idx: &[usize]| idx.iter().fold(LatticeVector::zero(), |acc, &i| acc + e(i));
    let all = sum(&[1, 2, 3, 4, 5, 6, 7, 8]);
    // One representative per shape; the doubled point of the singular cubic
    // is chosen so that the root can be reached by solving for one simple
    // root value over Q.
    let shapes: Vec<(RootFamily, Vec<LatticeVector>)> = vec![
        (RootFamily::Coincident, vec![e(1) - e(2)]),
        (RootFamily::Collinear, vec![l - sum(&[1, 2, 3])]),
        (RootFamily::Conic, vec![l * 2 - sum(&[1, 2, 3, 4, 5, 6])]),
        (RootFamily::SingularCubic, (1..=8).rev().map(|j| l * 3 - all - e(j)).collect()),
    ];
    let generic = [
        (Character::multiplicative([2, 3, 5, 7, 11, 13, 17, 19].map(q)).unwrap(), q(1)),
        (Character::additive([2, 3, 5, 7, 11, 13, 17, 19].map(q)), q(0)),
    ];
    let simple = default_simple_system();
    for (family, candidates) in shapes {
        // Solving for one simple root value can put the character on a second
        // hyperplane by accident; use the first placement that lands on this
        // hyperplane alone.
        let placements: Vec<(LatticeVector, usize)> = candidates
            .iter()
            .flat_map(|r| {
                let n = simple.coordinates(r).unwrap();
                (0..8).filter(move |&k| n[k].abs() == 1).map(move |k| (*r, k))
            })
            .collect();
        c.check(!placements.is_empty(), format!("{family:?}: no placement over Q"));
        for (chi, base) in &generic {
            let placed = placements.iter().find_map(|(root, k)| {
                let on = chi.place_on_hyperplane(root, *k).ok()?;
                let vanishing = on.root_hyperplanes().len();
                (vanishing == 2).then_some((*root, on))
            });
            let Some((root, on)) = placed else {
                c.check(false, format!("{family:?} ({:?}): every placement is doubly degenerate", chi.mode()));
                continue;
            };
            let cfg = config_from_chi_unchecked(&on, base).unwrap();
            match general_position(&cfg) {
                GeneralPosition::Pass => c.check(false, format!("{family:?} ({:?}) passed", chi.mode())),
                GeneralPosition::Fail(cert) => {
                    c.check(cert.family == family, format!("{family:?}: certificate {:?}", cert.family));
                    c.check(cert.root == root || cert.root == -root, format!("{family:?}: root {}", cert.root));
                    c.check(confirm_failure(&cfg, &cert), format!("{family:?}: oracle did not confirm"));
                    // The oracle must reject the same indices on a generic configuration.
                    let good = config_from_chi(chi, base).unwrap();
                    c.check(!confirm_failure(&good, &cert), format!("{family:?}: oracle accepts a generic configuration"));
                }
            }
        }
    }
    c.note("4 root shapes x 2 cubic kinds confirmed by determinant/rank oracles");
    c.finish(Duration::from_secs(60));
}

fn cli_binary() -> std::path::PathBuf {
    let exe = std::env::current_exe().expect("test binary path");
    let dir = exe.parent().and_then(|d| d.parent()).expect("target directory");
    let bin = dir.join(format!("e8trig{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "-p", "e8trig-cli"])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .expect("cargo runs");
        assert!(status.success(), "building the command-line tool failed");
    }
    bin
}

#[test]
fn criterion_9_determinism() {
    let _guard = serial();
    let mut c = Criterion::new(9);
    let bin = cli_binary();
    let input = format!("{}/tests/data/cuspidal_characters.json", env!("CARGO_MANIFEST_DIR"));
    let nodal = r#"{"mode":"mult","values":["2","3","5","7","11","13","17","19"],"kind":"nodal","base":"1"}"#;
    let requests: Vec<Vec<&str>> = vec![
        vec!["construct", nodal, "--seed", "1"],
        vec!["construct", &input, "--jobs", "2", "--seed", "1"],
        vec!["equivariance-test", nodal, "--seed", "42", "--length", "2"],
        vec!["lie-verify", "--jacobi", "sampled", "--samples", "5000", "--seed", "9"],
        vec!["kac-classes", "E8", "3", "--format", "text"],
    ];
    for args in &requests {
        let first = Command::new(&bin).args(args).output().expect("cli runs");
        let second = Command::new(&bin).args(args).output().expect("cli runs");
        c.check(first.status.success(), format!("{} exited with {:?}", args[0], first.status.code()));
        c.check(!first.stdout.is_empty() && first.stdout == second.stdout, format!("{} output differs", args[0]));
    }
    c.note(format!("{} requests run twice, byte-identical", requests.len()));
    c.finish(Duration::from_secs(300));
}
