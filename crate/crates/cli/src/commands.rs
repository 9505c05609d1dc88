use std::fmt::Write as _;

use e8trig::alcove::RootDatum;
use e8trig::chevalley::{e8, JacobiMode, DIM, RANK};
use e8trig::delpezzo::run_pipeline;
use e8trig::error::Error;
use e8trig::picard::{default_simple_system, dynkin_type, enumerate_roots, root_index, Character, LatticeVector};
use e8trig::records::{from_json, CharacterRecord, CurveRecord, PipelineInput, PipelineRecord, SignatureRecord};
use e8trig::scalar::{format_rational, parse_rational, Rational};
use e8trig::trigonal::{classify_marked_point, invariant_signature, invariants, smoothness_check, Signature, Smoothness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Cli, Command, JacobiArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::NotInLattice
            | Error::BadRootIndex(_)
            | Error::UnrecognizedDiagram(_)
            | Error::UnsupportedType(_)
            | Error::OutsideAlcove
            | Error::NotRegularSemisimple(_)
            | Error::ModeMismatch
            | Error::GeneralPosition(_)
            | Error::TransvectantIndex { .. } => EXIT_VALIDATION,
            Error::Degenerate(_)
            | Error::NonGenericRingBasis(_)
            | Error::HyperellipticDegeneration
            | Error::CaseMismatch(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INTERNAL,
        };
        CliError { code, message: e.to_string() }
    }
}

fn validation(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_VALIDATION, message: message.into() }
}

pub struct Report {
    pub json: Value,
    pub text: String,
}

type Outcome = Result<(Report, u8), CliError>;

fn ok(json: Value, text: String) -> Outcome {
    Ok((Report { json, text }, EXIT_OK))
}

fn read_input(input: &str) -> Result<String, CliError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| validation(e.to_string()));
    }
    std::fs::read_to_string(input).map_err(|e| validation(format!("{input}: {e}")))
}

fn parse_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',').map(|x| parse_rational(x).map_err(CliError::from)).collect()
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Roots { list } => roots(*list),
        Command::RssCheck { input } => rss_check(input),
        Command::FundamentalGroup { r#type } => fundamental_group(r#type),
        Command::AlcoveNormalize { r#type, point } => alcove_normalize(r#type, point),
        Command::KacClasses { r#type, m } => kac_classes(r#type, *m),
        Command::LieVerify { jacobi, samples } => lie_verify(*jacobi, *samples, cli.seed),
        Command::Construct { input } => construct(input, cli.jobs),
        Command::Classify { input, fiber } => classify(input, fiber.as_deref()),
        Command::CanonicalModel { input } => canonical_model(input),
        Command::Signature { input } => signature(input),
        Command::EquivarianceTest { input, word, length } => {
            equivariance_test(input, word.as_deref(), *length, cli.seed)
        }
    }
}

fn roots(list: bool) -> Outcome {
    let roots = enumerate_roots();
    let mut by_cl = std::collections::BTreeMap::new();
    for r in roots {
        *by_cl.entry(r.c_l()).or_insert(0usize) += 1;
    }
    let even: Vec<LatticeVector> = roots.iter().filter(|r| r.c_l() % 2 == 0).copied().collect();
    let fixed = default_simple_system().roots()[0];
    let orth: Vec<LatticeVector> = roots.iter().filter(|r| r.inner(&fixed) == 0).copied().collect();
    let even_type = dynkin_type(&even)?.to_string();
    let orth_type = dynkin_type(&orth)?.to_string();
    let mut json = json!({
        "count": roots.len(),
        "type": dynkin_type(roots)?.to_string(),
        "by_c_l": by_cl.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "c_l_even": {"count": even.len(), "type": even_type},
        "orthogonal_to": {"root": fixed.to_string(), "count": orth.len(), "type": orth_type},
    });
    let mut text = format!("roots: {} ({})\n", roots.len(), json["type"].as_str().unwrap_or_default());
    for (k, v) in &by_cl {
        let _ = writeln!(text, "  c_l = {k:>2}: {v}");
    }
    let _ = writeln!(text, "c_l even: {} roots, type {even_type}", even.len());
    let _ = writeln!(text, "orthogonal to {fixed}: {} roots, type {orth_type}", orth.len());
    if list {
        json["roots"] = json!(roots.iter().map(|r| r.coords.to_vec()).collect::<Vec<_>>());
        for r in roots {
            let _ = writeln!(text, "{r}");
        }
    }
    ok(json, text)
}

fn rss_check(input: &str) -> Outcome {
    let rec: CharacterRecord = from_json(&read_input(input)?)?;
    let chi = rec.to_character()?;
    let hyperplanes = chi.root_hyperplanes();
    let rss = hyperplanes.is_empty();
    let disc = format_rational(&chi.discriminant());
    let json = json!({
        "regular_semisimple": rss,
        "discriminant": disc,
        "hyperplanes": hyperplanes.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    let mut text = format!("regular semisimple: {rss}\ndiscriminant: {disc}\n");
    for h in &hyperplanes {
        let _ = writeln!(text, "on hyperplane of {h}");
    }
    let code = if rss { EXIT_OK } else { EXIT_VALIDATION };
    Ok((Report { json, text }, code))
}

fn fundamental_group(label: &str) -> Outcome {
    let datum = RootDatum::from_label(label)?;
    let group = datum.fundamental_group();
    let json = json!({"type": datum.label(), "invariants": group.invariants, "order": group.order()});
    let text = format!("{}: Omega = {} (order {})\n", datum.label(), group, group.order());
    ok(json, text)
}

fn alcove_normalize(label: &str, point: &str) -> Outcome {
    let datum = RootDatum::from_label(label)?;
    let x = parse_list(point)?;
    if x.len() != datum.rank() {
        return Err(validation(format!("{} needs {} coordinates, got {}", datum.label(), datum.rank(), x.len())));
    }
    let (p, word) = datum.normalize_to_alcove(&x);
    let stabilizer = datum.stabilizer(&p)?.len();
    let json = json!({
        "type": datum.label(),
        "input": x.iter().map(format_rational).collect::<Vec<_>>(),
        "point": p.coords.iter().map(format_rational).collect::<Vec<_>>(),
        "word": word,
        "stabilizer_order": stabilizer,
    });
    let text = format!("{} -> {p}\nword: {word:?}\nstabilizer order: {stabilizer}\n", point);
    ok(json, text)
}

fn kac_classes(label: &str, m: u64) -> Outcome {
    let datum = RootDatum::from_label(label)?;
    let classes = datum.kac_classes(m)?;
    let mut rows = Vec::new();
    let mut text = format!("{} classes of order dividing {m}: {}\n", datum.label(), classes.len());
    let _ = writeln!(text, "{:<28} {:<36} {:<14} component group", "s-vector", "point", "fixed type");
    for c in &classes {
        let comp = datum.component_group_of_element(&c.point)?.len();
        let labels = format!("{:?}", c.labels);
        let _ = writeln!(text, "{labels:<28} {:<36} {:<14} {comp}", c.point.to_string(), c.fixed_type.to_string());
        rows.push(json!({
            "labels": c.labels,
            "point": c.point.coords.iter().map(format_rational).collect::<Vec<_>>(),
            "fixed_type": c.fixed_type.to_string(),
            "component_group_order": comp,
        }));
    }
    ok(json!({"type": datum.label(), "m": m, "classes": rows}), text)
}

fn lie_verify(jacobi: JacobiArg, samples: usize, seed: u64) -> Outcome {
    let g = e8();
    let mode = match jacobi {
        JacobiArg::Full => JacobiMode::Full,
        JacobiArg::Sampled => JacobiMode::Sampled { count: samples, seed },
    };
    let (jacobi_json, jacobi_text, code) = match g.jacobi_check(mode) {
        Ok(r) => (
            json!({"passed": true, "triples_checked": r.triples_checked, "violations": r.violations}),
            format!("passed ({} triples)", r.triples_checked),
            EXIT_OK,
        ),
        Err(Error::JacobiViolation(a, b, c)) => (
            json!({"passed": false, "first_violation": [a, b, c]}),
            format!("FAILED at ({a}, {b}, {c})"),
            EXIT_INTERNAL,
        ),
        Err(e) => return Err(e.into()),
    };
    let (plus, minus) = g.theta_eigenspace_dims();
    let fixed = g.fixed_subalgebra_type()?.to_string();
    let auto = g.theta_is_automorphism();
    let json = json!({
        "dimension": DIM,
        "rank": RANK,
        "theta_trace_on_cartan": g.theta_trace(),
        "theta_eigenspaces": {"plus": plus, "minus": minus},
        "theta_is_automorphism": auto,
        "fixed_subalgebra_type": fixed,
        "jacobi": jacobi_json,
    });
    let text = format!(
        "dimension: {DIM}\nrank: {RANK}\ntrace of theta on h: {}\neigenspaces (+1, -1): ({plus}, {minus})\n\
         theta automorphism: {auto}\nfixed subalgebra: {fixed}\njacobi: {jacobi_text}\n",
        g.theta_trace()
    );
    let code = if auto { code } else { EXIT_INTERNAL };
    Ok((Report { json, text }, code))
}

fn construct_one(input: &PipelineInput) -> Result<PipelineRecord, CliError> {
    let (chi, base) = input.parse()?;
    let run = run_pipeline(&chi, &base)?;
    Ok(PipelineRecord::from_run(&run))
}

fn curve_text(rec: &PipelineRecord) -> String {
    let c = &rec.curve;
    format!(
        "f0 = {}\nf2 = [{}]\nf4 = [{}]\nf6 = [{}]\nmarked fiber = ({} : {})\nw0 = {}\nramification index = {}\n",
        c.f0,
        c.f2.join(", "),
        c.f4.join(", "),
        c.f6.join(", "),
        c.marked_fiber[0],
        c.marked_fiber[1],
        c.w0,
        c.ram_index
    )
}

fn construct(input: &str, jobs: usize) -> Outcome {
    let text = read_input(input)?;
    let value: Value = from_json(&text)?;
    if !value.is_array() {
        let rec = construct_one(&from_json(&text)?)?;
        let json = serde_json::to_value(&rec).map_err(|e| CliError { code: EXIT_INTERNAL, message: e.to_string() })?;
        let text = curve_text(&rec);
        return ok(json, text);
    }
    let inputs: Vec<PipelineInput> = from_json(&text)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError { code: EXIT_INTERNAL, message: e.to_string() })?;
    let results: Vec<Result<PipelineRecord, CliError>> = pool.install(|| inputs.par_iter().map(construct_one).collect());
    // Per-item errors are reported in place; the exit code is the worst one.
    let mut code = EXIT_OK;
    let mut items = Vec::new();
    let mut out = String::new();
    for (i, r) in results.into_iter().enumerate() {
        let _ = writeln!(out, "# item {i}");
        match r {
            Ok(rec) => {
                out.push_str(&curve_text(&rec));
                items.push(serde_json::to_value(&rec).unwrap_or(Value::Null));
            }
            Err(e) => {
                let _ = writeln!(out, "error: {}", e.message);
                code = match (code, e.code) {
                    (EXIT_INTERNAL, _) | (_, EXIT_INTERNAL) => EXIT_INTERNAL,
                    (a, b) => a.max(b),
                };
                items.push(json!({"error": e.message, "exit_code": e.code}));
            }
        }
    }
    Ok((Report { json: Value::Array(items), text: out }, code))
}

fn classify(input: &str, fiber: Option<&str>) -> Outcome {
    let rec: CurveRecord = from_json(&read_input(input)?)?;
    let curve = rec.curve()?;
    let (s0, t0) = match fiber {
        Some(f) => match parse_list(f)?.as_slice() {
            [s, t] => (s.clone(), t.clone()),
            _ => return Err(validation("--fiber expects s0,t0")),
        },
        None => rec.marked_fiber()?,
    };
    let report = classify_marked_point(&curve, &s0, &t0)?;
    let disc = curve.ramification_form()?;
    let order = disc.root_multiplicity(&s0, &t0).0;
    let smooth = smoothness_check(&curve);
    let smooth_str = match &smooth {
        Smoothness::Smooth => "smooth".to_string(),
        Smoothness::Singular { s0, t0 } => format!("singular over ({} : {})", format_rational(s0), format_rational(t0)),
        Smoothness::Inconclusive(why) => format!("inconclusive: {why}"),
    };
    let fiber_type = format!("{:?}", report.fiber_type).to_lowercase();
    let w0 = report.w0.as_ref().map(format_rational);
    let json = json!({
        "fiber": [format_rational(&s0), format_rational(&t0)],
        "fiber_type": fiber_type,
        "w0": w0,
        "multiplicity": report.multiplicity,
        "discriminant_order": order,
        "smoothness": smooth_str,
    });
    let text = format!(
        "fiber ({} : {}): {fiber_type}, multiplicity {}, w0 = {}\ndiscriminant order: {order}\nsmoothness: {smooth_str}\n",
        format_rational(&s0),
        format_rational(&t0),
        report.multiplicity,
        w0.as_deref().unwrap_or("-"),
    );
    let code = match smooth {
        Smoothness::Smooth => EXIT_OK,
        Smoothness::Singular { .. } => EXIT_VALIDATION,
        Smoothness::Inconclusive(_) => EXIT_INCONCLUSIVE,
    };
    Ok((Report { json, text }, code))
}

fn canonical_model(input: &str) -> Outcome {
    let rec: CurveRecord = from_json(&read_input(input)?)?;
    let (quadric, cubic) = rec.curve()?.canonical_model_p3();
    let json = json!({
        "variables": ["X0", "X1", "X2", "X3"],
        "substitution": "(X0, X1, X2, X3) = (s^2, s t, t^2, w)",
        "quadric": quadric.to_string(),
        "cubic": cubic.to_string(),
    });
    let text = format!("quadric: {quadric}\ncubic: {cubic}\n");
    ok(json, text)
}

fn signature_of(rec: &CurveRecord) -> Result<SignatureRecord, CliError> {
    let form = rec.curve()?.ramification_form()?;
    let values = invariants(&form)?;
    let sig = invariant_signature(&form)?;
    Ok(SignatureRecord::new(&values, &sig))
}

fn signature_text(rec: &SignatureRecord) -> String {
    let mut text = String::new();
    for (n, v) in rec.invariants.iter().zip(&rec.values) {
        let _ = writeln!(text, "{n:<24} {v}");
    }
    let _ = writeln!(text, "signature: {}", serde_json::to_string(&rec.signature).unwrap_or_default());
    text
}

fn signature(input: &str) -> Outcome {
    let rec: CurveRecord = from_json(&read_input(input)?)?;
    let sig = signature_of(&rec)?;
    let text = signature_text(&sig);
    let json = serde_json::to_value(&sig).map_err(|e| CliError { code: EXIT_INTERNAL, message: e.to_string() })?;
    ok(json, text)
}

fn equivariance_test(input: &str, word: Option<&str>, length: usize, seed: u64) -> Outcome {
    let inp: PipelineInput = from_json(&read_input(input)?)?;
    let (chi, base) = inp.parse()?;
    let letters: Vec<usize> = match word {
        Some(w) => w
            .split(',')
            .map(|x| x.trim().parse::<usize>().ok().filter(|k| (1..=8).contains(k)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| validation(format!("bad Weyl word {w:?}: expected letters 1..8")))?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..length).map(|_| rng.gen_range(1..=8)).collect()
        }
    };
    let simple = default_simple_system();
    let root_word: Vec<usize> =
        letters.iter().map(|&k| root_index(&simple.roots()[k - 1]).expect("simple roots are roots")).collect();
    let moved: Character = chi.precompose(&root_word)?;
    let multiset_equal = chi.root_value_multiset() == moved.root_value_multiset();
    let sig = |c: &Character| -> Result<(SignatureRecord, Signature), CliError> {
        let run = run_pipeline(c, &base)?;
        let rec = PipelineRecord::from_run(&run);
        let form = run.marked.curve.ramification_form()?;
        Ok((signature_of(&rec.curve)?, invariant_signature(&form)?))
    };
    let (rec_a, sig_a) = sig(&chi)?;
    let (rec_b, sig_b) = sig(&moved)?;
    let signature_equal = sig_a == sig_b;
    let json = json!({
        "word": letters,
        "moved_character": CharacterRecord::from_character(&moved),
        "root_value_multiset_equal": multiset_equal,
        "signature_equal": signature_equal,
        "signature": rec_a.signature,
        "moved_signature": rec_b.signature,
    });
    let text = format!(
        "word: {letters:?}\nroot value multiset preserved: {multiset_equal}\nsignatures agree: {signature_equal}\n"
    );
    let code = if multiset_equal && signature_equal { EXIT_OK } else { EXIT_INTERNAL };
    Ok((Report { json, text }, code))
}
