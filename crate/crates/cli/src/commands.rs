use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use wht_core::classify::{embeds_closed, prod_table, sum_table};
use wht_core::present::{decide_uncountable, enumerate_depth, is_compact, isolated_points_upto};
use wht_core::properties::{check_preservation, fingerprint, invariants, PreservationReport};
use wht_core::witness::{canonical_witness, verify_with_bound, Certified, DerivationScript, WitnessError};
use wht_core::{classify_by_tree, normalize, parse, NormalForm, WeakHomeoClass};

use crate::Format;

pub struct Options {
    pub format: Format,
    pub depth: usize,
    pub bound: u64,
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

type Result<T> = std::result::Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn nf_of(expr: &str) -> Result<NormalForm> {
    parse(expr).map(|t| normalize(&t)).map_err(|e| usage(format!("{expr:?}: {e}")))
}

fn emit(opts: &Options, text: String, json: impl Serialize, code: u8) -> Result<Output> {
    let text = match opts.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&json).expect("reports serialize") + "\n",
    };
    Ok(Output { text, code })
}

pub fn classify(expr: &str, opts: &Options) -> Result<Output> {
    let nf = nf_of(expr)?;
    let c = wht_core::classify(&nf);
    emit(opts, format!("{c}\n"), json!({ "normal_form": nf.render(), "class": c }), 0)
}

pub fn props(expr: &str, other: Option<&str>, opts: &Options) -> Result<Output> {
    let nf = nf_of(expr)?;
    if let Some(other) = other {
        return preservation(&nf, &nf_of(other)?, opts);
    }
    let fp = fingerprint(&nf);
    let inv = invariants(&nf);
    let mut t = String::new();
    writeln!(t, "normal form: {}", nf.render()).unwrap();
    writeln!(t, "class: {}", wht_core::classify(&nf)).unwrap();
    writeln!(t, "cardinality: {}", fp.cardinality).unwrap();
    for (name, value) in fp.flags() {
        writeln!(t, "{name:<24}{value}").unwrap();
    }
    writeln!(t, "invariants: nw {} hl {} hd {} psi {} dim {}", inv.nw, inv.hl, inv.hd, inv.psi, inv.dim).unwrap();
    let doc = json!({
        "normal_form": nf.render(),
        "class": wht_core::classify(&nf),
        "fingerprint": fp,
        "invariants": inv,
    });
    emit(opts, t, doc, 0)
}

fn preservation(a: &NormalForm, b: &NormalForm, opts: &Options) -> Result<Output> {
    let report = check_preservation(a, b);
    let names = |v: &[wht_core::properties::PreservedProperty]| {
        v.iter().map(|p| p.name()).collect::<Vec<_>>().join(", ")
    };
    let text = match &report {
        PreservationReport::Ok { class, .. } => format!("same class {class}: preserved properties agree\n"),
        PreservationReport::Violation { class, differing } => {
            format!("same class {class}: preserved properties differ: {}\n", names(differing))
        }
        PreservationReport::Distinct { left, right, distinguishing } if distinguishing.is_empty() => {
            format!("different classes {left} and {right}: no preserved property separates them\n")
        }
        PreservationReport::Distinct { left, right, distinguishing } => {
            format!("different classes {left} and {right}: separated by {}\n", names(distinguishing))
        }
    };
    let code = if report.is_ok() { 0 } else { 1 };
    emit(opts, text, json!({ "left": a.render(), "right": b.render(), "report": report }), code)
}

pub fn table(opts: &Options) -> Result<Output> {
    let classes = WeakHomeoClass::table_classes();
    let grid = |op: fn(WeakHomeoClass, WeakHomeoClass) -> WeakHomeoClass| -> Vec<Vec<WeakHomeoClass>> {
        classes.iter().map(|&a| classes.iter().map(|&b| op(a, b)).collect()).collect()
    };
    let (sum, prod) = (grid(sum_table), grid(prod_table));
    let width = 2 + classes
        .iter()
        .chain(sum.iter().flatten())
        .chain(prod.iter().flatten())
        .map(|c| c.name().len())
        .max()
        .unwrap_or(0);
    let mut t = String::new();
    for (title, rows) in [("+", &sum), ("*", &prod)] {
        write!(t, "{title:<width$}").unwrap();
        for c in &classes {
            write!(t, "{:<width$}", c.name()).unwrap();
        }
        writeln!(t).unwrap();
        for (a, row) in classes.iter().zip(rows) {
            write!(t, "{:<width$}", a.name()).unwrap();
            for c in row {
                write!(t, "{:<width$}", c.name()).unwrap();
            }
            writeln!(t).unwrap();
        }
        writeln!(t).unwrap();
    }
    let t = t.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n";
    emit(opts, t, json!({ "classes": classes, "sum": sum, "product": prod }), 0)
}

/// A class name, or any expression standing for its class.
fn class_arg(s: &str) -> Result<WeakHomeoClass> {
    s.parse().or_else(|_| nf_of(s).map(|nf| wht_core::classify(&nf)))
}

pub fn embed(source: &str, target: &str, opts: &Options) -> Result<Output> {
    let (a, b) = (class_arg(source)?, class_arg(target)?);
    let yes = embeds_closed(a, b);
    let text = if yes { "yes\n" } else { "no\n" };
    emit(opts, text.into(), json!({ "source": a, "target": b, "embeds_closed": yes }), 0)
}

pub fn witness(expr: &str, out: Option<&Path>, opts: &Options) -> Result<Output> {
    let nf = nf_of(expr)?;
    let script = canonical_witness(&nf).map_err(|e| match e {
        WitnessError::UnsupportedWitness(_) => Failure { code: 3, message: e.to_string() },
        _ => Failure { code: 1, message: e.to_string() },
    })?;
    let doc = serde_json::to_string_pretty(&script).expect("scripts serialize") + "\n";
    let mut t = String::new();
    writeln!(t, "{} -> {}", script.source, script.target).unwrap();
    if script.steps.is_empty() {
        writeln!(t, "already canonical").unwrap();
    }
    for (i, s) in script.steps.iter().enumerate() {
        writeln!(t, "{}. {}: {} -> {} ({})", i + 1, s.kind, s.from, s.to, s.description).unwrap();
    }
    if let Some(c) = &script.composite {
        writeln!(t, "composite: {} forward, {} backward pieces", c.cert.forward_count, c.cert.backward_count).unwrap();
    }
    if let Some(path) = out {
        std::fs::write(path, &doc).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        writeln!(t, "wrote {}", path.display()).unwrap();
    }
    Ok(Output { text: if opts.format == Format::Json { doc } else { t }, code: 0 })
}

pub fn verify(file: &Path, opts: &Options) -> Result<Output> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let reports = if let Ok(script) = serde_json::from_str::<DerivationScript>(&text) {
        script.verify_with_bound(opts.depth, opts.bound)
    } else {
        let c: Certified = serde_json::from_str(&text)
            .map_err(|e| usage(format!("{}: neither a derivation script nor a certificate: {e}", file.display())))?;
        vec![("certificate".into(), verify_with_bound(&c.map, &c.cert, opts.depth, opts.bound))]
    };
    let passed = reports.iter().all(|(_, r)| r.passed());
    let mut t = String::new();
    for (label, r) in &reports {
        write!(t, "{label}: {r}").unwrap();
    }
    if reports.is_empty() {
        writeln!(t, "nothing to verify").unwrap();
    }
    let doc = json!({
        "passed": passed,
        "reports": reports.iter().map(|(l, r)| json!({ "label": l, "report": r })).collect::<Vec<_>>(),
    });
    emit(opts, t, doc, if passed { 0 } else { 1 })
}

pub fn present(expr: &str, opts: &Options) -> Result<Output> {
    let tree = enumerate_depth(&wht_core::present::present(&nf_of(expr)?), opts.depth, opts.bound);
    emit(opts, tree.to_string(), &tree, 0)
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    symbolic: String,
    presentation: String,
    agree: bool,
}

pub fn oracle(expr: &str, opts: &Options) -> Result<Output> {
    let nf = nf_of(expr)?;
    let fp = fingerprint(&nf);
    let p = wht_core::present::present(&nf);
    let isolated = isolated_points_upto(&p, opts.depth, opts.bound);
    let check = |name, symbolic: String, presentation: String| Check {
        name,
        agree: symbolic == presentation,
        symbolic,
        presentation,
    };
    let checks = vec![
        check("class", wht_core::classify(&nf).to_string(), classify_by_tree(&nf).to_string()),
        check("compact", fp.is_compact.to_string(), is_compact(&p).to_string()),
        check("uncountable", fp.cardinality.is_uncountable().to_string(), decide_uncountable(&p).to_string()),
        check("perfect", fp.is_perfect.to_string(), isolated.prefixes.is_empty().to_string()),
    ];
    let agree = checks.iter().all(|c| c.agree);
    let mut t = String::new();
    writeln!(t, "{:<14}{:<22}presentation", "check", "symbolic").unwrap();
    for c in &checks {
        let mark = if c.agree { "ok" } else { "MISMATCH" };
        writeln!(t, "{:<14}{:<22}{:<22}{mark}", c.name, c.symbolic, c.presentation).unwrap();
    }
    if let Some(w) = isolated.prefixes.first() {
        writeln!(t, "isolation candidate {w:?} (depth {}, horizon {})", isolated.depth, isolated.horizon).unwrap();
    }
    writeln!(t, "{}", if agree { "agree" } else { "mismatch" }).unwrap();
    let doc = json!({ "normal_form": nf.render(), "checks": checks, "agree": agree, "isolated": isolated });
    emit(opts, t, doc, if agree { 0 } else { 1 })
}
