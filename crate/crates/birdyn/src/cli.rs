//! The `birdyn` command line.
//!
//! Every subcommand reads one map, given either as `--map FILE` or as
//! `--case NAME` (a catalog representative), and prints a report on stdout.
//! Diagnostics and elapsed time go to stderr, so identical invocations give
//! byte-identical stdout.
//!
//! Exit codes: 0 success, 1 verification failure or a computation that could
//! not finish, 2 usage or input errors.
//!
//! # Map documents
//!
//! ```text
//! {
//!   "family": "A" | "B" | "raw",
//!   "name": "optional label",
//!   "field": {"modulus": [c0, c1, ..., 1]},       optional, Q when absent
//!   "params": {"alpha0": E, "alpha1": E, "gamma0": E},   family A
//!   "params": {"alpha0": E, "alpha1": E, "beta2": E},    family B
//!   "components": [[[[e0, e1, e2], E], ...], x3],  raw only
//!   "inverse": same shape as components,           raw only, optional
//!   "indeterminacy": [[E, E, E], ...]              raw only, optional
//! }
//! ```
//!
//! The modulus lists coefficients constant term first; entries are integers
//! or rational strings. An element `E` is a string: either a coefficient
//! vector `"[c0, c1, ...]"` in powers of the generator, or an expression in
//! the generator `a` built from integers, `+ - * / ^` and parentheses, for
//! example `"-a^2 + 1/3"`. Unknown keys are rejected; `alpha1` must be nonzero.
//!
//! # Fibration documents
//!
//! ```text
//! {
//!   "map": map document,                optional if --map is given
//!   "field": {"modulus": [...]},        used when there is no map
//!   "P": [[i, j, E], ...],              terms E x^i y^j of V = P/Q
//!   "Q": [[i, j, E], ...],
//!   "mobius": [E, E, E, E],             psi(t) = (w1 t + w2)/(w3 t + w4), optional
//!   "first_integral_order": n,          optional, checks W = V^n-type integral
//!   "transverse_to": "other"            optional, sibling file other.json
//! }
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::acceptance::run_all;
use crate::classifier::{catalog_entry, classify_map, verify_catalog, zero_entropy_catalog, K_MAX, P_MAX};
use crate::entropy::dynamical_degree_of_profile;
use crate::error::{Error, Result};
use crate::fibrations::{check_periodicity, search_invariant_curves};
use crate::io::fixture::{check_fibration_spec, read_text};
use crate::io::{catalog_value, elem_strings, growth_value, label_value, parse_fibration_spec, parse_map, to_json_string, CatalogRecord};
use crate::maps::{degree_sequence_with, BiMap, DegreeOptions, DEFAULT_TERM_CAP};
use crate::orbits::{se_profile, OrbitRecord, Terminal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "birdyn", version, about = "Degree growth, orbit data and invariant fibrations of quadratic birational plane maps")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled computations (modular degrees, pointwise checks).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Orbit steps before giving up on reaching an indeterminacy point.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_steps: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_CAP)]
    pub term_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MapArg {
    /// Map document (JSON).
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    pub map: Option<PathBuf>,
    /// Catalog entry whose representative is used.
    #[arg(long)]
    pub case: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degrees d_1..d_n of the iterates.
    Degrees {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Characteristic polynomial from the singular orbit data.
    Charpoly {
        #[command(flatten)]
        map: MapArg,
    },
    /// Dynamical degree with an isolating interval, checked against the degrees.
    Dyndeg {
        #[command(flatten)]
        map: MapArg,
    },
    /// Growth class, orbit parameters (k, p) and the matching catalog case.
    Classify {
        #[command(flatten)]
        map: MapArg,
    },
    /// Orbits of the points A_i.
    Orbit {
        #[command(flatten)]
        map: MapArg,
        /// Only the orbit of A_i.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        start: Option<u8>,
    },
    /// Checks V∘f = ψ(V) for a fibration document.
    CheckFibration {
        #[arg(long)]
        fibration: PathBuf,
        /// Overrides the map embedded in the document.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Invariant curves of one degree.
    SearchCurves {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        degree: u32,
    },
    /// Smallest n ≤ n_max with f^n = id.
    Period {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Prints the zero-entropy catalog.
    Catalog {
        /// Checks every entry against its representative.
        #[arg(long)]
        verify: bool,
        /// Writes catalog.json and maps/<name>.json into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Runs the acceptance criteria.
    VerifyAll,
}

/// What a command produced, before formatting.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Map<String, Value>,
    /// CSV rows, when the command has a natural tabular form.
    pub rows: Option<Vec<Vec<String>>>,
    /// Plain-text lines; defaults to `key: value` pairs.
    pub text: Option<Vec<String>>,
    pub ok: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Value) -> Report {
        Report { command, inputs, result: Map::new(), rows: None, text: None, ok: true }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.result.insert(key.to_string(), v);
    }

    pub fn to_value(&self) -> Value {
        let mut m = self.result.clone();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json_string(&self.to_value()),
            Format::Csv => {
                let rows = self.rows.clone().unwrap_or_else(|| {
                    self.result.iter().map(|(k, v)| vec![k.clone(), scalar_text(v)]).collect()
                });
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for r in rows {
                    w.write_record(&r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
            }
            Format::Text => {
                let lines = self.text.clone().unwrap_or_else(|| {
                    self.result.iter().map(|(k, v)| format!("{k}: {}", scalar_text(v))).collect()
                });
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Parses `argv` (program name first) and runs the command.
/// Returns the exit code, stdout and stderr.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let t = Instant::now();
    match execute(&cli) {
        Ok(report) => {
            let out = report.render(cli.format);
            let err = format!("{} finished in {:.2?}\n", report.command, t.elapsed());
            (if report.ok { 0 } else { 1 }, out, err)
        }
        Err(e) => {
            let code = match e {
                Error::Parse { .. } | Error::Validation { .. } => 2,
                _ => 1,
            };
            (code, String::new(), format!("error: {e}\n"))
        }
    }
}

fn load_map(arg: &MapArg) -> Result<(BiMap, Value)> {
    match (&arg.map, &arg.case) {
        (Some(path), _) => Ok((parse_map(&read_text(path)?).map_err(|e| at_file(path, e))?, json!({"map": path.display().to_string()}))),
        (None, Some(name)) => {
            let e = catalog_entry(name).ok_or_else(|| Error::validation("case", format!("no catalog entry {name:?}")))?;
            Ok((e.representative()?, json!({"case": name})))
        }
        (None, None) => Err(Error::validation("map", "give --map or --case")),
    }
}

fn at_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        Error::Validation { field, message } => Error::validation(format!("{}: {field}", path.display()), message),
        e => e,
    }
}

fn with(mut inputs: Value, extra: &[(&str, Value)]) -> Value {
    if let Value::Object(m) = &mut inputs {
        for (k, v) in extra {
            m.insert(k.to_string(), v.clone());
        }
    }
    inputs
}

fn degree_options(cli: &Cli) -> DegreeOptions {
    let d = DegreeOptions::default();
    DegreeOptions { seed: cli.seed.unwrap_or(d.seed), term_cap: cli.term_cap, max_degree: None }
}

fn terminal_value(t: &Terminal) -> Value {
    match t {
        Terminal::Reached { index, modular } => json!({"reached": index, "modular": modular}),
        Terminal::Truncated => json!("truncated"),
        Terminal::Undetermined(why) => json!({"undetermined": why}),
    }
}

fn orbit_value(o: &OrbitRecord) -> Value {
    json!({
        "start": o.start,
        "length": o.len(),
        "singular_elementary": o.is_se(),
        "end": o.end(),
        "terminal": terminal_value(&o.terminal),
        "points": o.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "modular_points": o.modular_points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "prime": o.prime,
    })
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let seed = json!(cli.seed);
    match &cli.command {
        Command::Degrees { map, n } => {
            let (f, inputs) = load_map(map)?;
            let d = degree_sequence_with(&f, *n, &degree_options(cli))?;
            let mut r = Report::new("degrees", with(inputs, &[("n", json!(n)), ("seed", seed)]));
            r.set("degrees", json!(d));
            r.rows = Some(vec![d.iter().map(|v| v.to_string()).collect()]);
            Ok(r)
        }
        Command::Charpoly { map } => {
            let (f, inputs) = load_map(map)?;
            let profile = se_profile(&f, cli.max_steps)?;
            let dd = dynamical_degree_of_profile(&f, &profile, &degree_options(cli))?;
            let mut r = Report::new("charpoly", with(inputs, &[("max_steps", json!(cli.max_steps))]));
            r.set("charpoly", json!(elem_strings(&dd.charpoly)));
            r.set("polynomial", json!(dd.charpoly.to_string()));
            r.set("orbits", json!(profile.orbits.iter().map(orbit_summary).collect::<Vec<_>>()));
            r.rows = Some(vec![elem_strings(&dd.charpoly)]);
            r.text = Some(vec![dd.charpoly.to_string()]);
            Ok(r)
        }
        Command::Dyndeg { map } => {
            let (f, inputs) = load_map(map)?;
            let profile = se_profile(&f, cli.max_steps)?;
            let dd = dynamical_degree_of_profile(&f, &profile, &degree_options(cli))?;
            let mut r = Report::new("dyndeg", with(inputs, &[("max_steps", json!(cli.max_steps)), ("seed", seed)]));
            r.set("charpoly", json!(elem_strings(&dd.charpoly)));
            r.set("delta", json!({"lo": dd.delta.lo.to_string(), "hi": dd.delta.hi.to_string()}));
            r.set("class", json!(dd.class.name()));
            r.set("growth", growth_value(&dd.class));
            r.set("degrees", json!(dd.degrees));
            r.set("empirical", json!(elem_strings(&dd.empirical)));
            r.set("discrepancy", json!(dd.discrepancy));
            r.rows = Some(vec![vec![dd.delta.lo.to_string(), dd.delta.hi.to_string()]]);
            r.text = Some(vec![
                format!("charpoly: {}", dd.charpoly),
                format!("delta: [{}, {}] ~ {:.12}", dd.delta.lo, dd.delta.hi, dd.delta.midpoint()),
                format!("class: {}", dd.class),
            ]);
            Ok(r)
        }
        Command::Classify { map } => {
            let (f, inputs) = load_map(map)?;
            let l = classify_map(&f, K_MAX, P_MAX)?;
            let mut r = Report::new("classify", inputs);
            if let Value::Object(m) = label_value(&l) {
                r.result.extend(m);
            }
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            r.rows = Some(vec![
                vec!["family".into(), "k".into(), "p".into(), "class".into(), "case".into()],
                vec![l.family.to_string(), opt(l.k), opt(l.p), l.growth.name().into(), l.case.map(|c| c.name().to_string()).unwrap_or_default()],
            ]);
            Ok(r)
        }
        Command::Orbit { map, start } => {
            let (f, inputs) = load_map(map)?;
            let profile = se_profile(&f, cli.max_steps)?;
            let orbits: Vec<&OrbitRecord> =
                profile.orbits.iter().filter(|o| start.is_none_or(|s| o.start == s as usize)).collect();
            let mut r = Report::new("orbit", with(inputs, &[("start", json!(start)), ("max_steps", json!(cli.max_steps))]));
            r.set("orbits", json!(orbits.iter().map(|o| orbit_value(o)).collect::<Vec<_>>()));
            let mut rows = vec![vec!["start".to_string(), "step".into(), "point".into()]];
            let mut text = Vec::new();
            for o in &orbits {
                let end = o.end().map(|e| format!("O{e}")).unwrap_or_else(|| "no endpoint".into());
                text.push(format!("A{}: length {}, {end}", o.start, o.len()));
                for (i, p) in o.points.iter().enumerate() {
                    rows.push(vec![o.start.to_string(), i.to_string(), p.to_string()]);
                    text.push(format!("  {i}: {p}"));
                }
                for (i, p) in o.modular_points.iter().enumerate() {
                    let step = o.points.len() + i;
                    rows.push(vec![o.start.to_string(), step.to_string(), format!("{p} (mod {})", o.prime.unwrap_or(0))]);
                    text.push(format!("  {step}: {p} (mod {})", o.prime.unwrap_or(0)));
                }
            }
            r.rows = Some(rows);
            r.text = Some(text);
            Ok(r)
        }
        Command::CheckFibration { fibration, map } => {
            let spec = parse_fibration_spec(&read_text(fibration)?).map_err(|e| at_file(fibration, e))?;
            let f = match map {
                Some(p) => Some(parse_map(&read_text(p)?).map_err(|e| at_file(p, e))?),
                None => None,
            };
            let sibling = match &spec.transverse_to {
                Some(t) => {
                    let path = fibration.with_file_name(format!("{t}.json"));
                    Some(parse_fibration_spec(&read_text(&path)?).map_err(|e| at_file(&path, e))?)
                }
                None => None,
            };
            let stem = fibration.file_stem().and_then(|s| s.to_str()).unwrap_or("fibration");
            let c = check_fibration_spec(stem, &spec, f.as_ref(), sibling.as_ref(), cli.seed.unwrap_or(7))?;
            let mut inputs = json!({"fibration": fibration.display().to_string(), "seed": seed});
            if let Some(p) = map {
                inputs = with(inputs, &[("map", json!(p.display().to_string()))]);
            }
            let mut r = Report::new("check-fibration", inputs);
            if let Value::Object(m) = c.to_value() {
                r.result.extend(m);
            }
            r.ok = c.passed();
            Ok(r)
        }
        Command::SearchCurves { map, degree } => {
            let (f, inputs) = load_map(map)?;
            let s = search_invariant_curves(&f, *degree)?;
            let mut r = Report::new("search-curves", with(inputs, &[("degree", json!(degree))]));
            let fams: Vec<Value> = s
                .families
                .iter()
                .map(|fam| {
                    json!({
                        "eigenvalue": fam.eigenvalue.to_string(),
                        "multiplicities": fam.mults,
                        "basis": fam.basis.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let open: Vec<Value> =
                s.needs_extension.iter().map(|u| json!({"multiplicities": u.mults, "minpoly": u.minpoly.to_string()})).collect();
            r.set("families", json!(fams));
            r.set("needs_extension", json!(open));
            let mut rows = vec![vec!["eigenvalue".to_string(), "multiplicities".into(), "curve".into()]];
            let mut text = Vec::new();
            for fam in &s.families {
                let m = fam.mults.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                for c in &fam.basis {
                    rows.push(vec![fam.eigenvalue.to_string(), m.clone(), c.to_string()]);
                    text.push(format!("lambda = {} (mults {m}): {c}", fam.eigenvalue));
                }
            }
            for u in &s.needs_extension {
                text.push(format!("eigenvalues outside the field: {}", u.minpoly));
            }
            r.rows = Some(rows);
            r.text = Some(text);
            Ok(r)
        }
        Command::Period { map, n_max } => {
            let (f, inputs) = load_map(map)?;
            let p = check_periodicity(&f, *n_max)?;
            let mut r = Report::new("period", with(inputs, &[("n_max", json!(n_max))]));
            r.set("period", json!(p));
            r.rows = Some(vec![vec![p.map(|v| v.to_string()).unwrap_or_default()]]);
            Ok(r)
        }
        Command::Catalog { verify, export } => {
            let entries = zero_entropy_catalog();
            let mut r = Report::new("catalog", json!({"verify": verify}));
            r.set("entries", catalog_value(&entries));
            let mut rows = vec![vec!["name".to_string(), "case".into(), "family".into(), "growth".into(), "period".into()]];
            for e in &entries {
                rows.push(vec![
                    e.name.into(),
                    e.case.name().into(),
                    e.family().to_string(),
                    e.growth.into(),
                    e.period.map(|p| p.to_string()).unwrap_or_default(),
                ]);
            }
            if *verify {
                let checks = verify_catalog(&entries);
                let vs: Vec<Value> = checks
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "passed": c.passed(),
                            "on_locus": c.on_locus,
                            "growth_ok": c.growth_ok,
                            "charpoly_ok": c.charpoly_ok,
                            "period": c.period,
                            "period_ok": c.period_ok,
                            "matches": c.matches.iter().map(|m| m.name()).collect::<Vec<_>>(),
                            "error": c.label.as_ref().err(),
                        })
                    })
                    .collect();
                r.ok = checks.iter().all(|c| c.passed());
                r.set("verification", json!(vs));
                r.set("verdict", json!(r.ok));
                rows[0].push("verified".into());
                for (row, c) in rows.iter_mut().skip(1).zip(&checks) {
                    row.push(c.passed().to_string());
                }
            }
            if let Some(dir) = export {
                export_catalog(dir, &entries)?;
            }
            r.text = Some(rows.iter().skip(1).map(|row| row.join("  ")).collect());
            r.rows = Some(rows);
            Ok(r)
        }
        Command::VerifyAll => {
            let results = run_all();
            let mut r = Report::new("verify-all", json!({}));
            r.ok = results.iter().all(|c| c.passed());
            r.set("criteria", json!(results.iter().map(|c| c.to_value()).collect::<Vec<_>>()));
            r.set("verdict", json!(r.ok));
            r.text = Some(results.iter().map(|c| c.summary()).collect());
            r.rows = Some(
                results.iter().map(|c| vec![c.number.to_string(), if c.passed() { "PASS" } else { "FAIL" }.into(), c.title.into()]).collect(),
            );
            Ok(r)
        }
    }
}

fn orbit_summary(o: &OrbitRecord) -> Value {
    json!({"start": o.start, "length": o.len(), "singular_elementary": o.is_se(), "end": o.end()})
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// catalog.json plus one map document per entry.
pub fn export_catalog(dir: &Path, entries: &[crate::classifier::CatalogEntry]) -> Result<()> {
    let maps = dir.join("maps");
    fs::create_dir_all(&maps).map_err(|e| Error::parse(maps.display().to_string(), e.to_string()))?;
    write(&dir.join("catalog.json"), &to_json_string(&catalog_value(entries)))?;
    let mut names = BTreeMap::new();
    for e in entries {
        let rec = CatalogRecord::from(e);
        names.insert(rec.name.clone(), to_json_string(&rec.map_spec().to_value()));
    }
    for (name, text) in names {
        write(&maps.join(format!("{name}.json")), &text)?;
    }
    Ok(())
}
