//! Command-line front end. Every subcommand prints one JSON report on
//! stdout, except `export` and `forest dot` without `--output`, which print
//! the requested byte stream.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amenability::{cheeger_search, closed_walks, spectral_from_count, Strategy};
use crate::covering::{sample_generating_tuples, verify_star_bijection, verify_surjectivity_on_fragment, Epimorphism};
use crate::error::{Error, Result};
use crate::explorer::{components, euclid_reduce, BallOptions, ExportFormat, Fragment, DEFAULT_VERTEX_CAP};
use crate::forest::{forest_dot, verify_forest, ForestSpec, DEFAULT_WINDOW_CAP};
use crate::group::{Group, GroupSpec};
use crate::nielsen::{designated_tuple, eval_word, move_set, Tuple};
use crate::tame::verify_tame_classes;

#[derive(Parser, Debug)]
#[command(name = "nielsen", version, about = "Explore and verify Nielsen graphs of generating tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Breadth-first ball around a root tuple.
    Explore(Opts),
    /// Connected components of N_n(G) for a finite group.
    Components(Opts),
    /// Euclid certificate carrying an integer tuple to (1, 0, ..., 0).
    Euclid(Opts),
    /// Cumulative ball sizes |B_r|.
    Growth(Opts),
    /// Smallest isoperimetric ratio over candidate sets.
    Cheeger(Opts),
    /// Closed-walk count and spectral radius estimate.
    Spectral(Opts),
    /// The rooted subforest of N_n(Z).
    Forest {
        #[command(subcommand)]
        action: ForestAction,
    },
    /// Coverings induced by an epimorphism.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Nielsen classes versus tame automorphisms of a finite group.
    Tame(Opts),
    /// Write a ball as DOT or JSONL.
    Export(Opts),
}

#[derive(Subcommand, Debug)]
enum ForestAction {
    /// Check the forest properties inside a window.
    Verify(Opts),
    /// DOT rendering of one component.
    Dot(Opts),
}

#[derive(Subcommand, Debug)]
enum CoverAction {
    /// Star commutation on samples and lifting of a codomain fragment.
    Verify(Opts),
}

/// Every option any subcommand understands. Values may also come from a
/// JSON file given with `--config`; flags win over the file.
#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Opts {
    /// JSON file with any of the options below (snake_case keys).
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Group spec as JSON, e.g. '{"kind":"Integers"}'.
    #[arg(long)]
    #[serde(default, deserialize_with = "json_text")]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Root tuple as a JSON array; defaults to the designated generators.
    #[arg(long)]
    #[serde(default, deserialize_with = "json_text")]
    root: Option<String>,
    #[arg(long)]
    radius: Option<u32>,
    /// Maximum element size for exploration, or the forest window M.
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    cap: Option<usize>,
    /// dot or jsonl.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Epimorphism rule as JSON.
    #[arg(long)]
    #[serde(default, deserialize_with = "json_text")]
    pi: Option<String>,
    /// JSONL fragment over the codomain to lift.
    #[arg(long)]
    fragment: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads (flag only); results do not depend on it.
    #[arg(long)]
    #[serde(skip)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// balls or sweep.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Forest component sign set A (1-based, comma separated).
    #[arg(long)]
    a: Option<String>,
    /// Forest component zero set B (1-based, comma separated).
    #[arg(long)]
    b: Option<String>,
}

/// Accepts either a JSON string or an inline JSON value for fields that
/// carry JSON text on the command line.
fn json_text<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<String>, D::Error> {
    let v = Option::<Value>::deserialize(d)?;
    Ok(v.map(|v| match v {
        Value::String(s) => s,
        other => other.to_string(),
    }))
}

impl Opts {
    fn merged(mut self) -> Result<Opts> {
        let Some(path) = self.config.take() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: Opts = serde_json::from_str(&text)
            .map_err(|e| Error::usage(format!("bad config {}: {e}", path.display())))?;
        macro_rules! fill {
            ($($f:ident),*) => { $( if self.$f.is_none() { self.$f = file.$f; } )* };
        }
        fill!(group, n, root, radius, window, cap, format, k, samples, pi, fragment, output, seed, strategy, max_size, d, a, b);
        Ok(self)
    }

    fn set_flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        macro_rules! probe {
            ($($f:ident => $name:literal),*) => { $( if self.$f.is_some() { out.push($name); } )* };
        }
        probe!(group => "group", n => "n", root => "root", radius => "radius", window => "window",
            cap => "cap", format => "format", k => "k", samples => "samples", pi => "pi",
            fragment => "fragment", output => "output", seed => "seed", strategy => "strategy",
            max_size => "max-size", d => "d", a => "a", b => "b");
        out
    }

    fn only(&self, command: &str, allowed: &[&str]) -> Result<()> {
        match self.set_flags().into_iter().find(|f| !allowed.contains(f)) {
            Some(f) => Err(Error::usage(format!("--{f} is not an option of `{command}`"))),
            None => Ok(()),
        }
    }

    fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
        v.clone().ok_or_else(|| Error::usage(format!("missing required option --{flag}")))
    }

    fn group(&self) -> Result<Group> {
        Group::from_json(&Self::need(&self.group, "group")?)
    }

    fn n(&self) -> Result<usize> {
        Self::need(&self.n, "n")
    }

    fn root(&self, group: &Group, n: usize) -> Result<Tuple> {
        let root = match &self.root {
            Some(s) => Tuple::parse(group, s)?,
            None => designated_tuple(group, n)?,
        };
        if root.len() != n {
            return Err(Error::usage(format!("root {root} has length {}, but --n is {n}", root.len())));
        }
        Ok(root)
    }

    fn ball_options(&self) -> BallOptions {
        BallOptions {
            window: self.window,
            cap: self.cap.unwrap_or(DEFAULT_VERTEX_CAP),
        }
    }

    fn ball(&self) -> Result<Fragment> {
        let group = self.group()?;
        let n = self.n()?;
        let root = self.root(&group, n)?;
        Fragment::ball_with(&group, &root, Self::need(&self.radius, "radius")?, &self.ball_options())
    }

    fn index_set(s: &Option<String>, flag: &str) -> Result<Vec<usize>> {
        let Some(s) = s else { return Ok(Vec::new()) };
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| match p.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::usage(format!("--{flag}: bad index {p:?} (1-based)"))),
            })
            .collect()
    }
}

const BALL_FLAGS: [&str; 6] = ["group", "n", "root", "radius", "window", "cap"];

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    tool: Tool,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn print_report<T: Serialize>(out: &mut dyn Write, command: &str, body: T) -> Result<()> {
    let rep = Report {
        tool: Tool {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        },
        command,
        body,
    };
    serde_json::to_writer_pretty(&mut *out, &rep)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn write_file(path: &PathBuf, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn write_fragment(frag: &Fragment, format: ExportFormat, w: &mut dyn Write) -> Result<()> {
    match format {
        ExportFormat::Dot => w.write_all(frag.to_dot().as_bytes())?,
        ExportFormat::Jsonl => frag.write_jsonl(w)?,
    }
    Ok(())
}

fn fragment_summary(frag: &Fragment) -> Value {
    json!({
        "group": frag.group().spec(),
        "n": frag.n(),
        "root": frag.group().tuple_json(&frag.root().entries),
        "radius": frag.radius(),
        "window": frag.window(),
        "vertices": frag.len(),
        "expanded": frag.expanded_count(),
        "darts": frag.dart_count(),
        "degree": frag.degree(),
        "max_depth": frag.max_depth(),
        "truncated": frag.is_truncated(),
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Explore(o) => {
            let o = o.merged()?;
            o.only("explore", &[&BALL_FLAGS[..], &["format", "output"]].concat())?;
            let frag = o.ball()?;
            frag.check_invariants()?;
            let mut body = fragment_summary(&frag);
            if let Some(path) = &o.output {
                let format: ExportFormat = o.format.as_deref().unwrap_or("jsonl").parse()?;
                write_file(path, |w| write_fragment(&frag, format, w))?;
                body["output"] = json!(path.display().to_string());
            } else if o.format.is_some() {
                return Err(Error::usage("--format needs --output (use `export` to print a fragment)"));
            }
            print_report(out, "explore", body)
        }
        Command::Components(o) => {
            let o = o.merged()?;
            o.only("components", &["group", "n", "cap"])?;
            let group = o.group()?;
            let comps = components(&group, o.n()?, o.cap.unwrap_or(DEFAULT_VERTEX_CAP))?;
            let reps = comps
                .representatives
                .iter()
                .map(|&c| comps.decode(&group, c).map(|t| group.tuple_json(&t.entries)))
                .collect::<Result<Vec<_>>>()?;
            print_report(
                out,
                "components",
                json!({
                    "group": group.spec(),
                    "n": comps.n,
                    "generating_tuples": comps.tuples.len(),
                    "components": comps.count(),
                    "sizes": comps.sizes,
                    "representatives": reps,
                }),
            )
        }
        Command::Euclid(o) => {
            let o = o.merged()?;
            o.only("euclid", &["group", "n", "root"])?;
            let group = match &o.group {
                Some(_) => o.group()?,
                None => Group::new(GroupSpec::Integers)?,
            };
            if group.spec() != &GroupSpec::Integers {
                return Err(Error::usage("euclid works over {\"kind\":\"Integers\"} only"));
            }
            let root = Tuple::parse(&group, &Opts::need(&o.root, "root")?)?;
            if let Some(n) = o.n {
                if n != root.len() {
                    return Err(Error::usage(format!("root {root} has length {}, but --n is {n}", root.len())));
                }
            }
            let word = euclid_reduce(&root)?;
            let end = eval_word(&group, &root, &word)?;
            print_report(
                out,
                "euclid",
                json!({
                    "tuple": group.tuple_json(&root.entries),
                    "word": word.to_string(),
                    "length": word.len(),
                    "result": group.tuple_json(&end.entries),
                }),
            )
        }
        Command::Growth(o) => {
            let o = o.merged()?;
            o.only("growth", &BALL_FLAGS)?;
            let frag = o.ball()?;
            let profile = frag.growth_profile()?;
            let diffs: Vec<i64> = profile.windows(2).map(|w| w[1].1 as i64 - w[0].1 as i64).collect();
            let mut body = fragment_summary(&frag);
            body["profile"] = json!(profile);
            body["increments"] = json!(diffs);
            print_report(out, "growth", body)
        }
        Command::Cheeger(o) => {
            let o = o.merged()?;
            o.only("cheeger", &[&BALL_FLAGS[..], &["strategy", "max-size"]].concat())?;
            let strategy: Strategy = o.strategy.as_deref().unwrap_or("balls").parse()?;
            let frag = o.ball()?;
            let res = cheeger_search(&frag, strategy, o.max_size)?;
            print_report(
                out,
                "cheeger",
                json!({
                    "strategy": res.strategy,
                    "ratio_num": res.best.ratio_num,
                    "ratio_den": res.best.ratio_den,
                    "ratio_decimal": res.best.ratio_decimal,
                    "set_size": res.best.set_size,
                    "boundary": res.best.boundary,
                    "description": res.best.description,
                    "sets_evaluated": res.sets_evaluated,
                    "upper_bound": res.upper_bound,
                }),
            )
        }
        Command::Spectral(o) => {
            let o = o.merged()?;
            o.only("spectral", &["group", "n", "root", "k", "window", "cap"])?;
            let k = Opts::need(&o.k, "k")?;
            if k == 0 {
                return Err(Error::usage("--k must be at least 1: a_k^(1/k) is undefined at k = 0"));
            }
            let group = o.group()?;
            let n = o.n()?;
            let root = o.root(&group, n)?;
            let walks = closed_walks(&group, &root, k, o.window, o.cap.unwrap_or(DEFAULT_VERTEX_CAP))?;
            let est = spectral_from_count(k, walks[k], move_set(n).len())?;
            print_report(
                out,
                "spectral",
                json!({
                    "group": group.spec(),
                    "root": group.tuple_json(&root.entries),
                    "k": est.k,
                    "a_k": est.a_k.to_string(),
                    "closed_walks": walks.iter().map(u128::to_string).collect::<Vec<_>>(),
                    "m": est.m,
                    "rho_hat": est.rho_hat,
                    "note": est.note,
                }),
            )
        }
        Command::Forest { action } => match action {
            ForestAction::Verify(o) => {
                let o = o.merged()?;
                o.only("forest verify", &["n", "window", "cap"])?;
                let m = Opts::need(&o.window, "window")?;
                let cap = o.cap.map_or(DEFAULT_WINDOW_CAP, |c| c as u64);
                let rep = verify_forest(o.n()?, m as i64, cap)?;
                let ok = rep.ok();
                print_report(out, "forest verify", json!({ "ok": ok, "report": rep }))
            }
            ForestAction::Dot(o) => {
                let o = o.merged()?;
                o.only("forest dot", &["n", "window", "a", "b", "output"])?;
                let a = Opts::index_set(&o.a, "a")?;
                let b = Opts::index_set(&o.b, "b")?;
                let spec = ForestSpec::new(o.n()?, &a, &b, Opts::need(&o.window, "window")? as i64)?;
                let dot = forest_dot(&spec)?;
                match &o.output {
                    Some(path) => {
                        write_file(path, |w| Ok(w.write_all(dot.as_bytes())?))?;
                        print_report(
                            out,
                            "forest dot",
                            json!({ "component": spec.component.label(), "output": path.display().to_string() }),
                        )
                    }
                    None => Ok(out.write_all(dot.as_bytes())?),
                }
            }
        },
        Command::Cover { action } => match action {
            CoverAction::Verify(o) => {
                let o = o.merged()?;
                o.only("cover verify", &["pi", "n", "samples", "seed", "fragment", "radius", "root", "cap"])?;
                let pi = Epimorphism::from_json(&Opts::need(&o.pi, "pi")?)?;
                let n = o.n()?;
                let samples = o.samples.unwrap_or(1000);
                let seed = o.seed.unwrap_or(0);
                let pts = sample_generating_tuples(pi.domain(), n, samples, seed)?;
                let star = verify_star_bijection(&pi, &pts)?;
                let lift_seed = o.root(pi.domain(), n)?;
                let frag = match &o.fragment {
                    Some(path) => {
                        if o.radius.is_some() {
                            return Err(Error::usage("--radius and --fragment are exclusive"));
                        }
                        let f = File::open(path)
                            .map_err(|e| Error::usage(format!("cannot open fragment {}: {e}", path.display())))?;
                        Fragment::read_jsonl(pi.codomain(), BufReader::new(f))?
                    }
                    None => {
                        let opts = BallOptions {
                            window: None,
                            cap: o.cap.unwrap_or(DEFAULT_VERTEX_CAP),
                        };
                        Fragment::ball_with(pi.codomain(), &pi.push(&lift_seed)?, o.radius.unwrap_or(4), &opts)?
                    }
                };
                let lift = verify_surjectivity_on_fragment(&pi, &frag, &lift_seed)?;
                let mut violations = star.violations.clone();
                violations.extend(lift.violations.iter().cloned());
                print_report(
                    out,
                    "cover verify",
                    json!({
                        "pi": pi.rule(),
                        "n": n,
                        "checked": star.checked,
                        "darts_checked": star.darts_checked,
                        "violations": violations,
                        "fragment_vertices": lift.vertices,
                        "lifted": lift.lifted,
                        "unreached": lift.unreached,
                        "max_word_length": lift.max_word_length,
                    }),
                )
            }
        },
        Command::Tame(o) => {
            let o = o.merged()?;
            o.only("tame", &["group", "d"])?;
            let rep = verify_tame_classes(&o.group()?, Opts::need(&o.d, "d")?)?;
            let ok = rep.ok();
            print_report(out, "tame", json!({ "ok": ok, "report": rep }))
        }
        Command::Export(o) => {
            let o = o.merged()?;
            o.only("export", &[&BALL_FLAGS[..], &["format", "output"]].concat())?;
            let format: ExportFormat = Opts::need(&o.format, "format")?.parse()?;
            let frag = o.ball()?;
            match &o.output {
                Some(path) => {
                    write_file(path, |w| write_fragment(&frag, format, w))?;
                    let mut body = fragment_summary(&frag);
                    body["output"] = json!(path.display().to_string());
                    print_report(out, "export", body)
                }
                None => write_fragment(&frag, format, out),
            }
        }
    }
}

fn workers(cmd: &Command) -> Option<usize> {
    let o = match cmd {
        Command::Explore(o)
        | Command::Components(o)
        | Command::Euclid(o)
        | Command::Growth(o)
        | Command::Cheeger(o)
        | Command::Spectral(o)
        | Command::Tame(o)
        | Command::Export(o) => o,
        Command::Forest { action: ForestAction::Verify(o) | ForestAction::Dot(o) } => o,
        Command::Cover { action: CoverAction::Verify(o) } => o,
    };
    o.workers
}

/// Runs one command line, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = match workers(&cli.command) {
        Some(0) => Err(Error::usage("--workers must be at least 1")),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Assertion(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| execute(cli.command, &mut buf))),
        None => execute(cli.command, &mut buf),
    };
    if out.write_all(&buf).is_err() {
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}
