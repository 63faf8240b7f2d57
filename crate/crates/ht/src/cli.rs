//! The `ht` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ht_core::{
    build_universe, check_script, defeq, diagonalize, kripke_stages, prove_bounded, saturate,
    tarski_levels, unfold_once, Codec, DefEnv, Formula, GodelCode, LogicConfig, SearchBounds,
    Template,
};

use crate::config::{load_config, Overrides};
use crate::defs::{def_line_for, load_defs};
use crate::report::{self, CheckJson, CodeJson, ConfigJson, DiagJson, Inputs, ProveJson, Report};
use crate::script::{load_script, write_script};
use crate::universe::load_universe;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ht", version, about = "Proof checking, bounded search and truth models for self-applicative provability")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print every derived sequent.
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check proof scripts.
    Check {
        #[arg(required = true)]
        scripts: Vec<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Saturate a bounded universe and query it.
    Saturate {
        #[command(flatten)]
        common: SearchArgs,
        /// Formula to add to the seed set. Defaults to the defined names.
        #[arg(long = "seed")]
        seeds: Vec<String>,
        /// Formula to look up; also added to the seeds.
        #[arg(long = "query")]
        queries: Vec<String>,
        /// Expected outcome of the query at the same position.
        #[arg(long = "expect")]
        expects: Vec<Expect>,
    },
    /// Search for a proof and print it as a script.
    Prove {
        goal: String,
        #[command(flatten)]
        common: SearchArgs,
    },
    /// Evaluate a truth universe.
    Truth {
        universe: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Kripke)]
        mode: Mode,
    },
    /// Print Gödel codes, or decode one with `--decode`.
    Encode {
        formulas: Vec<String>,
        #[arg(long)]
        env: Option<PathBuf>,
        /// Decode this code instead.
        #[arg(long)]
        decode: Option<String>,
        /// Atom registry for decoding, comma separated.
        #[arg(long, value_delimiter = ',')]
        atoms: Vec<String>,
    },
    /// Diagonalize a template with `@` for the hole into a definition.
    Diag {
        name: String,
        template: String,
        #[arg(long)]
        env: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Config file; applied over script headers.
    #[arg(long = "config")]
    pub file: Option<PathBuf>,
    #[arg(long, value_name = "BOOL")]
    pub ex_falso: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub excluded_middle: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub reflection: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    pub prov_axioms: Option<bool>,
}

impl ConfigArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            ex_falso: self.ex_falso,
            excluded_middle: self.excluded_middle,
            reflection: self.reflection,
            prov_axioms: self.prov_axioms,
        }
    }

    /// Base config, then the `--config` file, then individual flags.
    fn resolve(&self, base: LogicConfig) -> Result<LogicConfig, String> {
        let c = match &self.file {
            Some(p) => load_config(&locate(p)).map_err(|e| e.to_string())?,
            None => base,
        };
        Ok(self.overrides().apply(c))
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Definition file.
    #[arg(long)]
    pub env: Option<PathBuf>,
    #[arg(long, default_value_t = SearchBounds::default().quote_depth)]
    pub quote_depth: usize,
    #[arg(long, default_value_t = SearchBounds::default().formula_size)]
    pub size: usize,
    #[arg(long, default_value_t = SearchBounds::default().iterations)]
    pub iterations: usize,
    #[arg(long, default_value_t = SearchBounds::default().hyp_depth)]
    pub hyp_depth: usize,
    #[command(flatten)]
    pub config: ConfigArgs,
}

impl SearchArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            quote_depth: self.quote_depth,
            formula_size: self.size,
            iterations: self.iterations,
            hyp_depth: self.hyp_depth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Present,
    Absent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Kripke,
    Tarski,
}

/// Falls back to `$HT_EXAMPLES_DIR/<file name>` for paths that do not exist.
pub fn locate(p: &Path) -> PathBuf {
    if p.exists() {
        return p.to_path_buf();
    }
    if let (Some(dir), Some(name)) = (std::env::var_os("HT_EXAMPLES_DIR"), p.file_name()) {
        let alt = Path::new(&dir).join(name);
        if alt.exists() {
            return alt;
        }
    }
    p.to_path_buf()
}

struct Out<'a> {
    json: bool,
    text: &'a mut dyn Write,
}

impl Out<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        if !self.json {
            let _ = writeln!(self.text, "{}", s.as_ref());
        }
    }

    fn finish<T: Serialize>(&mut self, command: &str, inputs: Inputs, outcome: T, code: i32) -> i32 {
        if self.json {
            let r = Report {
                command: command.to_string(),
                inputs,
                outcome,
                exit_code: code,
            };
            let _ = writeln!(self.text, "{}", report::to_json(&r));
        }
        code
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

fn load_env(p: &Option<PathBuf>) -> Result<DefEnv, String> {
    match p {
        Some(p) => load_defs(&locate(p)).map_err(|e| e.to_string()),
        None => Ok(DefEnv::new()),
    }
}

fn paths(ps: &[&Path]) -> Vec<String> {
    ps.iter().map(|p| p.display().to_string()).collect()
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let json = cli.json;
    let trace = cli.trace;
    let mut o = Out { json, text: out };
    match cli.command {
        Command::Check { scripts, config } => cmd_check(&mut o, err, &scripts, &config, trace),
        Command::Saturate { common, seeds, queries, expects } => {
            cmd_saturate(&mut o, err, &common, &seeds, &queries, &expects)
        }
        Command::Prove { goal, common } => cmd_prove(&mut o, err, &goal, &common),
        Command::Truth { universe, mode } => cmd_truth(&mut o, err, &universe, mode),
        Command::Encode { formulas, env, decode, atoms } => {
            cmd_encode(&mut o, err, &formulas, &env, decode.as_deref(), &atoms)
        }
        Command::Diag { name, template, env } => cmd_diag(&mut o, err, &name, &template, &env),
    }
}

fn cmd_check(o: &mut Out<'_>, err: &mut dyn Write, scripts: &[PathBuf], cfg: &ConfigArgs, trace: bool) -> i32 {
    let located: Vec<PathBuf> = scripts.iter().map(|p| locate(p)).collect();
    let mut loaded = Vec::new();
    for p in &located {
        match load_script(p) {
            Ok(f) => loaded.push(f.script),
            Err(e) => return usage(err, e),
        }
    }
    for s in &mut loaded {
        match cfg.resolve(s.config) {
            Ok(c) => s.config = c,
            Err(e) => return usage(err, e),
        }
    }
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = loaded
            .iter()
            .map(|s| scope.spawn(move || check_script(s)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("checker thread")).collect()
    });

    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    for ((path, s), r) in scripts.iter().zip(&loaded).zip(&results) {
        let shown = path.display().to_string();
        if trace {
            for (step, seq) in s.steps.iter().zip(&r.derived) {
                o.line(format!("  {:>3}. {:<8} {seq}", step.index, step.rule.to_string()));
            }
        }
        match &r.rejection {
            None => o.line(format!("{shown}: OK {}", s.goal)),
            Some(rej) => {
                code = EXIT_FAIL;
                o.line(format!("{shown}: Rejected at step {}: {}", rej.step, rej.error));
            }
        }
        reports.push(CheckJson::new(&shown, s, r));
    }
    let inputs = Inputs {
        files: paths(&scripts.iter().map(PathBuf::as_path).collect::<Vec<_>>()),
        config: None,
    };
    o.finish("check", inputs, reports, code)
}

fn cmd_saturate(
    o: &mut Out<'_>,
    err: &mut dyn Write,
    args: &SearchArgs,
    seeds: &[String],
    queries: &[String],
    expects: &[Expect],
) -> i32 {
    if !expects.is_empty() && expects.len() != queries.len() {
        return usage(err, "give one --expect per --query, or none");
    }
    let env = match load_env(&args.env) {
        Ok(e) => e,
        Err(e) => return usage(err, e),
    };
    let config = match args.config.resolve(LogicConfig::HT) {
        Ok(c) => c,
        Err(e) => return usage(err, e),
    };
    // Without explicit seeds, every defined sentence is one.
    let mut seed_fs: Vec<Formula> = if seeds.is_empty() {
        env.names().map(Formula::name).collect()
    } else {
        Vec::new()
    };
    let mut query_fs = Vec::new();
    for (text, into_queries) in seeds.iter().map(|s| (s, false)).chain(queries.iter().map(|q| (q, true))) {
        match env.parse_formula(text) {
            Ok(f) => {
                if into_queries {
                    query_fs.push(f.clone());
                }
                seed_fs.push(f);
            }
            Err(e) => return usage(err, format!("`{text}`: {e}")),
        }
    }
    let b = args.bounds();
    let u = build_universe(&seed_fs, &env, &b);
    let r = saturate(&u, &config, &env, &b);

    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for (i, (text, f)) in queries.iter().zip(&query_fs).enumerate() {
        let present = r.contains(f);
        let expected = expects.get(i).map(|e| *e == Expect::Present);
        if expected.is_some_and(|want| want != present) {
            code = EXIT_FAIL;
        }
        let verdict = if present { "derived" } else { "not derivable within bounds" };
        let mark = match expected {
            Some(want) if want != present => "  (unexpected)",
            _ => "",
        };
        o.line(format!("{text}: {verdict}{mark}"));
        rows.push((text.clone(), expected, present));
    }
    o.line(format!(
        "universe {} formulas, derived {}, rounds {}, {}",
        u.len(),
        r.len(),
        r.rounds_used(),
        if r.saturated() { "saturated" } else { "iteration bound reached" }
    ));
    let inputs = Inputs {
        files: args.env.iter().map(|p| p.display().to_string()).collect(),
        config: Some(ConfigJson::from(config)),
    };
    o.finish("saturate", inputs, report::SaturateJson::new(&r, &rows), code)
}

fn cmd_prove(o: &mut Out<'_>, err: &mut dyn Write, goal: &str, args: &SearchArgs) -> i32 {
    let env = match load_env(&args.env) {
        Ok(e) => e,
        Err(e) => return usage(err, e),
    };
    let config = match args.config.resolve(LogicConfig::HT) {
        Ok(c) => c,
        Err(e) => return usage(err, e),
    };
    let g = match env.parse_formula(goal) {
        Ok(f) => f,
        Err(e) => return usage(err, format!("`{goal}`: {e}")),
    };
    let found = prove_bounded(&g, &config, &env, &args.bounds());
    let (status, script, code) = match &found {
        Some(s) => ("found", Some(write_script(s)), EXIT_OK),
        None => ("not-derivable-within-bounds", None, EXIT_FAIL),
    };
    match &script {
        Some(text) => o.line(text.trim_end()),
        None => o.line(format!("{g}: not derivable within bounds")),
    }
    let inputs = Inputs {
        files: args.env.iter().map(|p| p.display().to_string()).collect(),
        config: Some(config.into()),
    };
    let outcome = ProveJson { goal: g.to_string(), status, script };
    o.finish("prove", inputs, outcome, code)
}

fn cmd_truth(o: &mut Out<'_>, err: &mut dyn Write, path: &Path, mode: Mode) -> i32 {
    let path = locate(path);
    let u = match load_universe(&path) {
        Ok(u) => u,
        Err(e) => return usage(err, e),
    };
    if let Err(e) = u.validate() {
        return usage(err, format!("{}: {e}", path.display()));
    }
    let tarski = tarski_levels(&u);
    let inputs = Inputs {
        files: vec![path.display().to_string()],
        config: None,
    };
    let level = |n: &str| match tarski.get(n).copied().flatten() {
        Some(e) => e.level.to_string(),
        None => "null".into(),
    };
    match mode {
        Mode::Kripke => {
            let stages = kripke_stages(&u);
            let table = report::kripke_json(&u, &stages, &tarski);
            for (name, e) in &table {
                let g = match e.stage {
                    Some(k) => format!("grounded at stage {k}"),
                    None => "ungrounded".into(),
                };
                o.line(format!("{name}: {} {g}, tarski level {}", e.value, level(name)));
            }
            o.finish("truth", inputs, table, EXIT_OK)
        }
        Mode::Tarski => {
            let table = report::tarski_json(&tarski);
            for (name, e) in &table {
                o.line(format!("{name}: level {} value {}", level(name), e.value.unwrap_or("null")));
            }
            o.finish("truth", inputs, table, EXIT_OK)
        }
    }
}

fn cmd_encode(
    o: &mut Out<'_>,
    err: &mut dyn Write,
    formulas: &[String],
    env: &Option<PathBuf>,
    decode: Option<&str>,
    atoms: &[String],
) -> i32 {
    let env = match load_env(env) {
        Ok(e) => e,
        Err(e) => return usage(err, e),
    };
    let inputs = Inputs {
        files: Vec::new(),
        config: None,
    };
    if let Some(text) = decode {
        let code: GodelCode = match text.parse() {
            Ok(c) => c,
            Err(_) => return usage(err, format!("`{text}` is not a natural number")),
        };
        let codec = Codec::new(atoms, env.names());
        return match codec.decode(&code) {
            Ok(f) => {
                o.line(f.to_string());
                let row = CodeJson { formula: f.to_string(), code: code.to_string() };
                o.finish("encode", inputs, vec![row], EXIT_OK)
            }
            Err(e) => usage(err, e),
        };
    }
    let mut parsed = Vec::new();
    for text in formulas {
        match env.parse_formula(text) {
            Ok(f) => parsed.push(f),
            Err(e) => return usage(err, format!("`{text}`: {e}")),
        }
    }
    let codec = if atoms.is_empty() {
        Codec::for_formulas(&parsed, &env)
    } else {
        Codec::new(atoms, env.names())
    };
    let mut rows = Vec::new();
    for f in &parsed {
        match codec.encode(f) {
            Ok(c) => {
                o.line(format!("{f}\t{c}"));
                rows.push(CodeJson { formula: f.to_string(), code: c.to_string() });
            }
            Err(e) => return usage(err, e),
        }
    }
    o.finish("encode", inputs, rows, EXIT_OK)
}

fn cmd_diag(o: &mut Out<'_>, err: &mut dyn Write, name: &str, template: &str, env: &Option<PathBuf>) -> i32 {
    let env = match load_env(env) {
        Ok(e) => e,
        Err(e) => return usage(err, e),
    };
    let t = match Template::parse(template, &env, Some(name)) {
        Ok(t) => t,
        Err(e) => return usage(err, e),
    };
    let out_env = match diagonalize(name, &t, &env) {
        Ok(e) => e,
        Err(e) => return usage(err, e),
    };
    let body: &Formula = out_env.get(name).expect("just bound");
    let me = Formula::name(name);
    let unfolded = unfold_once(&me, &out_env, name).expect("bound");
    let fixed = unfolded == t.apply(&me) && defeq(&me, body, &out_env, 1);
    o.line(def_line_for(name, body));
    let outcome = DiagJson {
        name: name.to_string(),
        body: body.to_string(),
        unfolds_to_template: fixed,
    };
    let inputs = Inputs {
        files: Vec::new(),
        config: None,
    };
    o.finish("diag", inputs, outcome, EXIT_OK)
}

/// Entry point for the binary: parses `std::env::args` and runs.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}
