//! Batch front end: named verifications over presentation, tensor and map files, with a
//! deterministic line-oriented report.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use diocalc::cobar::koszulness_report;
use diocalc::dioperad::{builtin, quadratic_dual, quotient_slot, underline_free_dim, OperadPair, Presentation};
use diocalc::formalgeo::{
    assemble, assemble_tf, extract_collection, mc_check, relation_check, tf_check, Coordinates, Model, Poly, TensorCollection,
};
use diocalc::minimodel::{decompose, morphism_check, CoordMap};
use diocalc::resolutions::{Resolution, ResolutionKind};

/// Largest arity window (`m+n` cap) accepted.
pub const MAX_WINDOW: usize = 7;
/// Smallest arity window accepted.
pub const MIN_WINDOW: usize = 3;
/// Largest truncation order accepted.
pub const MAX_ORDER: usize = 6;
/// Smallest truncation order accepted.
pub const MIN_ORDER: usize = 2;
/// Version written in the structured report header.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Engine(#[from] diocalc::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "diocalc", version, about = "Exact computations with dioperads and their representations")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Structured, global = true)]
    pub format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of the free and presented dioperad in one slot.
    FreeDim {
        presentation: String,
        /// Slot as `m,n`.
        #[arg(long)]
        slot: String,
    },
    /// Quadratic dual presentation.
    Dual {
        presentation: String,
        /// Write the dual presentation here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cobar cohomology against the quadratic dual, plus the reduced-tree dimension comparison.
    Koszul {
        presentation: String,
        #[arg(long, default_value_t = 5)]
        window: usize,
    },
    /// `d² = 0` on every generator of a closed-form resolution.
    ResolutionD2 {
        kind: String,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
    /// Maurer-Cartan check of a tensor file, with relation evaluation as a second verdict.
    McCheck {
        tensors: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Minimal times contractible decomposition of an odd-model structure.
    Decompose {
        tensors: PathBuf,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Write the coordinate map `F` here.
        #[arg(long)]
        map_out: Option<PathBuf>,
        /// Write `Γ_1 + Φ` on the adapted basis here, as a tensor file.
        #[arg(long)]
        normal_form_out: Option<PathBuf>,
    },
    /// Checks that a coordinate map is a morphism and a quasi-isomorphism.
    MorphismCheck { map: PathBuf, source: PathBuf, target: PathBuf },
}

/// Ordered `key=value` pairs and the overall verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<(String, String)>,
    pub passed: bool,
    /// Raw artifact printed instead of the report (the dual presentation).
    pub artifact: Option<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.to_string(), passed: true, ..Default::default() }
    }

    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string().replace('\n', " ")));
    }

    /// Records a boolean check; the job fails if any check fails.
    fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.passed &= ok;
        self.put(key, ok);
    }

    pub fn render(&self, format: Format) -> String {
        if let Some(a) = &self.artifact {
            return a.clone();
        }
        let mut s = String::new();
        match format {
            Format::Structured => {
                let _ = writeln!(s, "diocalc-report {REPORT_VERSION}");
                let _ = writeln!(s, "command={}", self.command);
                for (k, v) in &self.entries {
                    let _ = writeln!(s, "{k}={v}");
                }
                let _ = writeln!(s, "status={}", if self.passed { "pass" } else { "fail" });
            }
            Format::Text => {
                let _ = writeln!(s, "diocalc {}", self.command);
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    let _ = writeln!(s, "  {k:width$}  {v}");
                }
                let _ = writeln!(s, "{}", if self.passed { "all checks passed" } else { "some checks FAILED" });
            }
        }
        s
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

/// A presentation file, or a shipped presentation named by its file stem.
pub fn load_presentation(arg: &str) -> Result<Presentation, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Presentation::parse(&read(path)?)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    builtin(stem).map_err(|_| {
        CliError::Usage(format!("no presentation file `{arg}` and no shipped presentation `{stem}`"))
    })
}

fn check_window(window: usize) -> Result<(), CliError> {
    if !(MIN_WINDOW..=MAX_WINDOW).contains(&window) {
        return Err(CliError::Usage(format!("window {window} outside the supported range {MIN_WINDOW}..={MAX_WINDOW}")));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<(), CliError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(CliError::Usage(format!("order {order} outside the supported range {MIN_ORDER}..={MAX_ORDER}")));
    }
    Ok(())
}

fn load_tensors(path: &Path) -> Result<TensorCollection, CliError> {
    Ok(TensorCollection::parse(&read(path)?)?)
}

/// Runs one job. Artifacts requested by output flags are written before returning.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let report = match &cli.command {
        Command::FreeDim { presentation, slot } => free_dim(presentation, slot)?,
        Command::Dual { presentation, output } => dual(presentation, output.as_deref())?,
        Command::Koszul { presentation, window } => koszul(presentation, *window)?,
        Command::ResolutionD2 { kind, window } => resolution_d2(kind, *window)?,
        Command::McCheck { tensors, model, order } => mc(tensors, model, *order)?,
        Command::Decompose { tensors, order, map_out, normal_form_out } => {
            minimal_model(tensors, *order, map_out.as_deref(), normal_form_out.as_deref())?
        }
        Command::MorphismCheck { map, source, target } => morphism(map, source, target)?,
    };
    if let Some(path) = &cli.report {
        write(path, &report.render(cli.format))?;
    }
    Ok(report)
}

fn free_dim(presentation: &str, slot: &str) -> Result<Report, CliError> {
    let p = load_presentation(presentation)?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad slot `{slot}`; expected m,n")));
    let (m, n) = slot.split_once(',').ok_or_else(|| CliError::Usage(format!("bad slot `{slot}`; expected m,n")))?;
    let (m, n) = (parse(m)?, parse(n)?);
    check_window((m + n).max(MIN_WINDOW))?;
    let q = quotient_slot(&p, m, n, (m + n).saturating_sub(2))?;
    let mut r = Report::new("free-dim");
    r.put("presentation", &p.name);
    r.put("slot", format!("{m},{n}"));
    r.put("free_dim", q.free_dim());
    r.put("ideal_dim", q.ideal_dim());
    r.put("dim", q.dim());
    Ok(r)
}

fn dual(presentation: &str, output: Option<&Path>) -> Result<Report, CliError> {
    let p = load_presentation(presentation)?;
    let d = quadratic_dual(&p)?;
    let text = d.to_text();
    let mut r = Report::new("dual");
    r.put("presentation", &p.name);
    r.put("dual", &d.name);
    match output {
        Some(path) => {
            write(path, &text)?;
            r.put("output", path.display());
        }
        None => r.artifact = Some(text),
    }
    Ok(r)
}

/// Slots where the reduced-tree dimension identity is compared.
pub const UNDERLINE_SLOTS: [(usize, usize); 3] = [(1, 3), (2, 2), (3, 1)];

fn koszul(presentation: &str, window: usize) -> Result<Report, CliError> {
    check_window(window)?;
    let p = load_presentation(presentation)?;
    let k = koszulness_report(&p, window)?;
    let mut r = Report::new("koszul");
    for line in k.to_text().lines() {
        let (key, value) = line.split_once('=').expect("key=value lines");
        if key == "verdict" {
            continue;
        }
        r.put(key, value);
    }
    for s in &k.slots {
        r.passed &= s.koszul();
    }
    r.put("verdict", k.verdict());
    if window >= 4 {
        let ops = OperadPair::from_presentation(&p, 3, 2)?;
        for (i, j) in UNDERLINE_SLOTS {
            let quotient = quotient_slot(&p, i, j, i + j - 2)?.dim();
            let underline = underline_free_dim(&ops, i, j)?;
            let key = format!("underline.{i}.{j}");
            r.put(format!("{key}.quotient_dim"), quotient);
            r.put(format!("{key}.underline_dim"), underline);
            r.check(format!("{key}.equal"), quotient == underline);
        }
    }
    Ok(r)
}

fn resolution_d2(kind: &str, window: usize) -> Result<Report, CliError> {
    check_window(window)?;
    let kind = ResolutionKind::ALL
        .into_iter()
        .find(|k| k.name() == kind)
        .ok_or_else(|| CliError::Usage(format!("unknown resolution `{kind}` (expected lie1bi, tf or liebi)")))?;
    let res = Resolution::new(kind, window)?;
    let mut r = Report::new("resolution-d2");
    r.put("resolution", kind.name());
    r.put("window", window);
    let mut nonzero = Vec::new();
    let gens = res.generators();
    for &g in &gens {
        let terms = res.d_squared(g)?.len();
        let name = res.collection().deco_name(g);
        r.put(format!("d2.{name}.terms"), terms);
        if terms != 0 {
            nonzero.push(name);
        }
    }
    r.put("generators", gens.len());
    r.check("all_zero", nonzero.is_empty());
    Ok(r)
}

fn mc(path: &Path, model: &str, order: usize) -> Result<Report, CliError> {
    check_order(order)?;
    let model: Model = model.parse()?;
    let tc = load_tensors(path)?;
    if tc.model() != model {
        return Err(CliError::Usage(format!("file declares model {} but --model {model} was given", tc.model())));
    }
    let c = Coordinates::new(tc.space(), model, order);
    let mut r = Report::new("mc-check");
    r.put("model", model);
    r.put("dim", tc.dim());
    r.put("order", order);
    let geometric = if model == Model::Tf {
        let (field, tensor) = assemble_tf(&tc, &c)?;
        let rep = tf_check(&c, &field, &tensor)?;
        r.put("field_residual_terms", rep.field_residual.len());
        r.put("lie_residual_terms", rep.lie_residual.len());
        rep.passes()
    } else {
        let rep = mc_check(&c, &assemble(&tc, &c)?)?;
        r.put("residual_terms", rep.residual.len());
        r.put("residual_lowest_order", rep.residual.min_order().map_or("none".to_string(), |o| o.to_string()));
        rep.is_solution
    };
    r.check("is_solution", geometric);
    let rel = relation_check(&tc.truncated(order), order)?;
    r.put("relations_checked", rel.checked);
    r.put("relations_failing", rel.failures.iter().map(|(g, _)| g.as_str()).collect::<Vec<_>>().join(","));
    r.check("relations_hold", rel.holds());
    r.check("verdicts_agree", geometric == rel.holds());
    Ok(r)
}

fn minimal_model(path: &Path, order: usize, map_out: Option<&Path>, normal_out: Option<&Path>) -> Result<Report, CliError> {
    check_order(order)?;
    let tc = load_tensors(path)?;
    if tc.model() != Model::Lie1Bi {
        return Err(CliError::Usage("decompose needs a lie1bi tensor file".into()));
    }
    let c = Coordinates::new(tc.space(), Model::Lie1Bi, order);
    let gamma = assemble(&tc, &c)?;
    let dec = decompose(&c, &gamma)?;
    let mut r = Report::new("decompose");
    r.put("dim", c.dim());
    r.put("order", order);
    r.put("splitting.harmonic_dim", dec.splitting.harmonic_dim());
    r.put("splitting.boundary_dim", dec.splitting.boundary_dim());
    r.put("adapted_basis", dec.splitting.adapted_space().basis().iter().map(|(l, d)| format!("{l}:{d}")).collect::<Vec<_>>().join(" "));
    for s in &dec.stages {
        let p = format!("stage.{}", s.order);
        r.put(format!("{p}.component_terms"), s.component_terms);
        r.put(format!("{p}.removed_terms"), s.removed_terms);
        r.put(format!("{p}.gauge_terms"), s.gauge_terms);
    }
    r.put("contractible", dec.adapted.format(&dec.contractible));
    r.put("phi", dec.adapted.format(&dec.minimal));
    r.put("phi_terms", dec.minimal.len());
    for (v, img) in dec.map.images().iter().enumerate() {
        r.put(format!("map.{}", c.ring().var_name(v)), dec.adapted.format(img));
    }
    let normal = dec.normal_form();
    let check = morphism_check(&dec.map, &normal, &gamma)?;
    r.check("symplectic", check.symplectic);
    r.check("preserves_lagrangian", check.preserves_lagrangian);
    r.check("preserves_dual_lagrangian", check.preserves_dual_lagrangian);
    r.check("pulls_back", check.pulls_back);
    let (rc, phi) = dec.reduced()?;
    r.check("phi_is_solution", mc_check(&rc, &phi)?.is_solution);
    if let Some(p) = map_out {
        write(p, &dec.map.to_text())?;
    }
    if let Some(p) = normal_out {
        write(p, &extract_collection(&[&normal], &dec.adapted)?.to_text())?;
    }
    Ok(r)
}

fn function_on(tc: &TensorCollection, c: &Coordinates, role: &str) -> Result<Poly, CliError> {
    if tc.model() != c.model() || tc.space().degrees() != c.space().degrees() {
        return Err(CliError::Usage(format!("{role} tensor file does not live on the map's {role} space")));
    }
    Ok(assemble(tc, &Coordinates::new(tc.space(), c.model(), c.order()))?)
}

fn morphism(map: &Path, source: &Path, target: &Path) -> Result<Report, CliError> {
    let f = CoordMap::parse(&read(map)?)?;
    check_order(f.order())?;
    let gs = function_on(&load_tensors(source)?, f.source(), "source")?;
    let gt = function_on(&load_tensors(target)?, f.target(), "target")?;
    let rep = morphism_check(&f, &gs, &gt)?;
    let mut r = Report::new("morphism-check");
    r.put("order", f.order());
    r.put("source_dim", f.source().dim());
    r.put("target_dim", f.target().dim());
    r.check("symplectic", rep.symplectic);
    r.check("preserves_lagrangian", rep.preserves_lagrangian);
    r.check("preserves_dual_lagrangian", rep.preserves_dual_lagrangian);
    r.check("pulls_back", rep.pulls_back);
    r.put("source_cohomology", rep.source_cohomology);
    r.put("target_cohomology", rep.target_cohomology);
    r.check("quasi_isomorphism", rep.quasi_isomorphism);
    Ok(r)
}
