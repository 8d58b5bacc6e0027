//! The `cremona` command line: JSON in, JSON out.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cremona_core::action::{
    self, invariant_rank, is_pair_minimal, is_triple_minimal, lefschetz_check, twist_parity_check, twisted_fibers,
    ActionGroup, LatticeIsometry, ORDER_CAP,
};
use cremona_core::birmap::{self, compose, degree_sequence};
use cremona_core::lattice::{
    conic_bundle_from_fiber, conic_bundle_structures, enumerate_sections, formal_sections, negative_curves,
    ConicBundleStructure, SurfaceModel,
};
use cremona_core::{DivisorClass, ProjMap};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{error_kind, Result, VerifierError};
use crate::fixtures::Fixtures;
use crate::registry;
use crate::schema::{self, BundleJson, ClassJson, CurveJson, FixedLocusJson, IsometryJson, MapJson, ModelJson};

#[derive(Debug, Parser)]
#[command(name = "cremona", version, about = "Exact checks for finite groups of plane birational maps")]
pub struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    /// Largest conductor of cyclotomic scalars accepted.
    #[arg(long, global = true, value_name = "N")]
    pub conductor_cap: Option<u32>,
    /// Fixture root; overrides the CREMONA_FIXTURES variable.
    #[arg(long, global = true, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the checks registered under one lemma id.
    Lemma { id: String },
    /// List the registered lemma ids.
    Lemmas,
    /// Run every registered lemma.
    All,
    /// Compose maps: `{"maps": [f1, f2, ...]}` gives f1∘f2∘...
    Compose { input: Option<PathBuf> },
    /// Degrees of the first N iterates of `{"map": f}`.
    Degseq {
        #[arg(long)]
        n: u32,
        input: Option<PathBuf>,
    },
    /// Finite group generated by `maps` or by `isometries`.
    Closure {
        #[arg(long, default_value_t = 256)]
        cap: usize,
        input: Option<PathBuf>,
    },
    /// Negative curves of `model`.
    Curves { input: Option<PathBuf> },
    /// Conic bundle structures of `model`.
    Bundles { input: Option<PathBuf> },
    /// (-n)-sections of the conic bundle with fiber class F.
    Sections {
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: i64,
        input: Option<PathBuf>,
    },
    /// Rank of the invariant lattice of the group generated by `isometries`.
    Rank { input: Option<PathBuf> },
    /// Orbits on the negative curves, with divisibility checks in invariant rank 1.
    Orbits { input: Option<PathBuf> },
    /// Whether the group admits no equivariant contraction.
    MinimalPair { input: Option<PathBuf> },
    /// Whether every singular fiber of `fiber` is twisted by some element.
    MinimalTriple { input: Option<PathBuf> },
    /// Fibers twisted by `isometry`; with `base_order`, the parity relations.
    Twists { input: Option<PathBuf> },
    /// Trace of `isometry` against `fixed_locus`.
    Lefschetz { input: Option<PathBuf> },
    /// Admissible eigenvalue profiles.
    Characters {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        rank: u32,
        /// Lower bound on the trace of a power, as EXPONENT=VALUE.
        #[arg(long = "bound", value_name = "E=V", value_parser = parse_bound)]
        bounds: Vec<(u32, i64)>,
    },
}

fn parse_bound(s: &str) -> std::result::Result<(u32, i64), String> {
    let (e, v) = s.split_once('=').ok_or_else(|| format!("expected E=V, got {s:?}"))?;
    let e = e.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad bound in {s:?}"))?;
    Ok((e, v))
}

/// Input document shared by the analysis commands; each uses only some fields.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub model: Option<ModelJson>,
    pub map: Option<MapJson>,
    pub maps: Option<Vec<MapJson>>,
    pub isometry: Option<IsometryJson>,
    pub isometries: Option<Vec<IsometryJson>>,
    pub fiber: Option<ClassJson>,
    pub base_order: Option<u32>,
    pub fixed_locus: Option<FixedLocusJson>,
}

fn need<'a, T>(v: &'a Option<T>, field: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| VerifierError::usage(format!("input needs a \"{field}\" field")))
}

impl Request {
    fn model(&self) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
        let m = need(&self.model, "model")?.to_model()?;
        let cs = negative_curves(&m)?;
        Ok((m, cs))
    }

    fn rank(&self) -> Option<usize> {
        self.model.as_ref().map(|m| m.rank)
    }

    fn isometries(&self, curves: Option<&[DivisorClass]>) -> Result<Vec<LatticeIsometry>> {
        let v = need(&self.isometries, "isometries")?;
        if v.is_empty() {
            return Err(VerifierError::usage("\"isometries\" is empty"));
        }
        v.iter().map(|i| i.to_isometry(curves)).collect()
    }

    fn group(&self, curves: Option<&[DivisorClass]>) -> Result<ActionGroup> {
        Ok(action::closure(&self.isometries(curves)?, ORDER_CAP)?)
    }

    fn bundle(&self, curves: &[DivisorClass]) -> Result<ConicBundleStructure> {
        let r = self.rank().unwrap_or(0);
        let f = need(&self.fiber, "fiber")?.to_class(r)?;
        Ok(conic_bundle_from_fiber(curves, &f)?)
    }
}

/// A command's result: JSON, a text rendering, and whether its checks held.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Request> {
    let (text, name) = match path {
        Some(p) if p.as_os_str() != "-" => (
            std::fs::read_to_string(p).map_err(|source| VerifierError::Io { path: p.display().to_string(), source })?,
            p.display().to_string(),
        ),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|source| VerifierError::Io { path: "<stdin>".into(), source })?;
            (s, "<stdin>".to_string())
        }
    };
    serde_json::from_str(&text).map_err(|source| VerifierError::Json { path: name, source })
}

fn labels(cs: &[DivisorClass], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| cs[i].label()).collect()
}

fn curve_table(cs: &[DivisorClass]) -> String {
    cs.iter().map(|c| format!("{:>4}  {}\n", c.self_intersection(), c.label())).collect()
}

fn fixtures(cli: &Cli) -> Result<Fixtures> {
    match &cli.fixtures {
        Some(p) => Fixtures::open(p),
        None => Fixtures::open_default(),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output> {
    Ok(match &cli.command {
        Command::Lemma { id } => {
            registry::find(id)?;
            let rep = registry::run_lemma(&fixtures(cli)?, id)?;
            Output { json: serde_json::to_value(&rep).unwrap(), text: rep.to_text(), ok: rep.pass }
        }
        Command::All => {
            let rep = registry::run_all(&fixtures(cli)?);
            Output { json: serde_json::to_value(&rep).unwrap(), text: rep.to_text(), ok: rep.pass }
        }
        Command::Lemmas => {
            let list = registry::list_lemmas();
            let width = list.iter().map(|l| l.0.len()).max().unwrap_or(0);
            Output::new(
                json!({ "lemmas": list.iter().map(|(id, s)| json!({ "id": id, "summary": s })).collect::<Vec<_>>() }),
                list.iter().map(|(id, s)| format!("{id:width$}  {s}\n")).collect(),
            )
        }
        Command::Compose { input } => {
            let req = read_input(input, stdin)?;
            let maps = need(&req.maps, "maps")?
                .iter()
                .map(schema::map)
                .collect::<Result<Vec<ProjMap>>>()?;
            let mut it = maps.iter().rev();
            let first = it.next().ok_or_else(|| VerifierError::usage("\"maps\" is empty"))?.clone();
            let out = it.try_fold(first, |acc, f| compose(f, &acc))?;
            Output::new(json!({ "map": schema::map_json(&out), "degree": out.degree() }), format!("{out}\ndegree {}\n", out.degree()))
        }
        Command::Degseq { n, input } => {
            let req = read_input(input, stdin)?;
            let f = schema::map(need(&req.map, "map")?)?;
            let degs = degree_sequence(&f, *n)?;
            Output::new(json!({ "degrees": degs }), format!("{degs:?}\n"))
        }
        Command::Closure { cap, input } => {
            let req = read_input(input, stdin)?;
            if let Some(maps) = &req.maps {
                let gens = maps.iter().map(schema::map).collect::<Result<Vec<_>>>()?;
                let g = birmap::closure(&gens, *cap)?;
                let elems: Vec<Value> = (0..g.order())
                    .map(|i| json!({ "map": schema::map_json(&g.elements[i]), "word": g.words[i], "order": g.element_order(i) }))
                    .collect();
                let text = (0..g.order())
                    .map(|i| format!("{:>3}  {:?}  {}\n", g.element_order(i), g.words[i], g.elements[i]))
                    .collect::<String>();
                Output::new(
                    json!({ "order": g.order(), "abelian": g.is_abelian(), "elements": elems }),
                    format!("order {}\n{text}", g.order()),
                )
            } else {
                let curves = match &req.model { Some(_) => Some(req.model()?.1), None => None };
                let gens = req.isometries(curves.as_deref())?;
                let g = action::closure(&gens, *cap)?;
                let elems: Vec<Value> = (0..g.order())
                    .map(|i| {
                        json!({ "matrix": g.elements[i].matrix(), "word": g.words[i], "order": g.element_order(i), "trace": g.elements[i].trace() })
                    })
                    .collect();
                let text = (0..g.order())
                    .map(|i| format!("{:>3}  trace {:>3}  {:?}\n", g.element_order(i), g.elements[i].trace(), g.words[i]))
                    .collect::<String>();
                Output::new(
                    json!({ "order": g.order(), "abelian": g.is_abelian(), "elements": elems }),
                    format!("order {}\n{text}", g.order()),
                )
            }
        }
        Command::Curves { input } => {
            let (_, cs) = read_input(input, stdin)?.model()?;
            Output::new(json!({ "curves": cs.iter().map(CurveJson::new).collect::<Vec<_>>() }), curve_table(&cs))
        }
        Command::Bundles { input } => {
            let req = read_input(input, stdin)?;
            let (m, cs) = req.model()?;
            let cbs = conic_bundle_structures(&m)?;
            let text = cbs
                .iter()
                .map(|cb| {
                    let parts: Vec<String> =
                        cb.singular_fibers.iter().map(|&(i, j)| format!("{}+{}", cs[i].label(), cs[j].label())).collect();
                    format!("{}: {}\n", cb.fiber.label(), parts.join(", "))
                })
                .collect();
            Output::new(json!({ "bundles": cbs.iter().map(|cb| BundleJson::new(cb, &cs)).collect::<Vec<_>>() }), text)
        }
        Command::Sections { f, n, input } => {
            let req = read_input(input, stdin)?;
            let (m, cs) = req.model()?;
            let fiber = DivisorClass::parse(f, m.rank())?;
            let cb = conic_bundle_from_fiber(&cs, &fiber)?;
            let formal = formal_sections(&cs, &cb, *n)?;
            let found = enumerate_sections(&cs, &cb, *n)?;
            Output::new(
                json!({
                    "fiber": CurveJson::new(&fiber),
                    "n": n,
                    "formal": formal.iter().map(CurveJson::new).collect::<Vec<_>>(),
                    "sections": found.iter().map(CurveJson::new).collect::<Vec<_>>(),
                }),
                format!(
                    "formal: {}\nsections: {}\n",
                    formal.iter().map(DivisorClass::label).collect::<Vec<_>>().join(", "),
                    found.iter().map(DivisorClass::label).collect::<Vec<_>>().join(", ")
                ),
            )
        }
        Command::Rank { input } => {
            let req = read_input(input, stdin)?;
            let curves = match &req.model { Some(_) => Some(req.model()?.1), None => None };
            let g = req.group(curves.as_deref())?;
            let r = invariant_rank(&g);
            Output::new(json!({ "order": g.order(), "invariant_rank": r }), format!("order {}\ninvariant rank {r}\n", g.order()))
        }
        Command::Orbits { input } => {
            let req = read_input(input, stdin)?;
            let (_, cs) = req.model()?;
            let g = req.group(Some(&cs))?;
            let rep = action::orbits(&g, &cs)?;
            let checks = rep.checks.as_ref().map(|v| {
                v.iter()
                    .map(|c| json!({ "size": c.size, "size_divisible": c.size_divisible, "multiple_of_k": c.multiple_of_k }))
                    .collect::<Vec<_>>()
            });
            let orbits: Vec<Vec<String>> = rep.orbits.iter().map(|o| labels(&cs, o)).collect();
            let text = format!(
                "order {}\ninvariant rank {}\n{}",
                g.order(),
                rep.invariant_rank,
                orbits.iter().map(|o| format!("{:>3}  {}\n", o.len(), o.join(" "))).collect::<String>()
            );
            Output {
                json: json!({ "order": g.order(), "invariant_rank": rep.invariant_rank, "orbits": orbits, "checks": checks, "holds": rep.holds() }),
                text,
                ok: rep.holds(),
            }
        }
        Command::MinimalPair { input } => {
            let req = read_input(input, stdin)?;
            let (_, cs) = req.model()?;
            let g = req.group(Some(&cs))?;
            let pm = is_pair_minimal(&g, &cs)?;
            let witness = pm.witness.as_ref().map(|w| labels(&cs, w));
            let text = match &witness {
                None => "minimal\n".to_string(),
                Some(w) => format!("not minimal: contract {}\n", w.join(" ")),
            };
            Output::new(json!({ "minimal": pm.minimal, "witness": witness }), text)
        }
        Command::MinimalTriple { input } => {
            let req = read_input(input, stdin)?;
            let (_, cs) = req.model()?;
            let g = req.group(Some(&cs))?;
            let cb = req.bundle(&cs)?;
            let mut hit = vec![false; cb.singular_fibers.len()];
            for m in &g.elements {
                for i in twisted_fibers(m, &cb, &cs) {
                    hit[i] = true;
                }
            }
            let untwisted: Vec<[String; 2]> = cb
                .singular_fibers
                .iter()
                .zip(&hit)
                .filter(|(_, &h)| !h)
                .map(|(&(i, j), _)| [cs[i].label(), cs[j].label()])
                .collect();
            let minimal = is_triple_minimal(&g, &cb, &cs);
            Output::new(
                json!({ "minimal": minimal, "untwisted": untwisted }),
                if minimal { "minimal\n".to_string() } else { format!("not minimal: untwisted {untwisted:?}\n") },
            )
        }
        Command::Twists { input } => {
            let req = read_input(input, stdin)?;
            let (_, cs) = req.model()?;
            let m = need(&req.isometry, "isometry")?.to_isometry(Some(&cs))?;
            let cb = req.bundle(&cs)?;
            let twisted: Vec<[String; 2]> = twisted_fibers(&m, &cb, &cs)
                .into_iter()
                .map(|k| {
                    let (i, j) = cb.singular_fibers[k];
                    [cs[i].label(), cs[j].label()]
                })
                .collect();
            let mut json = json!({ "twisted": twisted, "fiber_permutation": action::fiber_permutation(&m, &cb, &cs) });
            let mut text = format!("twisted: {twisted:?}\n");
            let mut ok = true;
            if let Some(n) = req.base_order {
                let t = twist_parity_check(&m, &cb, &cs, n)?;
                json["parity"] = json!({
                    "n": t.n, "r": t.r, "two_k": t.two_k, "case": t.case, "divides": t.divides,
                    "parity": t.parity, "case_conditions": t.case_conditions, "consistent": t.consistent,
                });
                text.push_str(&format!("case {}  r {}  2k {}  consistent {}\n", t.case, t.r, t.two_k, t.consistent));
                ok = t.consistent;
            }
            Output { json, text, ok }
        }
        Command::Lefschetz { input } => {
            let req = read_input(input, stdin)?;
            let curves = match &req.model { Some(_) => Some(req.model()?.1), None => None };
            let m = need(&req.isometry, "isometry")?.to_isometry(curves.as_deref())?;
            let fix = need(&req.fixed_locus, "fixed_locus")?.to_locus();
            let rep = lefschetz_check(&m, &fix)?;
            Output {
                json: json!({ "order": rep.order, "trace": rep.trace, "chi": rep.chi, "holds": rep.holds }),
                text: format!("order {}  trace {}  chi {}  holds {}\n", rep.order, rep.trace, rep.chi, rep.holds),
                ok: rep.holds,
            }
        }
        Command::Characters { order, rank, bounds } => {
            let ps = action::character_admissibility(*order, *rank, bounds)?;
            let rows: Vec<Value> = ps
                .iter()
                .map(|p| {
                    let traces: Vec<(u32, i64)> = bounds.iter().map(|&(e, _)| (e, p.trace_of_power(e))).collect();
                    json!({ "multiplicities": p.entries, "traces": traces })
                })
                .collect();
            let text = ps
                .iter()
                .map(|p| {
                    let parts: Vec<String> = p.entries.iter().map(|(d, m)| format!("d{d}:{m}")).collect();
                    format!("{}\n", parts.join(" "))
                })
                .collect();
            Output::new(json!({ "order": order, "rank": rank, "bounds": bounds, "profiles": rows }), text)
        }
    })
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    if let Some(cap) = cli.conductor_cap {
        cremona_core::scalar::set_conductor_cap(cap);
    }
    match execute(&cli, stdin) {
        Ok(out) => {
            let _ = if cli.text {
                write!(stdout, "{}", out.text)
            } else {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).unwrap())
            };
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if let (VerifierError::Core(inner), 1) = (&e, code) {
                let _ = writeln!(stdout, "{}", json!({ "error": error_kind(inner), "message": inner.to_string() }));
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}
