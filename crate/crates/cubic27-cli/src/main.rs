//! `cubic27`: JSON reports on smooth cubic surfaces over finite fields.
//!
//! Exit status: 0 on success, 2 on invalid input, 3 on internal failure.

mod surface_file;

use clap::{Args, Parser, Subcommand};
use cubic27::acceptance::Suite;
use cubic27::autgrp::{compute_aut, AutGroup, ScanMode, ScanOptions};
use cubic27::dp4;
use cubic27::eckardt::{eckardt_points, EckardtGeometry};
use cubic27::forms::{generate, spec_for, strata_poset, FormsError};
use cubic27::gf::{Fe, Field};
use cubic27::lines::{find_lines, LineConfiguration, LinesError};
use cubic27::surface::{canonical_point, critical_locus};
use cubic27::weyl::{self, CLASSES};
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::process::ExitCode;
use surface_file::{element_arg, element_json, field_from, field_json, InputError};

#[derive(Parser)]
#[command(name = "cubic27", version, about = "Lines, Eckardt points and automorphisms of cubic surfaces over finite fields")]
struct Cli {
    /// Largest extension degree searched for the 27 lines.
    #[arg(long, global = true, default_value_t = 12)]
    max_ext: usize,
    /// Test every W(E6) candidate instead of prefiltering by class invariants.
    #[arg(long, global = true)]
    full_scan: bool,
    /// Run the candidate scan on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SurfaceArg {
    /// Surface file (JSON); `-` reads standard input.
    file: String,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// The 27 lines, their incidence and the tritangent trios.
    Lines(SurfaceArg),
    /// Eckardt points, trihedral lines and the configuration type.
    Eckardt(SurfaceArg),
    /// The automorphism group.
    Aut(SurfaceArg),
    /// Stratum, group order and characteristic-specific invariants.
    Classify(SurfaceArg),
    /// Print a surface file for a stratum's normal form.
    NormalForm {
        stratum: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Parameters as residue lists, e.g. `3` or `1,0,1`.
        params: Vec<String>,
        #[arg(long)]
        label: Option<String>,
    },
    /// Automorphisms of the quartic del Pezzo surface with parameters a, b.
    Dp4 {
        #[command(flatten)]
        field: FieldArgs,
        a: String,
        b: String,
    },
    /// Static tables of W(E6).
    Weyl {
        #[command(subcommand)]
        what: WeylCmd,
    },
    /// Specialization arrows between strata in characteristic p (0 for the generic picture).
    StrataPoset { p: u32 },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        ids: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// The 25 conjugacy classes.
    Classes,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

fn lines_failure(e: LinesError) -> Failure {
    match e {
        LinesError::BadConfiguration => Failure::Internal(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn forms_failure(e: FormsError) -> Failure {
    Failure::Input(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn read_surface(path: &str) -> Result<surface_file::SurfaceFile, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
    };
    Ok(surface_file::parse(&text)?)
}

fn point_json(f: &Field, x: &[Fe]) -> Value {
    Value::Array(x.iter().map(|a| element_json(f, a)).collect())
}

fn labels(ix: &[usize]) -> Value {
    json!(ix.iter().map(|&i| weyl::label(i)).collect::<Vec<_>>())
}

fn lines_report(cfg: &LineConfiguration) -> Value {
    let f = &cfg.field;
    let lines: Vec<Value> = cfg
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| json!({ "label": weyl::label(i), "plucker": point_json(f, &l.pl) }))
        .collect();
    let incidence: Vec<String> =
        cfg.incidence.iter().map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
    let trios: Vec<Value> = cfg.trios().iter().map(|t| labels(t)).collect();
    json!({ "field": field_json(f), "lines": lines, "incidence": incidence, "trios": trios })
}

fn eckardt_report(cfg: &LineConfiguration, g: &EckardtGeometry) -> Value {
    let f = &cfg.field;
    let trios = cfg.trios();
    let points: Vec<Value> =
        g.points.iter().map(|(x, t)| json!({ "point": point_json(f, x), "lines": labels(&trios[*t]) })).collect();
    let trihedral: Vec<Value> =
        g.trihedral.iter().map(|(l, ix)| json!({ "plucker": point_json(f, &l.pl), "points": ix })).collect();
    json!({
        "field": field_json(f),
        "configuration": g.tag(),
        "span_dim": g.span_dim,
        "points": points,
        "trihedral": trihedral,
        "exceptional": labels(&g.exceptional),
        "per_line": g.per_line,
    })
}

fn aut_report(a: &AutGroup) -> Value {
    let f = &a.field;
    let generators: Vec<Value> = a
        .generators
        .iter()
        .map(|&i| {
            let e = &a.elements[i];
            json!({
                "class": e.class.name,
                "matrix": e.matrix.m.iter().map(|r| point_json(f, r)).collect::<Vec<_>>(),
                "perm": e.perm,
            })
        })
        .collect();
    json!({
        "field": field_json(f),
        "order": a.order,
        "profile": a.profile_map(),
        "generators": generators,
        "stratum": a.stratum.display,
        "reflection_index": a.reflection_index,
        "configuration": a.eckardt.tag(),
    })
}

fn scan_options(cli: &Cli) -> ScanOptions {
    ScanOptions {
        prefilter: !cli.full_scan,
        mode: if cli.sequential { ScanMode::Sequential } else { ScanMode::default() },
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let opts = scan_options(cli);
    let input = std::cell::RefCell::new(None);
    let lines_of = |path: &str| -> Result<LineConfiguration, Failure> {
        let s = read_surface(path)?;
        let cfg = find_lines(&s.form, cli.max_ext).map_err(lines_failure);
        *input.borrow_mut() = Some(s);
        cfg
    };
    let mut report = match &cli.cmd {
        Cmd::Lines(s) => lines_report(&lines_of(&s.file)?),
        Cmd::Eckardt(s) => {
            let cfg = lines_of(&s.file)?;
            eckardt_report(&cfg, &eckardt_points(&cfg).map_err(internal)?)
        }
        Cmd::Aut(s) => aut_report(&compute_aut(&lines_of(&s.file)?, opts).map_err(internal)?),
        Cmd::Classify(s) => {
            let cfg = lines_of(&s.file)?;
            let a = compute_aut(&cfg, opts).map_err(internal)?;
            let form = &input.borrow().as_ref().expect("surface was read").form.clone();
            let mut v = json!({
                "stratum": a.stratum.name,
                "display": a.stratum.display,
                "order": a.order,
                "generic_order": a.stratum.generic_order,
                "configuration": a.eckardt.tag(),
                "eckardt_points": a.eckardt.points.len(),
                "reflection_index": a.reflection_index,
                "line_field": field_json(&cfg.field),
            });
            if form.field.p() == 2 {
                let c = canonical_point(form).map_err(internal)?;
                v["canonical_case"] = json!(c.case.tag());
                v["canonical_point"] = c.point.map_or(Value::Null, |x| point_json(&form.field, &x));
            }
            if form.field.p() == 3 {
                let s = critical_locus(form, cli.max_ext).map_err(internal)?;
                v["critical_multiplicities"] = json!(s.multiplicities());
            }
            v
        }
        Cmd::NormalForm { stratum, field, params, label } => {
            let f = field_from(field.p, field.k, None)?;
            spec_for(stratum, f.p()).map_err(forms_failure)?;
            let ps: Vec<Fe> = params
                .iter()
                .enumerate()
                .map(|(i, s)| element_arg(&f, s, &format!("parameter {}", i + 1)))
                .collect::<Result<_, _>>()?;
            let form = generate(&f, stratum, &ps).map_err(forms_failure)?;
            surface_file::to_json(&form, label.as_deref())
        }
        Cmd::Dp4 { field, a, b } => {
            let f = field_from(field.p, field.k, None)?;
            let (a, b) = (element_arg(&f, a, "a")?, element_arg(&f, b, "b")?);
            let aut = dp4::dp4_aut(&f, a, b).map_err(|e| Failure::Input(e.to_string()))?;
            let roots = dp4::dp4_delta_roots(&f, a, b).map_err(|e| Failure::Input(e.to_string()))?;
            let mut v = json!({
                "field": field_json(&f),
                "roots": roots.iter().map(|r| point_json(&f, &r.c)).collect::<Vec<_>>(),
                "g": aut.g_tag,
                "order": aut.order,
                "w_d5_classes": dp4::d5_classes(&aut),
            });
            if f.p() == 2 {
                let p0 = dp4::dp4_canonical_point(&f, a, b).map_err(internal)?;
                v["canonical_point"] = point_json(&f, &p0);
                v["fixed_locus"] = json!(dp4::dp4_fixed_locus_type(&f, a, b).map_err(internal)?.tag());
            }
            v
        }
        Cmd::Weyl { what: WeylCmd::Classes } => {
            let rows: Vec<Value> = CLASSES
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "order": c.order,
                        "size": c.size(),
                        "centralizer": c.centralizer,
                        "trace": c.trace,
                        "charpoly": c.charpoly_string(),
                    })
                })
                .collect();
            json!({ "classes": rows })
        }
        Cmd::StrataPoset { p } => {
            let arrows: Vec<Value> = strata_poset(*p).iter().map(|(a, b)| json!([a, b])).collect();
            json!({ "p": p, "arrows": arrows })
        }
        Cmd::Selftest { ids } => {
            let suite = Suite::new();
            let ids: Vec<usize> = if ids.is_empty() { (1..=12).collect() } else { ids.clone() };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
                return Err(Failure::Input(format!("criterion {bad} does not exist (1..=12)")));
            }
            let mut rows = vec![];
            let mut all = true;
            for id in ids {
                let o = suite.run(id);
                eprintln!("{}", o.line());
                all &= o.passed;
                let failed: Vec<Value> =
                    o.checks.iter().filter(|c| !c.ok).map(|c| json!({ "check": c.what, "detail": c.detail })).collect();
                rows.push(json!({ "id": o.id, "title": o.title, "passed": o.passed, "checks": o.checks.len(), "failed": failed }));
            }
            let v = json!({ "criteria": rows, "passed": all });
            if !all {
                println!("{}", render(&v, cli.pretty));
                return Err(Failure::Internal("acceptance suite failed".into()));
            }
            v
        }
    };
    if let Some(l) = input.into_inner().and_then(|s| s.label) {
        report["label"] = json!(l);
    }
    Ok(report)
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable report")
    } else {
        v.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe downstream is not our failure
            let _ = writeln!(out, "{}", render(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
