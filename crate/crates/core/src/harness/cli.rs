//! `cohinv` command line. Exit codes: 0 success, 1 negative verdict or
//! failed property, 2 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::collision::collision_search_with_stats;
use super::{parse_manifest, run_suite, SuiteReport, MANIFEST};
use crate::arith::SquareClass;
use crate::composition::Pfister;
use crate::error::{Error, Result};
use crate::forms::{diagonalize, QuadraticForm};
use crate::jordan::ReducedJordanAlgebra;
use crate::serial::{classes_to_json, gram_from_json, invariants_to_json, parse_json, ToJson};

#[derive(Parser, Debug)]
#[command(
    name = "cohinv",
    version,
    about = "Mod-2 cohomological invariants of quadratic forms and reduced Jordan algebras over Q"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Total Stiefel-Whitney class of a diagonal form, e.g. `[-1,-1,-1]`.
    Sw {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Classical invariants; with two forms, also the isometry verdict.
    Classify {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        other: Option<String>,
        /// Read the first argument as a symmetric Gram matrix.
        #[arg(long)]
        gram: bool,
    },
    /// Expansion and e_r of the Pfister form on the given slots, e.g. `[-1,-1]`.
    Pfister {
        #[arg(allow_hyphen_values = true)]
        mus: String,
    },
    /// Reduced Jordan algebras given as `{"r":2,"mu":[-1,-1],"q":[1,1,1]}`.
    Jordan {
        #[command(subcommand)]
        cmd: JordanCmd,
    },
    /// Run a verification suite, or every suite in the manifest.
    Verify {
        suite: Option<String>,
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override a size parameter, `key=value`; repeatable.
        #[arg(long = "set", value_parser = parse_kv)]
        set: Vec<(String, u64)>,
        /// Manifest for `--all` (defaults to the built-in one).
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// List suites with their default parameters.
        #[arg(long, conflicts_with_all = ["suite", "all"])]
        list: bool,
    },
    /// Search for non-isomorphic algebras with equal v-invariants.
    Mine {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
enum JordanCmd {
    /// v_0, …, v_m.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        algebra: String,
    },
    Isomorphic {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Trace form by formula; `--oracle` also computes it from elements.
    Trace {
        #[arg(allow_hyphen_values = true)]
        algebra: String,
        #[arg(long)]
        oracle: bool,
    },
}

fn parse_kv(s: &str) -> std::result::Result<(String, u64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v
        .parse()
        .map_err(|_| format!("`{v}` is not a non-negative integer"))?;
    Ok((k.to_string(), v))
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    /// Writes `value` in JSON mode, otherwise the human lines.
    fn emit(&mut self, value: Value, human: impl FnOnce(&mut Self)) {
        if self.json {
            self.line(value.to_string());
        } else {
            human(self);
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut o = Output {
        out,
        json: cli.json,
    };
    match dispatch(cli.cmd, &mut o) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn ok_code(verdict: bool) -> i32 {
    if verdict {
        0
    } else {
        1
    }
}

fn dispatch(cmd: Cmd, o: &mut Output) -> Result<i32> {
    match cmd {
        Cmd::Sw { form } => {
            let q: QuadraticForm = parse_json(&form, "form")?;
            let w = q.total_sw();
            o.emit(
                json!({"form": q.to_json(), "sw": classes_to_json(&w)}),
                |o| {
                    for (i, c) in w.iter().enumerate() {
                        o.line(format!("w_{i} = {}", c.to_json()));
                    }
                },
            );
            Ok(0)
        }
        Cmd::Classify { form, other, gram } => {
            let q = if gram {
                let g: Value = serde_json::from_str(&form)
                    .map_err(|e| Error::parse("form", format!("invalid JSON: {e}")))?;
                diagonalize(&gram_from_json(&g, "form")?)
                    .map_err(|e| Error::parse("form", e.to_string()))?
            } else {
                parse_json::<QuadraticForm>(&form, "form")?
            };
            let Some(other) = other else {
                let inv = q.invariants().to_json();
                o.emit(json!({"form": q.to_json(), "invariants": inv}), |o| {
                    o.line(format!("form: {}", q.to_json()));
                    o.line(format!("invariants: {inv}"));
                });
                return Ok(0);
            };
            let p: QuadraticForm = parse_json(&other, "other")?;
            let iso = q.isometric(&p);
            let differs = q.invariants().first_difference(&p.invariants());
            let value = json!({
                "invariants": [q.invariants().to_json(), p.invariants().to_json()],
                "isometric": iso,
                "differs": differs,
            });
            o.emit(value, |o| {
                o.line(format!("invariants: {}", q.invariants().to_json()));
                o.line(format!("invariants: {}", p.invariants().to_json()));
                o.line(format!("isometric: {iso}"));
                if let Some(d) = &differs {
                    o.line(format!("differs: {d}"));
                }
            });
            Ok(ok_code(iso))
        }
        Cmd::Pfister { mus } => {
            let v: Value = serde_json::from_str(&mus)
                .map_err(|e| Error::parse("mus", format!("invalid JSON: {e}")))?;
            let slots = v
                .as_array()
                .ok_or_else(|| Error::parse("mus", "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, x)| crate::serial::FromJson::from_json(x, &format!("mus[{i}]")))
                .collect::<Result<Vec<SquareClass>>>()?;
            let p = Pfister::new(slots).map_err(|e| Error::parse("mus", e.to_string()))?;
            let (form, e, hyp) = (p.form(), p.e_invariant(), p.is_hyperbolic());
            o.emit(
                json!({"mu": v, "form": form.to_json(), "e": e.to_json(), "hyperbolic": hyp}),
                |o| {
                    o.line(format!("form: {}", form.to_json()));
                    o.line(format!("e_{} = {}", p.rank(), e.to_json()));
                    o.line(format!("hyperbolic: {hyp}"));
                },
            );
            Ok(0)
        }
        Cmd::Jordan { cmd } => jordan(cmd, o),
        Cmd::Verify {
            suite,
            all,
            seed,
            set,
            manifest,
            list,
        } => verify(suite, all, seed, set, manifest, list, o),
        Cmd::Mine { r, n, bound } => {
            let s = collision_search_with_stats(r, n, bound)?;
            let certs: Vec<Value> = s.certificates.iter().map(|c| c.to_json()).collect();
            o.emit(
                json!({
                    "r": r, "n": n, "bound": bound,
                    "forms": s.forms_searched, "groups": s.groups, "classes": s.classes,
                    "certificates": certs,
                }),
                |o| {
                    o.line(format!(
                        "searched {} forms: {} isomorphism classes, {} invariant vectors, {} certificates",
                        s.forms_searched,
                        s.classes,
                        s.groups,
                        certs.len()
                    ));
                    for c in &certs {
                        o.line(c.to_string());
                    }
                },
            );
            Ok(0)
        }
    }
}

fn jordan(cmd: JordanCmd, o: &mut Output) -> Result<i32> {
    match cmd {
        JordanCmd::Invariants { algebra } => {
            let j: ReducedJordanAlgebra = parse_json(&algebra, "algebra")?;
            let v = j.v_invariants();
            o.emit(invariants_to_json(&j), |o| {
                for (i, (c, d)) in v.iter().zip(j.v_degrees()).enumerate() {
                    o.line(format!("v_{i} (degree {d}) = {}", c.to_json()));
                }
            });
            Ok(0)
        }
        JordanCmd::Isomorphic { first, second } => {
            let a: ReducedJordanAlgebra = parse_json(&first, "first")?;
            let b: ReducedJordanAlgebra = parse_json(&second, "second")?;
            if a.r() != b.r() {
                return Err(Error::parse(
                    "second.r",
                    format!("r = {} but first has r = {}", b.r(), a.r()),
                ));
            }
            if a.n() != b.n() {
                return Err(Error::parse(
                    "second.q",
                    format!("degree {} but first has degree {}", b.n(), a.n()),
                ));
            }
            let iso = a.is_isomorphic(&b)?;
            let same_v = a.v_invariants() == b.v_invariants();
            o.emit(
                json!({"isomorphic": iso, "equal_invariants": same_v}),
                |o| {
                    o.line(format!("isomorphic: {iso}"));
                    o.line(format!("equal invariants: {same_v}"));
                },
            );
            Ok(ok_code(iso))
        }
        JordanCmd::Trace { algebra, oracle } => {
            let j: ReducedJordanAlgebra = parse_json(&algebra, "algebra")?;
            let formula = j.trace_form_formula();
            if !oracle {
                o.emit(json!({"formula": formula.to_json()}), |o| {
                    o.line(format!("formula: {}", formula.to_json()));
                });
                return Ok(0);
            }
            let direct = diagonalize(&j.trace_gram_oracle())?;
            let agree = direct.isometric(&formula);
            o.emit(
                json!({"formula": formula.to_json(), "oracle": direct.to_json(), "isometric": agree}),
                |o| {
                    o.line(format!("formula: {}", formula.to_json()));
                    o.line(format!("oracle: {}", direct.to_json()));
                    o.line(format!("isometric: {agree}"));
                },
            );
            Ok(ok_code(agree))
        }
    }
}

fn print_report(o: &mut Output, r: &SuiteReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    o.line(format!(
        "{status} {} ({} cases, seed {}, {:.2}s)",
        r.suite,
        r.cases,
        r.seed,
        r.elapsed.as_secs_f64()
    ));
    for f in r.failures.iter().take(5) {
        o.line(format!("  case {}: {} input {}", f.case, f.reason, f.input));
    }
    if r.failures.len() > 5 {
        o.line(format!("  … {} more failures", r.failures.len() - 5));
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Option<String>,
    all: bool,
    seed: u64,
    set: Vec<(String, u64)>,
    manifest: Option<PathBuf>,
    list: bool,
    o: &mut Output,
) -> Result<i32> {
    let text = match &manifest {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::parse("manifest", format!("{}: {e}", p.display())))?,
        None => MANIFEST.to_string(),
    };
    if list {
        let entries = parse_manifest(&text)?;
        let value = Value::Array(
            entries
                .iter()
                .map(|(n, p)| json!({"name": n, "params": p, "about": super::suite_about(n)}))
                .collect(),
        );
        o.emit(value, |o| {
            for (n, p) in &entries {
                let params: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
                o.line(format!("{n} {}", params.join(" ")));
            }
        });
        return Ok(0);
    }
    let overrides: BTreeMap<String, u64> = set.into_iter().collect();
    let runs: Vec<(String, BTreeMap<String, u64>)> = if all {
        parse_manifest(&text)?
            .into_iter()
            .map(|(n, mut p)| {
                // overrides apply to the suites that take that parameter
                let known = super::default_params(&n).unwrap_or_default();
                p.extend(
                    overrides
                        .iter()
                        .filter(|(k, _)| known.contains_key(*k))
                        .map(|(k, v)| (k.clone(), *v)),
                );
                (n, p)
            })
            .collect()
    } else {
        match suite {
            Some(s) => vec![(s, overrides)],
            None => return Err(Error::parse("suite", "give a suite name or --all")),
        }
    };
    let mut reports = Vec::new();
    for (name, params) in runs {
        let report = run_suite(&name, seed, &params)?;
        if !o.json {
            print_report(o, &report);
        }
        reports.push(report);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    if o.json {
        let v = if all {
            Value::Array(reports.iter().map(SuiteReport::to_json).collect())
        } else {
            reports[0].to_json()
        };
        o.line(v.to_string());
    }
    Ok(ok_code(passed))
}
