//! `qcoideal`: command-line front end.
//!
//! Exit codes: 0 on success or a verified check, 1 when a check fails or is
//! inconclusive, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcoideal::catalog::{self, verify_all, VerificationReport};
use qcoideal::expr::{parse_element, print_monomial, Substitution};
use qcoideal::hopf::coproduct;
use qcoideal::json::{element_to_value, tensor_to_value};
use qcoideal::leading::{self, eta_split, m_set_of, reduce_system};
use qcoideal::rcs::{character_shift_set, Character, Side};
use qcoideal::repr::{build_simple_module, onedim_flag_length, restrict_find_onedim, Matrix};
use qcoideal::subalgebra::{is_right_coideal, torus_check, CoidealReport, GeneratorSet};
use qcoideal::{Algebra, QRat, SystemKind, UElement};

#[derive(Parser)]
#[command(name = "qcoideal", version, about = "Exact computations in U_q(sl2) and U_q(sl3)")]
struct Cli {
    /// Root system of all inputs.
    #[arg(long, global = true, default_value = "A2")]
    system: SystemKind,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// JSON object mapping parameter names to scalar expressions.
    #[arg(long, global = true)]
    subs: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    E,
    F,
}

#[derive(clap::Args)]
struct GensArgs {
    /// File with a JSON list of generator expressions (or an object with a `generators` list).
    #[arg(long)]
    gens: Option<PathBuf>,
    /// Generator expressions, appended after those from --gens. Put options before these.
    #[arg(allow_hyphen_values = true)]
    exprs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the PBW normal form.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of the arguments, left to right.
    Mul {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// q-commutator xy − c·yx.
    Qcomm {
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Coproduct in PBW ⊗ PBW normal form.
    Coproduct {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split into U≥0, U≤0 and mixed parts.
    Parts {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Maximal degrees, leading terms and the M-set on one side.
    Leading {
        #[arg(long, value_enum, default_value = "e")]
        side: SideArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split by the torus twist η.
    EtaSplit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply a character shift to a generator set.
    Shift {
        /// JSON file `{word, side, values}`.
        #[arg(long)]
        character: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[command(flatten)]
        gens: GensArgs,
    },
    /// Bounded-degree right coideal check of a generator set.
    Check {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = catalog::DEFAULT_MARGIN)]
        margin: usize,
        #[command(flatten)]
        gens: GensArgs,
    },
    /// Remove mixed leading terms from a generator set.
    Reduce {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[command(flatten)]
        gens: GensArgs,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Act on the simple module L(m) of U_q(sl2).
    Repr {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        gens: GensArgs,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry ids.
    List,
    /// Verify entries; `--id` takes an exact id or a glob such as `sl3-2a-*`.
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Verify the deliberately broken variants instead.
        #[arg(long)]
        mutations: bool,
    },
}

/// Error carrying the process exit code.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

/// Result of a command: what to print and whether the check passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }
}

struct Ctx {
    system: SystemKind,
    subs: Substitution,
}

impl Ctx {
    fn parse(&self, s: &str) -> Result<UElement, Failure> {
        parse_element(self.system, s, &self.subs).map_err(|e| Failure(2, format!("{s:?}: {e}")))
    }

    fn scalar(&self, s: &str) -> Result<QRat, Failure> {
        self.parse(s)?
            .as_scalar()
            .ok_or_else(|| Failure(2, format!("{s:?} is not a scalar")))
    }

    fn gens(&self, args: &GensArgs) -> Result<GeneratorSet, Failure> {
        let mut texts = Vec::new();
        let mut name = "input".to_string();
        if let Some(path) = &args.gens {
            let v = read_json(path)?;
            let list = match &v {
                Value::Array(_) => v.clone(),
                Value::Object(o) => {
                    if let Some(Value::String(n)) = o.get("name") {
                        name = n.clone();
                    }
                    o.get("generators").cloned().unwrap_or(Value::Null)
                }
                _ => Value::Null,
            };
            let list: Vec<String> = serde_json::from_value(list)
                .map_err(|_| Failure(2, format!("{}: expected a list of expressions", path.display())))?;
            texts.extend(list);
        }
        texts.extend(args.exprs.iter().cloned());
        if texts.is_empty() {
            return Err(Failure(2, "no generators given".into()));
        }
        let gens = texts.iter().map(|t| self.parse(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSet::new(name, gens)?)
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_subs(system: SystemKind, path: Option<&Path>) -> Result<Substitution, Failure> {
    let mut subs = Substitution::new();
    let Some(path) = path else {
        return Ok(subs);
    };
    let map: BTreeMap<String, String> = serde_json::from_value(read_json(path)?)
        .map_err(|_| Failure(2, format!("{}: expected an object of strings", path.display())))?;
    for (k, v) in map {
        // the `num / den` text form first, then any scalar expression
        let c = match v.parse::<QRat>() {
            Ok(c) => c,
            Err(_) => parse_element(system, &v, &Substitution::new())
                .map_err(|e| Failure(2, format!("{k}: {e}")))?
                .as_scalar()
                .ok_or_else(|| Failure(2, format!("{k}: not a scalar")))?,
        };
        subs.insert(k, c);
    }
    Ok(subs)
}

fn element_json(x: &UElement) -> Value {
    json!({ "text": x.to_string(), "terms": element_to_value(x) })
}

fn gens_json(z: &GeneratorSet) -> Value {
    Value::Array(z.gens().iter().map(|g| Value::String(g.to_string())).collect())
}

fn coideal_json(r: &CoidealReport) -> Value {
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "element": w.element.to_string(),
                "right_leg": print_monomial(w.element.system(), &w.right_leg),
                "left": w.left.to_string(),
            })
        })
        .collect();
    json!({
        "status": r.status,
        "degree": r.degree,
        "margin": r.margin,
        "checked": r.checked,
        "witnesses": witnesses,
    })
}

fn coideal_text(r: &CoidealReport) -> String {
    let mut s = format!(
        "{:?} at degree {} (margin {}, {} elements)",
        r.status, r.degree, r.margin, r.checked
    );
    for w in &r.witnesses {
        s.push_str(&format!(
            "\n  witness: {} has left leg {} at right leg {}",
            w.element,
            w.left,
            print_monomial(w.element.system(), &w.right_leg)
        ));
    }
    s
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

fn matrix_text(m: &Matrix) -> String {
    m.rows
        .iter()
        .map(|r| format!("  [{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Glob with `*` only; anything else matches literally.
fn id_matches(pattern: &str, id: &str) -> bool {
    match pattern.split_once('*') {
        None => pattern == id,
        Some((head, tail)) => {
            id.starts_with(head)
                && (0..=id.len() - head.len())
                    .filter(|&i| id.is_char_boundary(head.len() + i))
                    .any(|i| id_matches(tail, &id[head.len() + i..]))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = Ctx {
        system: cli.system,
        subs: load_subs(cli.system, cli.subs.as_deref())?,
    };
    let alg = Algebra::get(cli.system);
    match &cli.command {
        Command::Normalize { expr } => {
            let x = ctx.parse(expr)?;
            Ok(Output::ok(x.to_string(), element_json(&x)))
        }
        Command::Mul { exprs } => {
            let mut acc = UElement::one(cli.system);
            for e in exprs {
                acc = alg.multiply(&acc, &ctx.parse(e)?)?;
            }
            Ok(Output::ok(acc.to_string(), element_json(&acc)))
        }
        Command::Qcomm { c, x, y } => {
            let c = ctx.scalar(c)?;
            let z = alg.q_commutator(&ctx.parse(x)?, &ctx.parse(y)?, &c)?;
            let mut j = element_json(&z);
            j["scalar"] = z
                .as_scalar()
                .map(|s| Value::String(s.to_string()))
                .unwrap_or(Value::Null);
            Ok(Output::ok(z.to_string(), j))
        }
        Command::Coproduct { expr } => {
            let t = coproduct(&ctx.parse(expr)?)?;
            Ok(Output::ok(
                t.to_string(),
                json!({ "text": t.to_string(), "terms": tensor_to_value(&t) }),
            ))
        }
        Command::Parts { expr } => {
            let (geq, leq, mixed) = ctx.parse(expr)?.parts();
            Ok(Output::ok(
                format!("U>=0: {geq}\nU<=0: {leq}\nmixed: {mixed}"),
                json!({ "geq": geq.to_string(), "leq": leq.to_string(), "mixed": mixed.to_string() }),
            ))
        }
        Command::Leading { side, expr } => {
            let x = ctx.parse(expr)?;
            let side = match side {
                SideArg::E => Side::E,
                SideArg::F => Side::F,
            };
            let degrees = leading::side_degrees(&x, side);
            let mut terms = Vec::new();
            let mut text = Vec::new();
            for d in &degrees {
                let t = leading::side_leading_term(&x, *d, side)?;
                text.push(format!("{d}: {t}"));
                terms.push(json!({ "degree": d.to_string(), "term": t.to_string() }));
            }
            let m: Vec<Vec<u16>> = m_set_of(std::slice::from_ref(&x), side)
                .vectors
                .iter()
                .map(|v| v.0[..qcoideal::RootSystem::get(cli.system).n_pos()].to_vec())
                .collect();
            if text.is_empty() {
                text.push("no leading terms".into());
            }
            text.push(format!("M-set: {m:?}"));
            Ok(Output::ok(
                text.join("\n"),
                json!({ "side": format!("{side:?}"), "leading": terms, "m_set": m }),
            ))
        }
        Command::EtaSplit { expr } => {
            let parts = eta_split(&ctx.parse(expr)?);
            let text = parts
                .iter()
                .map(|(eta, p)| format!("{eta}: {p}"))
                .collect::<Vec<_>>()
                .join("\n");
            let j: Vec<Value> = parts
                .iter()
                .map(|(eta, p)| json!({ "eta": eta.to_string(), "element": p.to_string() }))
                .collect();
            Ok(Output::ok(text, Value::Array(j)))
        }
        Command::Shift {
            character,
            degree,
            gens,
        } => {
            let phi = Character::from_json(cli.system, &read_json(character)?)?;
            let z = ctx.gens(gens)?;
            let (shifted, mut report) = character_shift_set(&z, &phi, *degree)?;
            if !report.is_verified() {
                report = is_right_coideal(&shifted, *degree, catalog::DEFAULT_MARGIN);
            }
            let lines: Vec<String> = shifted.gens().iter().map(|g| g.to_string()).collect();
            Ok(Output {
                text: format!("{}\n{}", lines.join("\n"), coideal_text(&report)),
                json: json!({ "generators": gens_json(&shifted), "coideal": coideal_json(&report) }),
                ok: report.is_verified(),
            })
        }
        Command::Check { degree, margin, gens } => {
            let z = ctx.gens(gens)?;
            let report = is_right_coideal(&z, *degree, *margin);
            let torus = torus_check(&z, *degree, *margin).is_subhopf();
            let mut j = coideal_json(&report);
            j["torus_subhopf"] = Value::Bool(torus);
            Ok(Output {
                text: format!("{}\ntorus sub-Hopf: {torus}", coideal_text(&report)),
                json: j,
                ok: report.is_verified(),
            })
        }
        Command::Reduce { degree, gens } => {
            let z = ctx.gens(gens)?;
            let r = reduce_system(&z, *degree)?;
            let preserved = r.input_in_output && r.output_in_input;
            let lines: Vec<String> = r.gens.gens().iter().map(|g| g.to_string()).collect();
            Ok(Output {
                text: format!(
                    "{}\n{} reduction steps, span preserved: {preserved}",
                    lines.join("\n"),
                    r.reductions.len()
                ),
                json: json!({
                    "generators": gens_json(&r.gens),
                    "steps": r.reductions.len(),
                    "span_preserved": preserved,
                }),
                ok: preserved,
            })
        }
        Command::Catalog { action } => catalog_cmd(action),
        Command::Repr { m, gens } => {
            if cli.system != SystemKind::A1 {
                return Err(Failure(2, "repr needs --system A1".into()));
            }
            let module = build_simple_module(*m);
            let z = ctx.gens(gens)?;
            let mut text = Vec::new();
            let mut mats = Vec::new();
            for g in z.gens() {
                let mat = module.matrix_of(g)?;
                text.push(format!("{g}:\n{}", matrix_text(&mat)));
                mats.push(json!({ "element": g.to_string(), "matrix": matrix_json(&mat) }));
            }
            let report = restrict_find_onedim(&module, &z)?;
            let flag = onedim_flag_length(&module, &z)?;
            for s in &report.submodules {
                let ev: Vec<String> = s.eigenvalues.iter().map(|c| c.to_string()).collect();
                text.push(format!(
                    "line spanned by {} with eigenvalues [{}]",
                    s.vector,
                    ev.join(", ")
                ));
            }
            for s in &report.quotients {
                let ev: Vec<String> = s.eigenvalues.iter().map(|c| c.to_string()).collect();
                text.push(format!("one-dimensional quotient with eigenvalues [{}]", ev.join(", ")));
            }
            text.push(format!(
                "flag of invariant subspaces of length {flag} (dimension {})",
                module.dim()
            ));
            Ok(Output::ok(
                text.join("\n"),
                json!({
                    "dim": module.dim(),
                    "matrices": mats,
                    "onedim": serde_json::to_value(&report)?,
                    "flag_length": flag,
                }),
            ))
        }
    }
}

fn catalog_cmd(action: &CatalogAction) -> Result<Output, Failure> {
    match action {
        CatalogAction::List => {
            let entries = catalog::load_catalog()?;
            let ids: Vec<String> = entries.iter().map(|e| e.id.clone()).collect();
            Ok(Output::ok(ids.join("\n"), json!(ids)))
        }
        CatalogAction::Verify { id, degree, mutations } => {
            let entries = if *mutations {
                catalog::mutations()?
            } else {
                catalog::load_catalog()?
            };
            let selected: Vec<_> = entries
                .into_iter()
                .filter(|e| id.as_deref().is_none_or(|p| id_matches(p, &e.id)))
                .collect();
            if selected.is_empty() {
                return Err(Failure(2, format!("no entry matches {}", id.as_deref().unwrap_or("*"))));
            }
            let reports: Vec<VerificationReport> = verify_all(&selected, *degree);
            let passed = reports.iter().filter(|r| r.passed).count();
            let mut text: String = reports.iter().map(|r| r.to_string()).collect();
            text.push_str(&format!("{passed}/{} passed", reports.len()));
            Ok(Output {
                text,
                json: serde_json::to_value(&reports)?,
                ok: passed == reports.len(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::id_matches;

    #[test]
    fn glob() {
        assert!(id_matches("sl3-2a-1", "sl3-2a-1"));
        assert!(!id_matches("sl3-2a-1", "sl3-2a-10"));
        assert!(id_matches("sl3-2a-*", "sl3-2a-10"));
        assert!(id_matches("*borel*", "sl2-borel-B"));
        assert!(!id_matches("sl2-*", "sl3-3a"));
    }
}
