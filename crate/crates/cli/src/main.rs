//! Command-line front end: loads model documents, dispatches one subcommand
//! per computed object or verified identity, and renders results exactly.
//!
//! Exit codes: 0 on success or a verified identity, 1 when a verification
//! command finds a mismatch, 2 on input errors (bad files, bad flags,
//! malformed polynomials, budget and range guards).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use snczeta_core::document::{parse_document, render_model};
use snczeta_core::jets::{count_jets, count_jets_at_origin, verify_point_count, DEFAULT_BUDGET};
use snczeta_core::model::ComponentId;
use snczeta_core::monodromy::{lefschetz_number, monodromy_zeta, verify_trace};
use snczeta_core::poly::parse_poly;
use snczeta_core::series::{
    blowup_invariance_check, direct_coefficient, limit_t_infinity, motivic_volume, motivic_zeta,
    nearby_cycles, serre_series, series_coefficient, volume_series, weil_identity_check,
    MotivicSeries,
};
use snczeta_core::{MotivicClass, ResolutionModel};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "snczeta",
    version,
    about = "Exact motivic series, monodromy invariants, and jet counts \
             from strict normal crossings resolution data"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Largest degree accepted for coefficient extraction and blow-up checks.
    #[arg(long, global = true, default_value_t = 64)]
    max_degree: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model document and report every violation.
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the motivic zeta function in closed form.
    Zeta {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the volume Poincaré series in closed form.
    VolumeSeries {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the reduced Poincaré series over the singleton strata.
    SerreSeries {
        #[arg(long)]
        model: PathBuf,
    },
    /// Extract the T^d coefficient of the volume series by enumeration.
    Coeff {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Extract the same coefficient by truncated products (cross-check).
    DirectCoeff {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Print the T -> infinity limit of the volume series.
    Limit {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the motivic volume (minus the limit of the volume series).
    MotivicVolume {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the nearby-cycles class.
    NearbyCycles {
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the Lefschetz number of the d-th monodromy iterate.
    Lefschetz {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        support: String,
        #[arg(long)]
        d: u64,
    },
    /// Print the monodromy zeta function in factored form.
    MonodromyZeta {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        support: String,
    },
    /// Check the trace identity at iterate d; exit 1 on mismatch.
    VerifyTrace {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        support: String,
        #[arg(long)]
        d: u64,
    },
    /// Check volume(T) = L^-rel_dim * zeta(LT) term by term; exit 1 on mismatch.
    VerifyWeil {
        #[arg(long)]
        model: PathBuf,
    },
    /// Blow up a stratum and print the rewritten model document.
    Blowup {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated component ids of the center, e.g. "E1,E2".
        #[arg(long = "J", value_name = "IDS")]
        center: String,
        /// Also check series invariance through the substitution; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
        /// Largest coefficient degree compared by --check.
        #[arg(long, default_value_t = 12)]
        dmax: u64,
    },
    /// Count jets over F_q with f(jet) = u^d exactly; prints the count.
    CountJets {
        /// Polynomial in x1, x2, ..., e.g. "x1*x2".
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        /// Restrict to jets whose coordinates vanish at u = 0.
        #[arg(long)]
        origin: bool,
        /// Cap on the number of enumerated jets.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare the specialized zeta coefficient against brute-force jet counts.
    VerifyPointCount {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        support: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Reads and structurally parses a document, then requires zero violations.
fn load_model(path: &Path) -> Result<ResolutionModel, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let (model, violations) =
        parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if violations.is_empty() {
        Ok(model)
    } else {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        Err(format!("{} is not a valid model:\n{}", path.display(), lines.join("\n")))
    }
}

/// Commands computing volume data need a gauge order on every component.
/// A model without any recorded `mu` falls back to the Gelfand-Leray rule
/// `mu = nu - N`; partially recorded `mu` is rejected as ambiguous.
fn ensure_mu(model: ResolutionModel) -> Result<ResolutionModel, String> {
    let with_mu = model.components.iter().filter(|c| c.gauge_order.is_some()).count();
    if with_mu == model.components.len() {
        Ok(model)
    } else if with_mu == 0 {
        model.derive_mu().map_err(|e| e.to_string())
    } else {
        Err("some components record mu and others do not; \
             record all of them or none"
            .to_string())
    }
}

fn check_support(model: &ResolutionModel, support: &str) -> Result<(), String> {
    if model.support_tags.iter().any(|tag| tag == support) {
        Ok(())
    } else {
        Err(format!(
            "unknown support tag `{support}`; the model declares: {}",
            model.support_tags.join(", ")
        ))
    }
}

fn check_degree(d: u64, max_degree: u64) -> Result<(), String> {
    if d > max_degree {
        Err(format!("degree {d} exceeds --max-degree {max_degree}"))
    } else {
        Ok(())
    }
}

fn parse_center(text: &str) -> Result<BTreeSet<ComponentId>, String> {
    let center: BTreeSet<ComponentId> = text
        .split(',')
        .map(str::trim)
        .filter(|id| !id.is_empty())
        .map(ComponentId::new)
        .collect();
    if center.is_empty() {
        Err("the center must list at least one component id".to_string())
    } else {
        Ok(center)
    }
}

fn class_json(class: &MotivicClass) -> Value {
    let mut map = serde_json::Map::new();
    for (symbol, poly) in class.terms() {
        map.insert(symbol.to_string(), Value::from(poly.to_string()));
    }
    Value::Object(map)
}

fn series_json(series: &MotivicSeries) -> Value {
    let terms: Vec<Value> = series
        .terms
        .iter()
        .map(|term| {
            let factors: Vec<Value> = term
                .factors
                .iter()
                .map(|&(a, b)| Value::from(vec![Value::from(a), Value::from(b)]))
                .collect();
            json!({"coefficient": term.coefficient.to_string(), "factors": factors})
        })
        .collect();
    json!({ "terms": terms })
}

fn print_series(series: &MotivicSeries, format: Format) {
    match format {
        Format::Text => println!("{series}"),
        Format::Json => println!("{}", series_json(series)),
    }
}

fn print_class(class: &MotivicClass, format: Format) {
    match format {
        Format::Text => println!("{class}"),
        Format::Json => println!("{}", class_json(class)),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let format = cli.format;
    match cli.command {
        Command::Validate { model } => {
            let text = std::fs::read_to_string(&model)
                .map_err(|e| format!("{}: {e}", model.display()))?;
            let (parsed, violations) =
                parse_document(&text).map_err(|e| format!("{}: {e}", model.display()))?;
            let ok = violations.is_empty();
            match format {
                Format::Text => {
                    if ok {
                        println!(
                            "ok: {} components, {} strata",
                            parsed.components.len(),
                            parsed.strata.len()
                        );
                    } else {
                        for violation in &violations {
                            println!("{violation}");
                        }
                    }
                }
                Format::Json => {
                    let rendered: Vec<String> =
                        violations.iter().map(ToString::to_string).collect();
                    println!(
                        "{}",
                        json!({
                            "ok": ok,
                            "components": parsed.components.len(),
                            "strata": parsed.strata.len(),
                            "violations": rendered,
                        })
                    );
                }
            }
            Ok(if ok { 0 } else { 2 })
        }
        Command::Zeta { model } => {
            let model = load_model(&model)?;
            let series = motivic_zeta(&model).map_err(|e| e.to_string())?;
            print_series(&series, format);
            Ok(0)
        }
        Command::VolumeSeries { model } => {
            let model = ensure_mu(load_model(&model)?)?;
            let series = volume_series(&model).map_err(|e| e.to_string())?;
            print_series(&series, format);
            Ok(0)
        }
        Command::SerreSeries { model } => {
            let model = load_model(&model)?;
            print_series(&serre_series(&model), format);
            Ok(0)
        }
        Command::Coeff { model, d } => {
            check_degree(d, cli.max_degree)?;
            let model = ensure_mu(load_model(&model)?)?;
            let series = volume_series(&model).map_err(|e| e.to_string())?;
            let class = series_coefficient(&series, d);
            match format {
                Format::Text => println!("{class}"),
                Format::Json => println!("{}", json!({"d": d, "class": class_json(&class)})),
            }
            Ok(0)
        }
        Command::DirectCoeff { model, d } => {
            check_degree(d, cli.max_degree)?;
            let model = ensure_mu(load_model(&model)?)?;
            let class = direct_coefficient(&model, d).map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("{class}"),
                Format::Json => println!("{}", json!({"d": d, "class": class_json(&class)})),
            }
            Ok(0)
        }
        Command::Limit { model } => {
            let model = ensure_mu(load_model(&model)?)?;
            let series = volume_series(&model).map_err(|e| e.to_string())?;
            print_class(&limit_t_infinity(&series), format);
            Ok(0)
        }
        Command::MotivicVolume { model } => {
            let model = load_model(&model)?;
            print_class(&motivic_volume(&model), format);
            Ok(0)
        }
        Command::NearbyCycles { model } => {
            let model = load_model(&model)?;
            print_class(&nearby_cycles(&model), format);
            Ok(0)
        }
        Command::Lefschetz { model, support, d } => {
            let model = load_model(&model)?;
            check_support(&model, &support)?;
            let value = lefschetz_number(&model, &support, d).map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("{value}"),
                Format::Json => {
                    println!("{}", json!({"support": support, "d": d, "value": value}))
                }
            }
            Ok(0)
        }
        Command::MonodromyZeta { model, support } => {
            let model = load_model(&model)?;
            check_support(&model, &support)?;
            let zeta = monodromy_zeta(&model, &support).map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("{zeta}"),
                Format::Json => {
                    let factors: Vec<Value> = zeta
                        .factors
                        .iter()
                        .map(|&(n, e)| Value::from(vec![Value::from(n), Value::from(e)]))
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "support": support,
                            "factors": factors,
                            "rendered": zeta.to_string(),
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::VerifyTrace { model, support, d } => {
            let model = load_model(&model)?;
            check_support(&model, &support)?;
            let report = verify_trace(&model, &support, d).map_err(|e| e.to_string())?;
            let ok = report.matches();
            match format {
                Format::Text => println!(
                    "lhs={} rhs={} {}",
                    report.lhs,
                    report.rhs,
                    if ok { "OK" } else { "MISMATCH" }
                ),
                Format::Json => println!(
                    "{}",
                    json!({
                        "support": report.support,
                        "d": report.d,
                        "lhs": report.lhs,
                        "rhs": report.rhs,
                        "ok": ok,
                    })
                ),
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::VerifyWeil { model } => {
            let model = ensure_mu(load_model(&model)?)?;
            let report = weil_identity_check(&model).map_err(|e| e.to_string())?;
            let ok = report.matches();
            match format {
                Format::Text => {
                    if ok {
                        println!("ok: {} strata match", report.strata_checked);
                    } else {
                        for mismatch in &report.mismatches {
                            println!(
                                "mismatch at {}: volume term {}, transformed zeta term {}",
                                mismatch.stratum,
                                mismatch.volume_term,
                                mismatch.transformed_zeta_term
                            );
                        }
                    }
                }
                Format::Json => {
                    let mismatches: Vec<String> = report
                        .mismatches
                        .iter()
                        .map(|m| m.stratum.to_string())
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "strata_checked": report.strata_checked,
                            "mismatches": mismatches,
                            "ok": ok,
                        })
                    );
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Blowup { model, center, check, dmax } => {
            check_degree(dmax, cli.max_degree)?;
            let model = load_model(&model)?;
            let center = parse_center(&center)?;
            let blow_up = model.blow_up_stratum(&center).map_err(|e| e.to_string())?;
            print!("{}", render_model(&blow_up.model).map_err(|e| e.to_string())?);
            if !check {
                return Ok(0);
            }
            let report = blowup_invariance_check(&ensure_mu(model)?, &center, dmax)
                .map_err(|e| e.to_string())?;
            let ok = report.matches();
            let center_ids: Vec<&str> = report.center.iter().map(ComponentId::as_str).collect();
            eprintln!(
                "blow-up check (center {{{}}}, new component {}): volume {}, coefficients {} up to T^{}",
                center_ids.join(","),
                report.new_component,
                if report.volume_match { "ok" } else { "MISMATCH" },
                if report.mismatched_degrees.is_empty() {
                    "ok".to_string()
                } else {
                    format!("MISMATCH at degrees {:?}", report.mismatched_degrees)
                },
                report.d_max
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::CountJets { f, d, q, origin, budget } => {
            let f = parse_poly(&f).map_err(|e| e.to_string())?;
            let count = if origin {
                count_jets_at_origin(&f, d, q, budget)
            } else {
                count_jets(&f, d, q, budget)
            }
            .map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("{count}"),
                Format::Json => println!(
                    "{}",
                    json!({"d": d, "q": q, "origin": origin, "count": count})
                ),
            }
            Ok(0)
        }
        Command::VerifyPointCount { model, f, d, q, support, budget } => {
            let model = load_model(&model)?;
            check_support(&model, &support)?;
            let f = parse_poly(&f).map_err(|e| e.to_string())?;
            let report = verify_point_count(&model, &f, d, q, &support, budget)
                .map_err(|e| e.to_string())?;
            let ok = report.matches();
            match format {
                Format::Text => println!(
                    "predicted={} counted={} {}",
                    report.predicted,
                    report.counted,
                    if ok { "OK" } else { "MISMATCH" }
                ),
                Format::Json => println!(
                    "{}",
                    json!({
                        "d": report.d,
                        "q": report.q,
                        "support": report.support,
                        "predicted": report.predicted.to_string(),
                        "counted": report.counted,
                        "ok": ok,
                    })
                ),
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}
