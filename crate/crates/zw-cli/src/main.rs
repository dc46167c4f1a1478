//! zw — command-line surface of the zeta special-values workbench.
//!
//! Subcommands: `field` (invariants), `zeta` (evaluation / leading terms),
//! `verify` (one registered check), `report` (the full sweep).
//! Exit codes: 0 success, 1 check failure, 2 usage, 3 data error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use zw_core::conjectures::{self, CheckContext, FullReport};
use zw_core::fields::{self, FieldSpec, KGroupTable};
use zw_core::highprec::Real;
use zw_core::report::{CheckStatus, ComparisonReport};
use zw_core::zeta::{self, EvalPrecision};

#[derive(Parser)]
#[command(
    name = "zw",
    about = "Verification workbench for special values of Dedekind zeta functions",
    version
)]
struct Cli {
    /// Fixture directory (fields/*.json, kgroups/*.json); falls back to
    /// $ZW_DATA_DIR, then ./data
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Working precision in bits
    #[arg(long, global = true, default_value_t = 256)]
    prec: u32,
    /// Comparison tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for every randomized sweep
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (0 = default pool, 1 = sequential)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the classical invariants of one fixture field
    Field {
        #[arg(long)]
        field: String,
    },
    /// Evaluate zeta_F at a point, or its leading Laurent data at an integer
    Zeta {
        #[arg(long)]
        field: String,
        /// evaluation point (real, != 1)
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        /// integer point for order/leading-coefficient extraction
        #[arg(long, allow_hyphen_values = true)]
        leading: Option<i64>,
    },
    /// Run one registered check (see `zw verify --list`)
    Verify {
        /// kebab-case check name
        check: Option<String>,
        #[arg(long)]
        list: bool,
        /// restrict to one field label
        #[arg(long)]
        field: Option<String>,
        /// restrict to one twist r
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
    },
    /// Run every registered check and aggregate
    Report {
        /// restrict to one field label
        #[arg(long)]
        field: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                zw_core::Error::Parse(_) | zw_core::Error::MissingData(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn data_dir(cli: &Cli) -> PathBuf {
    cli.data_dir
        .clone()
        .or_else(|| std::env::var_os("ZW_DATA_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data"))
}

fn load_fixtures(dir: &PathBuf) -> zw_core::Result<(Vec<FieldSpec>, KGroupTable)> {
    let field_dir = dir.join("fields");
    let mut specs = Vec::new();
    let entries = std::fs::read_dir(&field_dir).map_err(|e| {
        zw_core::Error::Parse(format!("cannot read {}: {e}", field_dir.display()))
    })?;
    for entry in entries {
        let path = entry
            .map_err(|e| zw_core::Error::Parse(e.to_string()))?
            .path();
        if path.extension().is_some_and(|x| x == "json") {
            let content = std::fs::read_to_string(&path)
                .map_err(|e| zw_core::Error::Parse(format!("{}: {e}", path.display())))?;
            specs.push(fields::load_field_file(&content)?);
        }
    }
    if specs.is_empty() {
        return Err(zw_core::Error::Parse(format!(
            "no field fixtures in {}",
            field_dir.display()
        )));
    }
    specs.sort_by(|a, b| a.label.cmp(&b.label));
    let mut ktable = KGroupTable::default();
    let kdir = dir.join("kgroups");
    if let Ok(entries) = std::fs::read_dir(&kdir) {
        for entry in entries {
            let path = entry
                .map_err(|e| zw_core::Error::Parse(e.to_string()))?
                .path();
            if path.extension().is_some_and(|x| x == "json") {
                let content = std::fs::read_to_string(&path)
                    .map_err(|e| zw_core::Error::Parse(format!("{}: {e}", path.display())))?;
                let table = fields::load_kgroup_file(&content)?;
                if let Some(spec) = specs.iter().find(|s| s.label == table.field) {
                    table.validate_ranks(spec)?;
                }
                ktable = table;
            }
        }
    }
    Ok((specs, ktable))
}

fn context(cli: &Cli) -> zw_core::Result<CheckContext> {
    let (fields, ktable) = load_fixtures(&data_dir(cli))?;
    if !(cli.tol > 0.0 && cli.tol < 0.5) {
        return Err(zw_core::Error::InvalidInput(
            "tolerance must lie in (0, 0.5)".into(),
        ));
    }
    Ok(CheckContext {
        fields,
        ktable,
        ep: EvalPrecision::with_bits(cli.prec.max(64)),
        tol: cli.tol,
        seed: cli.seed,
        jobs: cli.jobs,
        r_filter: None,
    })
}

fn find_field(ctx: &CheckContext, label: &str) -> zw_core::Result<FieldSpec> {
    ctx.fields
        .iter()
        .find(|f| f.label == label)
        .cloned()
        .ok_or_else(|| {
            zw_core::Error::MissingData(format!(
                "field '{label}' not among fixtures ({})",
                ctx.fields
                    .iter()
                    .map(|f| f.label.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
}

fn run(cli: &Cli) -> zw_core::Result<ExitCode> {
    match &cli.cmd {
        Cmd::Field { field } => {
            let ctx = context(cli)?;
            let spec = find_field(&ctx, field)?;
            let inv = fields::FieldInvariants::compute(&spec, ctx.ep.working_bits)?;
            match cli.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "label": spec.label,
                            "poly": spec.poly,
                            "degree": inv.degree,
                            "discriminant": inv.d_f,
                            "r1": inv.r1,
                            "r2": inv.r2,
                            "h": inv.h,
                            "regulator": format!("{:.20e}", inv.regulator.to_f64()),
                            "w": inv.w,
                            "fundamental_unit": inv.fundamental_unit.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]),
                        })
                    );
                }
                _ => {
                    println!("field        {}", spec.label);
                    println!("polynomial   {:?} (ascending)", spec.poly);
                    println!("degree       {}", inv.degree);
                    println!("discriminant {}", inv.d_f);
                    println!("signature    (r1, r2) = ({}, {})", inv.r1, inv.r2);
                    println!("h            {}", inv.h);
                    println!("regulator    {:.20}", inv.regulator.to_f64());
                    println!("w            {}", inv.w);
                    if let Some((x, y)) = &inv.fundamental_unit {
                        println!("fund. unit   {x} + {y}·ω");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Zeta { field, s, leading } => {
            let ctx = context(cli)?;
            let spec = find_field(&ctx, field)?;
            match (s, leading) {
                (Some(s), None) => {
                    let v = zeta::dedekind_zeta(&spec, &Real::from_f64(*s), &ctx.ep)?;
                    println!("zeta_{}({s}) = {:.30e}", spec.label, v.to_f64());
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(r)) => {
                    let lead = zeta::leading_term(&spec, *r, &ctx.ep)?;
                    println!(
                        "order {} leading {:.30e} (slope residual {:.2e}, extrapolation delta {:.2e})",
                        lead.order,
                        lead.leading.to_f64(),
                        lead.slope_residual,
                        lead.extrapolation_delta
                    );
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err(zw_core::Error::InvalidInput(
                    "pass exactly one of --s or --leading".into(),
                )),
            }
        }
        Cmd::Verify {
            check,
            list,
            field,
            r,
        } => {
            if *list {
                for def in conjectures::registry() {
                    println!("{:28} {}", def.name, def.description);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let Some(check) = check else {
                return Err(zw_core::Error::InvalidInput(
                    "pass a check name or --list".into(),
                ));
            };
            let mut ctx = context(cli)?;
            if let Some(label) = field {
                let spec = find_field(&ctx, label)?;
                ctx.fields = vec![spec];
            }
            ctx.r_filter = *r;
            let report = conjectures::run_single(check, &ctx)?;
            emit(&report, cli.format);
            Ok(exit_for(&report))
        }
        Cmd::Report { field } => {
            let mut ctx = context(cli)?;
            if let Some(label) = field {
                let spec = find_field(&ctx, label)?;
                ctx.fields = vec![spec];
            }
            let report = conjectures::full_report(&ctx);
            emit(&report, cli.format);
            Ok(exit_for(&report))
        }
    }
}

fn exit_for(report: &FullReport) -> ExitCode {
    if report.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(report: &FullReport, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).unwrap());
        }
        Format::Csv => {
            println!("check,subject,r,status,ratio,log2_ratio,two_power,notes");
            for item in &report.items {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    item.check,
                    csv_quote(&item.subject),
                    item.r.map_or(String::new(), |r| r.to_string()),
                    status_str(item.status),
                    item.ratio,
                    item.log2_ratio,
                    item.two_power.map_or(String::new(), |k| k.to_string()),
                    csv_quote(&item.notes),
                );
            }
        }
        Format::Text => {
            println!(
                "{:28} {:22} {:>4} {:>6}  {}",
                "check", "subject", "r", "status", "notes"
            );
            for item in &report.items {
                println!(
                    "{:28} {:22} {:>4} {:>6}  {}",
                    item.check,
                    truncate(&item.subject, 22),
                    item.r.map_or(String::new(), |r| r.to_string()),
                    status_str(item.status),
                    summary_note(item),
                );
            }
            println!(
                "\n{} passed, {} failed, {} skipped, {} informational (precision {} bits, tol {:.1e}, seed {})",
                report.passed,
                report.failed,
                report.skipped,
                report.informational,
                report.precision_bits,
                report.tolerance,
                report.seed
            );
        }
    }
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skip",
        CheckStatus::Informational => "info",
    }
}

fn summary_note(item: &ComparisonReport) -> String {
    if !item.notes.is_empty() {
        return truncate(&item.notes, 90);
    }
    match item.two_power {
        Some(k) => format!(
            "ratio {:.6e} = ±2^{k} (deviation {:.1e})",
            item.ratio, item.nearest_int_deviation
        ),
        None => format!("ratio {:.6e}", item.ratio),
    }
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        let cut: String = s.chars().take(n - 1).collect();
        format!("{cut}…")
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
