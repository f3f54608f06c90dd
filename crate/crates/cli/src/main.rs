//! Command-line front end: single divisor-class computations, Picard
//! presentations, genus reports, and parameter sweeps, with deterministic
//! text or JSON output.
//!
//! Exit codes: 0 on success, 2 on invalid arguments or parameter
//! combinations, 1 on an internal invariant failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use equichow::moduli::{
    self, alpha_factor, f_closed_form, f_divisor_class, f_relations, g_closed_form,
    g_divisor_class, g_relations, genus_pipeline, picard_presentation_fab,
    picard_presentation_gdmn, DivisorClassExpr, FabSetup, GdmnSetup, ModuliError, PicardReport,
    Torsor,
};
use equichow::{quotient_structure, FGAbelian, GroupPresentation};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "equichow",
    version,
    about = "Exact divisor classes and Picard groups for moduli of smooth complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    fn label(&self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TorsorArg {
    None,
    Q,
    P,
}

impl From<TorsorArg> for Torsor {
    fn from(t: TorsorArg) -> Torsor {
        match t {
            TorsorArg::None => Torsor::None,
            TorsorArg::Q => Torsor::Q,
            TorsorArg::P => Torsor::P,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Fab,
    Gdmn,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant divisor class for complete intersections of bidegree (a, b)
    Fab {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        n: u32,
        /// Also list the Chow-ring relations xi_1..xi_{n+1}
        #[arg(long)]
        relations: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Discriminant divisor class for complete intersections of m degree-d hypersurfaces
    Gdmn {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Base-field characteristic: 0 or a prime (only 2 changes results)
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Also list the Chow-ring relations zeta_0..zeta_n
        #[arg(long)]
        relations: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Picard-group presentation and structure for one family
    Picard {
        #[command(subcommand)]
        family: PicardCommand,
    },
    /// Picard group of the moduli stack of smooth curves of genus 3, 4 or 5
    Genus {
        genus: u8,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Divisor classes over a parameter grid, one report per line
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Upper bound for the degrees (b in the bidegree family, d otherwise)
        #[arg(long, default_value_t = 4)]
        max_deg: u32,
        /// Upper bound for the ambient dimension n
        #[arg(long, default_value_t = 5)]
        max_n: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum PicardCommand {
    /// Bidegree family on generators (c1, u, v)
    Fab {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = TorsorArg::None)]
        torsor: TorsorArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Equidegree family on generators (c1, s1)
    Gdmn {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = TorsorArg::None)]
        torsor: TorsorArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    Internal(String),
}

fn classify(err: ModuliError) -> CliError {
    match err {
        ModuliError::InvalidBidegree { .. }
        | ModuliError::AmbientTooSmall { .. }
        | ModuliError::InvalidDegree
        | ModuliError::InvalidCodimension { .. }
        | ModuliError::InvalidCharacteristic(_)
        | ModuliError::TorsorMismatch { .. }
        | ModuliError::RelationRangeUnsound { .. }
        | ModuliError::UnsupportedGenus(_) => CliError::Usage(err.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn bigint_str(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn divisor_class_value(d: &DivisorClassExpr) -> Value {
    let mut map = Map::new();
    for (name, coeff) in d.coefficients() {
        map.insert(name, bigint_str(&coeff));
    }
    Value::Object(map)
}

fn structure_value(s: &FGAbelian) -> Value {
    json!({
        "rank": s.free_rank().to_string(),
        "torsion": s.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn presentation_value(p: &GroupPresentation) -> Value {
    let rows: Vec<Vec<String>> = (0..p.relations.rows())
        .map(|i| p.relations.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "generators": p.generators,
        "relation_rows": rows,
    })
}

/// Assemble the stable top-level report object; serde_json's map is
/// BTree-backed, so serialization is key-sorted and byte-deterministic.
fn report_value(
    request: Value,
    body: Vec<(&'static str, Value)>,
    axioms: &[String],
    errata: &[String],
) -> Value {
    let mut map = Map::new();
    map.insert("request".into(), request);
    for (k, v) in body {
        map.insert(k.into(), v);
    }
    map.insert("axioms".into(), json!(axioms));
    map.insert("errata".into(), json!(errata));
    map.insert("version".into(), Value::String(VERSION.into()));
    Value::Object(map)
}

fn print_report(format: Format, value: &Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("serializable")),
        Format::Text => println!("{text}"),
    }
}

fn fab_erratum() -> Vec<String> {
    vec![moduli::ERRATUM_CLOSED_FORM.to_string()]
}

fn run_fab(a: u32, b: u32, n: u32, relations: bool, format: Format) -> Result<(), CliError> {
    let setup = FabSetup::new(a, b, n).map_err(classify)?;
    let divisor = f_divisor_class(&setup).map_err(classify)?;
    let closed = f_closed_form(&setup).map_err(classify)?;
    if divisor != closed {
        return Err(CliError::Internal(format!(
            "closed form `{closed}` disagrees with pipeline `{divisor}`"
        )));
    }
    let mut body = vec![("divisor_class", divisor_class_value(&divisor))];
    let mut text = format!("divisor class: {divisor}");
    if relations {
        let list = f_relations(&setup).map_err(classify)?;
        let rendered: Vec<String> = list.descending().iter().map(|p| p.to_string()).collect();
        body.push(("relations", json!(rendered)));
        body.push((
            "relation_convention",
            json!("descending: xi_q multiplies t^(n+1-q), q = 1..n+1"),
        ));
        text.push_str("\nrelations (xi_1..xi_{n+1}, descending in t):");
        for (q, r) in rendered.iter().enumerate() {
            text.push_str(&format!("\n  xi_{}: {}", q + 1, r));
        }
    }
    let request = json!({
        "command": "fab",
        "a": a.to_string(),
        "b": b.to_string(),
        "n": n.to_string(),
        "relations": relations,
        "format": format.label(),
    });
    let value = report_value(request, body, &[], &fab_erratum());
    print_report(format, &value, text);
    Ok(())
}

fn run_gdmn(
    d: u32,
    m: u32,
    n: u32,
    characteristic: u64,
    relations: bool,
    format: Format,
) -> Result<(), CliError> {
    let setup = GdmnSetup::new(d, m, n, characteristic).map_err(classify)?;
    let divisor = g_divisor_class(&setup).map_err(classify)?;
    let closed = g_closed_form(&setup).map_err(classify)?;
    if divisor != closed {
        return Err(CliError::Internal(format!(
            "closed form `{closed}` disagrees with pipeline `{divisor}`"
        )));
    }
    let alpha = alpha_factor(&setup);
    let mut body = vec![
        ("divisor_class", divisor_class_value(&divisor)),
        ("alpha", json!(alpha.to_string())),
    ];
    let mut text = format!("divisor class: {divisor}\nalpha: {alpha}");
    if relations {
        let list = g_relations(&setup).map_err(classify)?;
        let rendered: Vec<String> = list.iter().map(|p| p.to_string()).collect();
        body.push(("relations", json!(rendered)));
        body.push((
            "relation_convention",
            json!("ascending: zeta_i multiplies t^i, i = 0..n"),
        ));
        text.push_str("\nrelations (zeta_0..zeta_n, ascending in t):");
        for (i, r) in rendered.iter().enumerate() {
            text.push_str(&format!("\n  zeta_{i}: {r}"));
        }
    }
    let request = json!({
        "command": "gdmn",
        "d": d.to_string(),
        "m": m.to_string(),
        "n": n.to_string(),
        "char": characteristic.to_string(),
        "relations": relations,
        "format": format.label(),
    });
    let value = report_value(request, body, &[], &[]);
    print_report(format, &value, text);
    Ok(())
}

fn render_structure(s: &FGAbelian) -> String {
    let mut parts: Vec<String> = Vec::new();
    if s.free_rank() > 0 {
        parts.push(match s.free_rank() {
            1 => "Z".to_string(),
            r => format!("Z^{r}"),
        });
    }
    for d in s.invariant_factors() {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" x ")
    }
}

fn run_picard(cmd: PicardCommand) -> Result<(), CliError> {
    let (pres, request, format) = match cmd {
        PicardCommand::Fab {
            a,
            b,
            n,
            torsor,
            format,
        } => {
            let setup = FabSetup::new(a, b, n).map_err(classify)?;
            let pres = picard_presentation_fab(&setup, torsor.into()).map_err(classify)?;
            let request = json!({
                "command": "picard-fab",
                "a": a.to_string(),
                "b": b.to_string(),
                "n": n.to_string(),
                "torsor": Torsor::from(torsor).label(),
                "format": format.label(),
            });
            (pres, request, format)
        }
        PicardCommand::Gdmn {
            d,
            m,
            n,
            characteristic,
            torsor,
            format,
        } => {
            let setup = GdmnSetup::new(d, m, n, characteristic).map_err(classify)?;
            let pres = picard_presentation_gdmn(&setup, torsor.into()).map_err(classify)?;
            let request = json!({
                "command": "picard-gdmn",
                "d": d.to_string(),
                "m": m.to_string(),
                "n": n.to_string(),
                "char": characteristic.to_string(),
                "torsor": Torsor::from(torsor).label(),
                "format": format.label(),
            });
            (pres, request, format)
        }
    };
    let structure = quotient_structure(&pres);
    let body = vec![(
        "picard",
        json!({
            "presentation": presentation_value(&pres),
            "structure": structure_value(&structure),
        }),
    )];
    let mut text = format!("generators: ({})\nrelations:", pres.generators.join(", "));
    for i in 0..pres.relations.rows() {
        let row: Vec<String> = pres
            .relations
            .row(i)
            .iter()
            .map(|x| x.to_string())
            .collect();
        text.push_str(&format!("\n  ({})", row.join(", ")));
    }
    text.push_str(&format!("\nstructure: {}", render_structure(&structure)));
    let value = report_value(request, body, &[], &[]);
    print_report(format, &value, text);
    Ok(())
}

fn picard_report_value(report: &PicardReport) -> Value {
    let mut multiples = Map::new();
    for (name, m) in &report.divisor_multiples {
        multiples.insert(
            name.clone(),
            json!({
                "signed": m.signed.to_string(),
                "absolute": m.absolute.to_string(),
            }),
        );
    }
    let mut map = Map::new();
    map.insert("rank".into(), json!(report.moduli_free_rank.to_string()));
    map.insert(
        "torsion".into(),
        json!(report
            .moduli_torsion
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()),
    );
    map.insert(
        "generator".into(),
        json!({
            "name": report.generator.name,
            "expression": report.generator.expression,
        }),
    );
    map.insert("divisor_multiples".into(), Value::Object(multiples));
    map.insert(
        "open_locus".into(),
        json!({
            "presentation": presentation_value(&report.presentation),
            "structure": structure_value(&report.structure),
            "order": report.open_locus_order.as_ref().map(|o| o.to_string()),
        }),
    );
    Value::Object(map)
}

fn run_genus(genus: u8, characteristic: u64, format: Format) -> Result<(), CliError> {
    let report = genus_pipeline(genus, characteristic).map_err(classify)?;
    let request = json!({
        "command": "genus",
        "genus": genus.to_string(),
        "char": characteristic.to_string(),
        "format": format.label(),
    });
    let body = vec![("picard", picard_report_value(&report))];
    let mut text = format!(
        "Pic(M{genus}): free of rank {}, generator {} = {}",
        report.moduli_free_rank, report.generator.name, report.generator.expression
    );
    if let Some(order) = &report.open_locus_order {
        text.push_str(&format!(
            "\nopen locus: {} (order {order}, cyclic on c1)",
            render_structure(&report.structure)
        ));
    } else {
        text.push_str(&format!(
            "\npresentation quotient: {}",
            render_structure(&report.structure)
        ));
    }
    for (name, m) in &report.divisor_multiples {
        text.push_str(&format!(
            "\n[{name}] = {} * lambda1 (raw signed value {})",
            m.absolute, m.signed
        ));
    }
    let value = report_value(request, body, &report.axioms, &report.errata);
    print_report(format, &value, text);
    Ok(())
}

fn sweep_points_fab(max_deg: u32, max_n: u32) -> Vec<(u32, u32, u32)> {
    let mut points = Vec::new();
    for a in 1..=max_deg {
        for b in a + 1..=max_deg {
            for n in 3..=max_n {
                points.push((a, b, n));
            }
        }
    }
    points
}

fn sweep_points_gdmn(max_deg: u32, max_n: u32) -> Vec<(u32, u32, u32)> {
    let mut points = Vec::new();
    for d in 1..=max_deg {
        for m in 1..max_n {
            for n in m + 1..=max_n {
                points.push((d, m, n));
            }
        }
    }
    points
}

fn run_sweep(
    family: FamilyKind,
    max_deg: u32,
    max_n: u32,
    characteristic: u64,
    format: Format,
) -> Result<(), CliError> {
    // Grid points are independent; compute them in parallel and print in
    // grid order.
    let lines: Result<Vec<String>, CliError> = match family {
        FamilyKind::Fab => sweep_points_fab(max_deg, max_n)
            .into_par_iter()
            .map(|(a, b, n)| {
                let setup = FabSetup::new(a, b, n).map_err(classify)?;
                let divisor = f_divisor_class(&setup).map_err(classify)?;
                let closed = f_closed_form(&setup).map_err(classify)?;
                if divisor != closed {
                    return Err(CliError::Internal(format!(
                        "closed form mismatch at ({a},{b},{n})"
                    )));
                }
                Ok(match format {
                    Format::Json => {
                        let request = json!({
                            "command": "fab",
                            "a": a.to_string(),
                            "b": b.to_string(),
                            "n": n.to_string(),
                            "relations": false,
                            "format": "json",
                        });
                        let value = report_value(
                            request,
                            vec![("divisor_class", divisor_class_value(&divisor))],
                            &[],
                            &fab_erratum(),
                        );
                        serde_json::to_string(&value).expect("serializable")
                    }
                    Format::Text => format!("a={a} b={b} n={n}: {divisor}"),
                })
            })
            .collect(),
        FamilyKind::Gdmn => sweep_points_gdmn(max_deg, max_n)
            .into_par_iter()
            .map(|(d, m, n)| {
                let setup = GdmnSetup::new(d, m, n, characteristic).map_err(classify)?;
                let divisor = g_divisor_class(&setup).map_err(classify)?;
                let closed = g_closed_form(&setup).map_err(classify)?;
                if divisor != closed {
                    return Err(CliError::Internal(format!(
                        "closed form mismatch at ({d},{m},{n})"
                    )));
                }
                Ok(match format {
                    Format::Json => {
                        let request = json!({
                            "command": "gdmn",
                            "d": d.to_string(),
                            "m": m.to_string(),
                            "n": n.to_string(),
                            "char": characteristic.to_string(),
                            "relations": false,
                            "format": "json",
                        });
                        let value = report_value(
                            request,
                            vec![
                                ("divisor_class", divisor_class_value(&divisor)),
                                ("alpha", json!(alpha_factor(&setup).to_string())),
                            ],
                            &[],
                            &[],
                        );
                        serde_json::to_string(&value).expect("serializable")
                    }
                    Format::Text => format!("d={d} m={m} n={n}: {divisor}"),
                })
            })
            .collect(),
    };
    for line in lines? {
        println!("{line}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fab {
            a,
            b,
            n,
            relations,
            format,
        } => run_fab(a, b, n, relations, format),
        Command::Gdmn {
            d,
            m,
            n,
            characteristic,
            relations,
            format,
        } => run_gdmn(d, m, n, characteristic, relations, format),
        Command::Picard { family } => run_picard(family),
        Command::Genus {
            genus,
            characteristic,
            format,
        } => run_genus(genus, characteristic, format),
        Command::Sweep {
            family,
            max_deg,
            max_n,
            characteristic,
            format,
        } => run_sweep(family, max_deg, max_n, characteristic, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
