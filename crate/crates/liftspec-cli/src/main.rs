//! `liftspec`: spectra and eigenspace bases of universal adjacency matrices
//! of lifts of voltage graphs.
//!
//! Exit codes: 0 success, 1 input-validation error, 2 verification mismatch,
//! 3 unsupported operation.

mod fmt;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use liftspec_core::{
    compare_spectra, connectivity_check, core, lift_eigenvectors, local_group, parse_vg,
    seidel_relation_check, spectrum_direct, spectrum_via_reps, BaseGraph, Coeffs, CosetTable,
    EngineOptions, Error, IrrepSet, Provenance, Spectrum, VoltageAssignment, VoltageGraphFile,
};

use fmt::{fmt12, fmt12_complex};
use report::{Check, InstanceInfo, IrrepEntry, Report, SpectrumEntry, ValueEntry};

#[derive(Parser)]
#[command(
    name = "liftspec",
    version,
    about = "Spectra and eigenspaces of universal adjacency matrices of graph lifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the spectrum of the lift's universal adjacency matrix
    Spectrum(CommonArgs),
    /// Compute lifted eigenvectors with residuals
    Eigvecs(CommonArgs),
    /// Cross-check the representation route against the direct eigensolve
    Verify(CommonArgs),
    /// Print structural information and the base matrices
    Info(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Voltage-graph input file
    input: PathBuf,
    /// Coefficient preset
    #[arg(long, value_parser = ["adjacency", "laplacian", "signless", "seidel"],
          conflicts_with = "coeffs")]
    matrix: Option<String>,
    /// Explicit coefficients of c1·A + c2·D + c3·I + c4·J
    #[arg(long, num_args = 4, value_names = ["C1", "C2", "C3", "C4"],
          allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,
    /// Computation route
    #[arg(long, default_value = "reps", value_parser = ["reps", "direct", "both"])]
    method: String,
    /// Spectrum comparison and display-grouping tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Rank cutoff relative to the largest singular value
    #[arg(long, default_value_t = 1e-9)]
    rank_tol: f64,
    /// Irreducible-representation file (default: built-ins)
    #[arg(long)]
    irreps: Option<PathBuf>,
    /// Emit a JSON report instead of tables
    #[arg(long)]
    json: bool,
    /// Worker threads for per-irrep parallelism
    #[arg(long)]
    jobs: Option<usize>,
    /// Allow c1 = 0 in explicit coefficients
    #[arg(long)]
    allow_c1_zero: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = match &cli.command {
        Command::Spectrum(a) | Command::Eigvecs(a) | Command::Verify(a) | Command::Info(a) => a,
    };
    if let Some(jobs) = args.jobs {
        // ignore failure: the global pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Eigvecs(a) => cmd_eigvecs(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Info(a) => cmd_info(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnsupportedJ(_) => 3,
        _ => 1,
    }
}

struct Instance {
    file: VoltageGraphFile,
    irreps: IrrepSet,
    options: EngineOptions,
}

impl Instance {
    fn base(&self) -> &BaseGraph {
        &self.file.base
    }

    fn assignment(&self) -> &VoltageAssignment {
        &self.file.assignment
    }
}

fn load(args: &CommonArgs) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", args.input.display()),
    })?;
    let file = parse_vg(&text)?;
    file.assignment.validate(&file.base).into_result()?;
    let irreps = match &args.irreps {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("cannot read {}: {e}", path.display()),
            })?;
            IrrepSet::parse(&text, &file.assignment.group)?
        }
        None => IrrepSet::builtin(&file.assignment.group)?,
    };
    let options = EngineOptions {
        rank_tol: args.rank_tol,
        j_element: file.j_element.clone(),
        ..EngineOptions::default()
    };
    Ok(Instance {
        file,
        irreps,
        options,
    })
}

fn chosen_coeffs(args: &CommonArgs) -> Result<(String, Coeffs), Error> {
    if let Some(name) = &args.matrix {
        let c = Coeffs::preset(name).expect("clap-validated preset name");
        return Ok((name.clone(), c));
    }
    if let Some(values) = &args.coeffs {
        let c = if args.allow_c1_zero {
            Coeffs::raw(values[0], values[1], values[2], values[3])
        } else {
            Coeffs::new(values[0], values[1], values[2], values[3])?
        };
        let label = c
            .preset_name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("custom ({})", coeffs_label(c)));
        return Ok((label, c));
    }
    Ok(("adjacency".into(), Coeffs::ADJACENCY))
}

fn coeffs_label(c: Coeffs) -> String {
    format!(
        "{}, {}, {}, {}",
        fmt12(c.c1),
        fmt12(c.c2),
        fmt12(c.c3),
        fmt12(c.c4)
    )
}

fn instance_info(instance: &Instance) -> Result<InstanceInfo, Error> {
    let table = CosetTable::new(
        &instance.assignment().group,
        &instance.assignment().subgroup,
    )?;
    Ok(InstanceInfo {
        k: instance.base().order(),
        n: table.index(),
        group_order: instance.assignment().group.order(),
        presets: Coeffs::PRESETS.iter().map(|(n, _)| n.to_string()).collect(),
    })
}

fn spectrum_entry(method: &str, coeffs: Coeffs, spectrum: &Spectrum, tol: f64) -> SpectrumEntry {
    let per_irrep = match spectrum.provenance() {
        Provenance::Direct => Vec::new(),
        Provenance::PerIrrep(contributions) => contributions
            .iter()
            .map(|c| IrrepEntry {
                name: c.name.clone(),
                dimension: c.dimension,
                rank: c.rank,
                eigenvalues: c.eigenvalues.clone(),
            })
            .collect(),
    };
    SpectrumEntry {
        method: method.into(),
        coeffs: [coeffs.c1, coeffs.c2, coeffs.c3, coeffs.c4],
        values: spectrum
            .grouped(tol)
            .into_iter()
            .map(|(value, multiplicity)| ValueEntry {
                value,
                multiplicity,
            })
            .collect(),
        per_irrep,
        raw: spectrum.values().to_vec(),
    }
}

fn print_spectrum_table(label: &str, method: &str, spectrum: &Spectrum, tol: f64) {
    println!("spectrum ({label}), method {method}");
    println!("{:>18}  multiplicity", "eigenvalue");
    for (value, multiplicity) in spectrum.grouped(tol) {
        println!("{:>18}  {multiplicity}", fmt12(value));
    }
    if let Provenance::PerIrrep(contributions) = spectrum.provenance() {
        println!();
        println!("per-irrep provenance");
        println!("{:<10} {:>3} {:>4}  eigenvalues", "irrep", "dim", "rank");
        for c in contributions {
            let eigs = c
                .eigenvalues
                .iter()
                .map(|&v| fmt12(v))
                .collect::<Vec<_>>()
                .join(", ");
            println!("{:<10} {:>3} {:>4}  {eigs}", c.name, c.dimension, c.rank);
        }
    }
}

fn cmd_spectrum(args: &CommonArgs) -> Result<u8, Error> {
    let instance = load(args)?;
    let (label, coeffs) = chosen_coeffs(args)?;
    let mut entries = Vec::new();
    let mut mismatch = false;

    let reps = if args.method != "direct" {
        let s = spectrum_via_reps(
            instance.base(),
            instance.assignment(),
            coeffs,
            &instance.irreps,
            &instance.options,
        )?;
        entries.push(spectrum_entry("reps", coeffs, &s, args.tol));
        Some(s)
    } else {
        None
    };
    let direct = if args.method != "reps" {
        let s = spectrum_direct(instance.base(), instance.assignment(), coeffs)?;
        entries.push(spectrum_entry("direct", coeffs, &s, args.tol));
        Some(s)
    } else {
        None
    };

    let mut checks = Vec::new();
    if let (Some(reps), Some(direct)) = (&reps, &direct) {
        let cmp = compare_spectra(reps, direct, args.tol);
        mismatch = !cmp.matched;
        checks.push(Check {
            name: "spectra_match".into(),
            passed: cmp.matched,
            detail: if cmp.count_mismatch {
                format!("count mismatch: {} vs {}", reps.len(), direct.len())
            } else {
                format!("max deviation {}", fmt12(cmp.max_deviation))
            },
        });
    }

    if args.json {
        let report = Report {
            instance: instance_info(&instance)?,
            spectra: entries,
            checks,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        if let Some(s) = &reps {
            print_spectrum_table(&label, "reps", s, args.tol);
        }
        if reps.is_some() && direct.is_some() {
            println!();
        }
        if let Some(s) = &direct {
            print_spectrum_table(&label, "direct", s, args.tol);
        }
        for check in &checks {
            println!();
            println!(
                "{}: {} ({})",
                check.name,
                if check.passed { "PASS" } else { "FAIL" },
                check.detail
            );
        }
    }
    Ok(if mismatch { 2 } else { 0 })
}

fn cmd_eigvecs(args: &CommonArgs) -> Result<u8, Error> {
    let instance = load(args)?;
    let (label, coeffs) = chosen_coeffs(args)?;
    let lifted = lift_eigenvectors(
        instance.base(),
        instance.assignment(),
        coeffs,
        &instance.irreps,
        &instance.options,
    )?;

    if args.json {
        // vectors are emitted inline as [re, im] pairs per component
        let vectors: Vec<serde_json::Value> = lifted
            .iter()
            .map(|l| {
                serde_json::json!({
                    "eigenvalue": l.eigenvalue,
                    "irrep": l.irrep,
                    "residual": l.residual,
                    "vector": l
                        .vector
                        .iter()
                        .map(|c| vec![c.re, c.im])
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let out = serde_json::json!({
            "instance": serde_json::to_value(instance_info(&instance)?).expect("serializable"),
            "coeffs": [coeffs.c1, coeffs.c2, coeffs.c3, coeffs.c4],
            "eigenvectors": vectors,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("lifted eigenvectors ({label}): {} vectors", lifted.len());
        for l in &lifted {
            println!();
            println!(
                "eigenvalue {}  irrep {}  residual {}",
                fmt12(l.eigenvalue),
                l.irrep,
                fmt12(l.residual)
            );
            let parts = l
                .vector
                .iter()
                .map(|c| fmt12_complex(c.re, c.im))
                .collect::<Vec<_>>()
                .join(", ");
            println!("  [{parts}]");
        }
    }
    Ok(0)
}

fn cmd_verify(args: &CommonArgs) -> Result<u8, Error> {
    let instance = load(args)?;
    let mut checks: Vec<Check> = Vec::new();
    let mut entries: Vec<SpectrumEntry> = Vec::new();

    checks.push(Check {
        name: "irreps_valid".into(),
        passed: true,
        detail: format!(
            "{} irreps over a group of order {}",
            instance.irreps.irreps().len(),
            instance.assignment().group.order()
        ),
    });

    // counting identity: Σ rank(ρ(H))·d_ρ must equal the coset count
    let table = CosetTable::new(
        &instance.assignment().group,
        &instance.assignment().subgroup,
    )?;
    let n = table.index();
    let mut counted = 0usize;
    for rep in instance.irreps.irreps() {
        let (_, rank) = liftspec_core::subgroup_sum(
            rep,
            &instance.assignment().group,
            &instance.assignment().subgroup,
            args.rank_tol,
        )?;
        counted += rank * rep.dimension();
    }
    checks.push(Check {
        name: "counting_identity".into(),
        passed: counted == n,
        detail: format!("sum of rank·dim = {counted}, n = {n}"),
    });

    // both routes on every preset, plus explicit coefficients when given
    let mut matrix_list: Vec<(String, Coeffs)> = Coeffs::PRESETS
        .iter()
        .map(|(name, c)| (name.to_string(), *c))
        .collect();
    if args.matrix.is_some() || args.coeffs.is_some() {
        let (label, c) = chosen_coeffs(args)?;
        if !matrix_list.iter().any(|(_, existing)| *existing == c) {
            matrix_list.push((label, c));
        }
    }
    for (label, coeffs) in &matrix_list {
        let reps_result = spectrum_via_reps(
            instance.base(),
            instance.assignment(),
            *coeffs,
            &instance.irreps,
            &instance.options,
        );
        let reps = match reps_result {
            Ok(s) => s,
            Err(Error::UnsupportedJ(reason)) => {
                checks.push(Check {
                    name: format!("spectra_match_{label}"),
                    passed: true,
                    detail: format!("skipped: all-ones base matrix unsupported ({reason})"),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let direct = spectrum_direct(instance.base(), instance.assignment(), *coeffs)?;
        let cmp = compare_spectra(&reps, &direct, args.tol);
        checks.push(Check {
            name: format!("spectra_match_{label}"),
            passed: cmp.matched,
            detail: if cmp.count_mismatch {
                format!("count mismatch: {} vs {}", reps.len(), direct.len())
            } else {
                format!("max deviation {}", fmt12(cmp.max_deviation))
            },
        });
        entries.push(spectrum_entry("reps", *coeffs, &reps, args.tol));
        entries.push(spectrum_entry("direct", *coeffs, &direct, args.tol));
    }

    // lifted eigenvectors: residuals and full-rank span (adjacency route)
    match lift_eigenvectors(
        instance.base(),
        instance.assignment(),
        Coeffs::ADJACENCY,
        &instance.irreps,
        &instance.options,
    ) {
        Ok(lifted) => {
            let worst = lifted.iter().map(|l| l.residual).fold(0.0, f64::max);
            checks.push(Check {
                name: "eigenvector_construction".into(),
                passed: true,
                detail: format!(
                    "{} vectors, full rank, worst residual {}",
                    lifted.len(),
                    fmt12(worst)
                ),
            });
        }
        Err(e) => checks.push(Check {
            name: "eigenvector_construction".into(),
            passed: false,
            detail: e.to_string(),
        }),
    }

    // ordinary mode only: Seidel eigenvalues relate to adjacency eigenvalues
    if instance.assignment().subgroup.is_trivial() {
        match seidel_relation_check(
            instance.base(),
            instance.assignment(),
            &instance.irreps,
            args.tol,
        ) {
            Ok(report) => {
                let worst = report
                    .per_irrep
                    .iter()
                    .map(|(_, d)| *d)
                    .fold(report.trivial_deviation, f64::max);
                checks.push(Check {
                    name: "seidel_relation".into(),
                    passed: report.passed,
                    detail: format!("max deviation {}", fmt12(worst)),
                });
            }
            Err(Error::UnsupportedJ(reason)) => checks.push(Check {
                name: "seidel_relation".into(),
                passed: true,
                detail: format!("skipped: all-ones base matrix unsupported ({reason})"),
            }),
            Err(e) => checks.push(Check {
                name: "seidel_relation".into(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }

    // the combinatorial and algebraic connectivity views must agree
    if instance.base().is_connected() {
        let report = connectivity_check(instance.base(), instance.assignment())?;
        checks.push(Check {
            name: "connectivity_agreement".into(),
            passed: report.lift_connected == report.local_group_condition,
            detail: format!(
                "lift connected: {}, |K_u·H| = |K|: {}, components: {}",
                report.lift_connected, report.local_group_condition, report.lift_components
            ),
        });
    } else {
        checks.push(Check {
            name: "connectivity_agreement".into(),
            passed: true,
            detail: "skipped: base graph is disconnected".into(),
        });
    }

    let all_passed = checks.iter().all(|c| c.passed);
    if args.json {
        let report = Report {
            instance: instance_info(&instance)?,
            spectra: entries,
            checks,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("verification report for {}", args.input.display());
        for check in &checks {
            println!(
                "  {:<28} {}  ({})",
                check.name,
                if check.passed { "PASS" } else { "FAIL" },
                check.detail
            );
        }
        println!();
        println!("result: {}", if all_passed { "PASS" } else { "FAIL" });
    }
    Ok(if all_passed { 0 } else { 2 })
}

fn cmd_info(args: &CommonArgs) -> Result<u8, Error> {
    let instance = load(args)?;
    let assignment = instance.assignment();
    let base = instance.base();
    let group = &assignment.group;
    let table = CosetTable::new(group, &assignment.subgroup)?;
    let n = table.index();

    println!("base graph: {} vertices, {} arc pairs", base.order(), base.arcs().len() / 2);
    for u in 0..base.order() {
        println!("  vertex {} (degree {})", base.vertex_name(u), base.degree(u));
    }
    println!("group: order {}, degree {}", group.order(), group.degree());
    println!(
        "subgroup: order {}, index {n}{}",
        assignment.subgroup.order(),
        if assignment.subgroup.is_trivial() {
            " (trivial: ordinary voltages)"
        } else {
            ""
        }
    );
    println!(
        "subgroup normal in group: {}",
        assignment.subgroup.is_normal_in(group)?
    );
    let group_core = core(group, &assignment.subgroup)?;
    println!("core of subgroup trivial: {}", group_core.is_trivial());
    println!("coset representatives:");
    for (i, rep) in table.representatives().iter().enumerate() {
        println!("  {i}: {rep}");
    }
    println!("lift: {} vertices", base.order() * n);
    if base.is_connected() {
        let report = connectivity_check(base, assignment)?;
        let local = local_group(base, assignment, 0)?;
        println!("lift connected: {} ({} components)", report.lift_connected, report.lift_components);
        println!("local group order: {}", local.order());
        println!("|K_u·H| = |K|: {}", report.local_group_condition);
    } else {
        println!("base graph disconnected; skipping connectivity analysis");
    }

    let components = liftspec_core::base_components(
        base,
        assignment,
        &table,
        instance.options.j_element.as_ref(),
    )?;
    println!();
    println!("B(A) =\n{}", components.adjacency.pretty());
    println!("B(D) =\n{}", components.degree.pretty());
    match components.all_ones() {
        Ok(b) => {
            if let Some(j) = components.j_element() {
                println!("B(J) (from element {j}) =\n{}", b.pretty());
            } else {
                println!("B(J) (sum over the group) =\n{}", b.pretty());
            }
        }
        Err(_) => println!(
            "B(J): unsupported ({})",
            components
                .j_unsupported_reason()
                .unwrap_or("no suitable element")
        ),
    }
    let (label, coeffs) = chosen_coeffs(args)?;
    if args.matrix.is_some() || args.coeffs.is_some() {
        let b = liftspec_core::universal_base_matrix(&components, coeffs)?;
        println!("B(U) for {label} =\n{}", b.pretty());
    }
    println!();
    println!("irreps ({}):", instance.irreps.irreps().len());
    for rep in instance.irreps.irreps() {
        let (_, rank) = liftspec_core::subgroup_sum(
            rep,
            group,
            &assignment.subgroup,
            args.rank_tol,
        )?;
        println!(
            "  {:<10} dim {}  rank(ρ(H)) = {rank}",
            rep.name(),
            rep.dimension()
        );
    }
    Ok(0)
}
