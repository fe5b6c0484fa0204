use std::path::PathBuf;
use std::process::ExitCode;

use arcspace::{
    arc_presentation, classicality_report, cohomology_dim, cohomology_euler_series, compare_graded,
    complex_euler_series, free_euler_series, pochhammer_finite, weakly_smooth_check, BiSeries,
    CoeffConvention, ColumnRange, EulerConvention, Presentation, Weighting,
};
use arcspace_cli::{parse, print, report, CliError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "arcspace",
    version,
    about = "Exact arc-algebra computations on differential graded presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvArg {
    Euler,
    Super,
}

impl From<ConvArg> for EulerConvention {
    fn from(c: ConvArg) -> Self {
        match c {
            ConvArg::Euler => EulerConvention::Euler,
            ConvArg::Super => EulerConvention::Super,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum CoeffConvArg {
    #[default]
    Zero,
    Full,
}

impl From<CoeffConvArg> for CoeffConvention {
    fn from(c: CoeffConvArg) -> Self {
        match c {
            CoeffConvArg::Zero => CoeffConvention::Zero,
            CoeffConvArg::Full => CoeffConvention::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation file and run the differential-graded checks
    Validate { file: PathBuf },
    /// Build the level-n arc presentation
    Arcs {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        /// Print the arc presentation in the file grammar
        #[arg(long)]
        print: bool,
    },
    /// One homotopy dimension dim pi_i of the level-n arcs
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        w: u32,
        /// Internal weight of the piece (graded files)
        #[arg(long)]
        iw: Option<i64>,
        /// Total-degree cap (files without a full internal grading)
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Table of dim pi_i over a rectangle of columns, with verdict
    ClassicalCheck {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        wmax: u32,
        #[arg(long)]
        iwmax: Option<i64>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Weak smoothness of the cotangent complex in a bounded range
    WeakSmooth {
        file: PathBuf,
        #[arg(long)]
        iwmax: Option<i64>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Compare the associated graded of level n with the symmetric model
    Gr {
        file: PathBuf,
        /// Level of the graded object (compared against the model built
        /// from level n-1)
        #[arg(long)]
        n: u32,
        #[arg(long)]
        wmax: u32,
        #[arg(long)]
        iwmax: i64,
        #[arg(long, value_enum, default_value_t)]
        coeff_conv: CoeffConvArg,
    },
    /// Bigraded Euler series of the level-n arc algebra
    Euler {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        qmax: u32,
        #[arg(long)]
        zmax: u32,
        #[arg(long, value_enum, default_value_t = ConvArg::Euler)]
        conv: ConvArg,
        /// Compare against (sign z^EXP; q) / (z; q), truncated at the level
        #[arg(long, num_args = 2, value_names = ["SIGN", "EXP"], allow_hyphen_values = true)]
        against_pochhammer: Option<Vec<String>>,
    },
    /// Combined machine-readable report
    Report {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        wmax: Option<u32>,
        #[arg(long)]
        iwmax: Option<i64>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        qmax: Option<u32>,
        #[arg(long)]
        zmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = ConvArg::Euler)]
        conv: ConvArg,
        #[arg(long, value_enum, default_value_t)]
        coeff_conv: CoeffConvArg,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(file: &PathBuf) -> Result<(String, Presentation), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let pres = parse::parse_presentation(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    Ok((text, pres))
}

fn column_range(iwmax: Option<i64>, cap: Option<u32>) -> Result<ColumnRange, CliError> {
    match (iwmax, cap) {
        (Some(m), None) => Ok(ColumnRange::InternalUpTo(m)),
        (None, Some(c)) => Ok(ColumnRange::Cap(c)),
        _ => Err(CliError::Input(
            "exactly one of --iwmax or --cap is required".into(),
        )),
    }
}

fn weighting(iw: Option<i64>, cap: Option<u32>) -> Result<Weighting, CliError> {
    match (iw, cap) {
        (Some(m), None) => Ok(Weighting::Internal(m)),
        (None, Some(c)) => Ok(Weighting::Cap(c)),
        _ => Err(CliError::Input(
            "exactly one of --iw or --cap is required".into(),
        )),
    }
}

fn weighting_label(w: &Weighting) -> String {
    match w {
        Weighting::Internal(iw) => format!("iw={iw}"),
        Weighting::Cap(c) => format!("cap={c}"),
    }
}

fn parse_sign(s: &str) -> Result<i8, CliError> {
    match s {
        "+" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(CliError::Input(format!(
            "pochhammer sign must be + or -, found '{other}'"
        ))),
    }
}

/// The level-truncated comparison product
/// `prod_{i<=n}(1 + sign q^i z^e) / prod_{i<=n}(1 - q^i z)`; once the level
/// reaches qmax this equals the infinite product inside the rectangle.
fn comparison_product(
    sign: i8,
    z_exp: u32,
    level: u32,
    qmax: u32,
    zmax: u32,
) -> Result<BiSeries, CliError> {
    let num: BiSeries = pochhammer_finite(sign, z_exp, level + 1, qmax, zmax);
    let den: BiSeries = pochhammer_finite(-1, 1, level + 1, qmax, zmax);
    Ok(num.mul(&den.invert().map_err(CliError::Engine)?))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { file } => {
            let (_, pres) = read_input(&file)?;
            let graded = if pres.is_graded() {
                ", internally graded"
            } else {
                ""
            };
            println!(
                "valid presentation: {} generators{graded}",
                pres.num_generators()
            );
        }
        Command::Arcs {
            file,
            n,
            print: do_print,
        } => {
            let (_, pres) = read_input(&file)?;
            let arc = arc_presentation(&pres, n)?;
            println!(
                "level {n} arc presentation: {} generators",
                arc.presentation().num_generators()
            );
            if do_print {
                print!("{}", print::presentation_file(arc.presentation()));
            }
        }
        Command::Cohomology {
            file,
            n,
            i,
            w,
            iw,
            cap,
        } => {
            let (_, pres) = read_input(&file)?;
            let weighting = weighting(iw, cap)?;
            let arc = arc_presentation(&pres, n)?;
            let dim = cohomology_dim(arc.presentation(), i, w, &weighting)?;
            println!("dim pi_{i}(w={w}, {}) = {dim}", weighting_label(&weighting));
        }
        Command::ClassicalCheck {
            file,
            n,
            wmax,
            iwmax,
            cap,
        } => {
            let (_, pres) = read_input(&file)?;
            let range = column_range(iwmax, cap)?;
            let rep = classicality_report(&pres, n, wmax, range)?;
            print_classicality(&rep);
        }
        Command::WeakSmooth { file, iwmax, cap } => {
            let (_, pres) = read_input(&file)?;
            let range = column_range(iwmax, cap)?;
            let result = weakly_smooth_check(&pres, range)?;
            if result.weakly_smooth_in_range() {
                println!("weakly smooth in range ({})", range_label(&range));
            } else {
                let (entry, class) = result.witness.as_ref().unwrap();
                println!(
                    "NOT weakly smooth: dim pi_{}(w=1, {}) = {}, witness {}",
                    entry.i,
                    weighting_label(&entry.weighting),
                    entry.dim,
                    result.complex.presentation().polynomial_string(class)
                );
            }
        }
        Command::Gr {
            file,
            n,
            wmax,
            iwmax,
            coeff_conv,
        } => {
            let (_, pres) = read_input(&file)?;
            let cmp = compare_graded(
                &pres,
                n,
                wmax,
                ColumnRange::InternalUpTo(iwmax),
                coeff_conv.into(),
            )?;
            if cmp.matches() {
                println!(
                    "associated graded matches the symmetric model (level {n}, convention {}): dimensions and differentials agree on {} pieces",
                    cmp.convention, cmp.pieces_checked
                );
            } else {
                println!(
                    "MISMATCH (level {n}, convention {}): {}",
                    cmp.convention,
                    cmp.first_mismatch.as_deref().unwrap_or("unknown")
                );
            }
        }
        Command::Euler {
            file,
            n,
            qmax,
            zmax,
            conv,
            against_pochhammer,
        } => {
            let (_, pres) = read_input(&file)?;
            let arc = arc_presentation(&pres, n)?;
            let convention: EulerConvention = conv.into();
            let series = free_euler_series(arc.presentation(), qmax, zmax, convention)?;
            println!("free Euler series of the level-{n} arcs, convention {convention}:");
            print!("{}", series.grid_string());
            if let Some(args) = against_pochhammer {
                let sign = parse_sign(&args[0])?;
                let z_exp: u32 = args[1].parse().map_err(|_| {
                    CliError::Input(format!("bad pochhammer exponent '{}'", args[1]))
                })?;
                if z_exp == 0 {
                    return Err(CliError::Input(
                        "pochhammer exponent must be positive".into(),
                    ));
                }
                let product = comparison_product(sign, z_exp, n, qmax, zmax)?;
                let sign_str = if sign > 0 { "+" } else { "-" };
                println!(
                    "pochhammer product ({sign_str}z^{z_exp}; q) / (z; q), truncated at level {n}:"
                );
                print!("{}", product.grid_string());
                if product == series {
                    println!("match within rectangle");
                } else {
                    let mm = first_mismatch(&series, &product);
                    println!("MISMATCH at q^{} z^{}", mm.0, mm.1);
                }
            }
        }
        Command::Report {
            file,
            n,
            wmax,
            iwmax,
            cap,
            qmax,
            zmax,
            conv,
            coeff_conv,
            out,
        } => {
            let (text, pres) = read_input(&file)?;
            let json = build_report(
                &text, &pres, n, wmax, iwmax, cap, qmax, zmax, conv, coeff_conv,
            )?;
            match out {
                Some(path) => std::fs::write(&path, json)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
                None => print!("{json}"),
            }
        }
    }
    Ok(())
}

fn range_label(r: &ColumnRange) -> String {
    match r {
        ColumnRange::InternalUpTo(m) => format!("iw <= {m}"),
        ColumnRange::Cap(c) => format!("cap {c}"),
    }
}

fn print_classicality(rep: &arcspace::ClassicalityReport) {
    let n = rep.level();
    if rep.classical_in_range {
        println!(
            "classical in range (level {n}, w <= {}, {}): all {} entries with i >= 1 vanish",
            rep.w_max,
            range_label(&rep.range),
            rep.entries.len()
        );
    } else {
        let (entry, class) = rep.witness.as_ref().unwrap();
        println!(
            "NOT classical: dim pi_{}(w={}, {}) = {}, witness {}",
            entry.i,
            entry.w,
            weighting_label(&entry.weighting),
            entry.dim,
            rep.arc.presentation().polynomial_string(class)
        );
        for e in rep.entries.iter().filter(|e| e.dim > 0) {
            println!(
                "  dim pi_{}(w={}, {}) = {}",
                e.i,
                e.w,
                weighting_label(&e.weighting),
                e.dim
            );
        }
    }
}

fn first_mismatch(a: &BiSeries, b: &BiSeries) -> (u32, u32) {
    for w in 0..=a.qmax() {
        for m in 0..=a.zmax() {
            if a.coeff(w, m) != b.coeff(w, m) {
                return (w, m);
            }
        }
    }
    (0, 0)
}

#[allow(clippy::too_many_arguments)]
fn build_report(
    text: &str,
    pres: &Presentation,
    n: u32,
    wmax: Option<u32>,
    iwmax: Option<i64>,
    cap: Option<u32>,
    qmax: Option<u32>,
    zmax: Option<u32>,
    conv: ConvArg,
    coeff_conv: CoeffConvArg,
) -> Result<String, CliError> {
    let convention: EulerConvention = conv.into();
    let coeff_convention: CoeffConvention = coeff_conv.into();
    let params = report::Params {
        n: Some(n),
        wmax,
        iwmax,
        cap,
        qmax,
        zmax,
        conv: Some(convention.to_string()),
        coeff_conv: Some(coeff_convention.to_string()),
        ..Default::default()
    };
    let mut rep = report::Report::new("report", text, params);
    rep.validation = Some(report::validation_section(pres));
    let arc = arc_presentation(pres, n)?;
    rep.arc = Some(report::arc_section(n, arc.presentation()));
    if let Some(wmax) = wmax {
        let range = column_range(iwmax, cap)?;
        let cls = classicality_report(pres, n, wmax, range)?;
        rep.classicality = Some(report::classicality_section(&cls));
        let ws = weakly_smooth_check(pres, range)?;
        rep.weak_smoothness = Some(report::weak_smooth_section(&ws));
        if n >= 1 {
            let cmp = compare_graded(pres, n, wmax, range, coeff_convention)?;
            rep.degeneration = Some(report::degeneration_section(&cmp));
        }
    }
    if let (Some(qm), Some(zm)) = (qmax, zmax) {
        let p = arc.presentation();
        let free = free_euler_series(p, qm, zm, convention)?;
        let census = complex_euler_series(p, qm, zm)?;
        let cohom = cohomology_euler_series(p, qm, zm)?;
        let euler_free = free_euler_series(p, qm, zm, EulerConvention::Euler)?;
        let triple = euler_free == census && census == cohom;
        rep.euler = Some(report::EulerSection {
            level: n,
            qmax: qm,
            zmax: zm,
            convention: convention.to_string(),
            free_series: report::series_grid(&free),
            census_series: report::series_grid(&census),
            cohomology_series: report::series_grid(&cohom),
            triple_agreement: triple,
            pochhammer: None,
        });
    }
    Ok(rep.to_json())
}
