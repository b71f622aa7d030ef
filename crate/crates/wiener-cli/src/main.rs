//! `wiener`: batch front end for evaluation, quadrature, modal transforms,
//! connections and the stiffness matrix of the Wiener rational functions.
//!
//! Exit status is 0 on success, 2 for invalid input and 3 when an iterative
//! solver does not converge. `WIENER_TOL` overrides the 1e-12 tolerance of
//! the iterative eigenvalue solver.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wiener_core::connections::{
    jacobi_connect, modify_s, psi_psi_connect, szego_to_weighted, Direction,
};
use wiener_core::domain_maps::Chart;
use wiener_core::fourier_quad::{
    analyze, fourier_theta_rule, map_rule_to_x, synthesize, Basis, XWeights,
};
use wiener_core::io::{
    fmt_real, read_coefficients, read_points, read_samples, write_coefficients, write_rule,
    write_samples, write_triplets,
};
use wiener_core::modal::{canonical_index, canonical_position, BasisKind};
use wiener_core::par::Strategy;
use wiener_core::stiffness::{
    apply_derivative, assemble_stiffness_on, spectral_radius, table_eig, IndexSet, TABLE_N,
    TABLE_REFERENCE, TABLE_S,
};
use wiener_core::{Complex64, Error};

#[derive(Parser)]
#[command(
    name = "wiener",
    version,
    about = "Generalized Wiener rational functions and Szego-Fourier functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate basis functions at points; CSV `point,index,re,im`.
    Eval(EvalArgs),
    /// Print a symmetric Fourier quadrature rule; CSV `n,node,weight`.
    Quad(QuadArgs),
    /// Modal analysis and synthesis.
    #[command(subcommand)]
    Transform(Transform),
    /// Convert a coefficient file to another parameter or family.
    Connect(ConnectArgs),
    /// Stiffness matrix of the weighted Wiener functions phi^(s).
    Stiffness(StiffnessArgs),
    /// Recompute the 5x5 table of maximum stiffness eigenvalues.
    TableEig,
}

/// Real number, also accepting `pi` and `pi^2`.
fn real(text: &str) -> Result<f64, String> {
    match text.trim() {
        "pi" => Ok(std::f64::consts::PI),
        "pi^2" => Ok(std::f64::consts::PI * std::f64::consts::PI),
        t => t.parse().map_err(|_| format!("`{t}` is not a number")),
    }
}

#[derive(Args, Clone)]
struct BasisArgs {
    /// Psi, psi, Phi, phi, rho, PB, pb, PL, pl or JacobiP.
    #[arg(long)]
    kind: BasisKind,
    #[arg(long, value_parser = real)]
    gamma: Option<f64>,
    #[arg(long, value_parser = real)]
    s: Option<f64>,
    #[arg(long, value_parser = real)]
    t: Option<f64>,
    #[arg(long, value_parser = real)]
    alpha: Option<f64>,
    #[arg(long, value_parser = real)]
    beta: Option<f64>,
}

impl BasisArgs {
    fn basis(&self) -> Result<Basis, Error> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Contract(format!("--kind {} needs --{name}", self.kind)))
        };
        let params = match self.kind {
            BasisKind::Psi | BasisKind::PsiWeighted => vec![need(self.gamma, "gamma")?],
            BasisKind::MappedJacobi | BasisKind::MappedJacobiWeighted => {
                vec![need(self.s, "s")?, need(self.t, "t")?]
            }
            BasisKind::JacobiP => vec![need(self.alpha, "alpha")?, need(self.beta, "beta")?],
            _ => vec![need(self.s, "s")?],
        };
        Basis::from_kind(self.kind, &params)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Points {
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    r: Option<f64>,
    /// File of points, one per line or as the first CSV column.
    #[arg(long)]
    points: Option<PathBuf>,
    /// `start:end:count`, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
}

impl Points {
    fn resolve(&self, chart: Chart) -> Result<Vec<f64>, Error> {
        let single = [
            (self.x, Chart::X),
            (self.theta, Chart::Theta),
            (self.r, Chart::R),
        ];
        for (v, c) in single {
            if let Some(v) = v {
                if c != chart {
                    return Err(Error::Contract(format!(
                        "this basis is evaluated on the {chart:?} chart, not {c:?}"
                    )));
                }
                return Ok(vec![v]);
            }
        }
        if let Some(path) = &self.points {
            return read_points(open(path)?);
        }
        let text = self.range.as_deref().unwrap_or_default();
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::Contract(format!("--range expects start:end:count, got `{text}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let a = real(parts[0]).map_err(|_| bad())?;
        let b = real(parts[1]).map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        Ok(match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n)
                .map(|j| a + (b - a) * j as f64 / (n - 1) as f64)
                .collect(),
        })
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    basis: BasisArgs,
    /// Single Fourier index.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["n", "k_max", "n_max"])]
    k: Option<i64>,
    /// Single polynomial degree.
    #[arg(long, conflicts_with_all = ["k_max", "n_max"])]
    n: Option<usize>,
    /// All Fourier indices |k| <= K, in storage order.
    #[arg(long, conflicts_with = "n_max")]
    k_max: Option<usize>,
    /// All degrees 0..=N.
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    points: Points,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long, value_parser = real, conflicts_with = "s", required_unless_present = "s")]
    gamma: Option<f64>,
    /// Decay parameter; the rule is built for gamma = s - 1.
    #[arg(long, value_parser = real)]
    s: Option<f64>,
    /// Number of nodes.
    #[arg(long = "N")]
    nodes: usize,
    /// Weights for the weighted families psi / phi instead of Psi / Phi.
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value_t = ChartArg::Theta)]
    chart: ChartArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Theta,
    X,
}

#[derive(Subcommand)]
enum Transform {
    /// Points at which `analyze` expects samples.
    Nodes {
        #[command(flatten)]
        basis: BasisArgs,
        /// K for Fourier kinds, number of modes N otherwise.
        #[arg(long)]
        extent: usize,
    },
    /// Samples (`point,re,im` at the `nodes` points) to a coefficient file.
    Analyze {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        extent: usize,
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient file to samples at the given points.
    Synthesize {
        #[arg(long)]
        coeffs: PathBuf,
        #[command(flatten)]
        points: Points,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    /// Psi^(gamma) -> Psi^(gamma+G) (also Phi^(s) -> Phi^(s+G)).
    #[value(name = "psi-psi")]
    PsiPsi,
    /// Psi^(G) <-> psi^(G) (also Phi^(s) <-> phi^(s)).
    #[value(name = "Psi-psi")]
    SzegoWeighted,
    /// psi^(F) -> psi^(G) (also phi^(s) -> phi^(t)).
    #[value(name = "s-mod")]
    SMod,
    /// P^(alpha,beta) -> P^(alpha+A,beta+B).
    Jacobi,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Backward => Direction::Backward,
        }
    }
}

#[derive(Args)]
struct ConnectArgs {
    #[arg(value_enum)]
    pipeline: Pipeline,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    direction: DirectionArg,
    /// Parameter shift G for psi-psi.
    #[arg(long, value_parser = real)]
    shift: Option<f64>,
    /// Target parameter for s-mod.
    #[arg(long, value_parser = real)]
    target: Option<f64>,
    /// Shift of alpha for jacobi.
    #[arg(long, default_value_t = 0)]
    a: i64,
    /// Shift of beta for jacobi.
    #[arg(long, default_value_t = 0)]
    b: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexSetArg {
    Canonical,
    Mirrored,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("action").required(true).args(["export", "radius", "apply"]))]
struct StiffnessArgs {
    #[arg(long, value_parser = real)]
    s: f64,
    /// Matrix size (ignored by --apply, which uses the file's extent).
    #[arg(long = "N")]
    size: Option<usize>,
    /// Write the nonzeros as `row_k,col_k,im_value`.
    #[arg(long)]
    export: bool,
    /// Print the spectral radius.
    #[arg(long)]
    radius: bool,
    /// Differentiate a phi^(s) coefficient file.
    #[arg(long)]
    apply: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = IndexSetArg::Canonical)]
    index_set: IndexSetArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open(path: &Path) -> Result<Box<dyn Read>, Error> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path)
        .map(|f| Box::new(f) as Box<dyn Read>)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn tolerance() -> Result<f64, Error> {
    match std::env::var("WIENER_TOL") {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t > 0.0 => Ok(t),
            _ => Err(Error::Contract(format!(
                "WIENER_TOL must be a positive number, got `{v}`"
            ))),
        },
        Err(_) => Ok(1e-12),
    }
}

fn eval(args: &EvalArgs) -> Result<(), Error> {
    let basis = args.basis.basis()?;
    let fourier = args.basis.kind.is_fourier();
    let indices: Vec<i64> = match (args.k, args.n, args.k_max, args.n_max) {
        (Some(k), None, None, None) if fourier => vec![k],
        (None, Some(n), None, None) if !fourier => vec![n as i64],
        (None, None, Some(k), None) if fourier => (0..2 * k + 1).map(canonical_index).collect(),
        (None, None, None, Some(n)) if !fourier => (0..=n as i64).collect(),
        _ => {
            let hint = if fourier {
                "--k or --k-max"
            } else {
                "--n or --n-max"
            };
            return Err(Error::Contract(format!(
                "{} is indexed with {hint}",
                args.basis.kind
            )));
        }
    };
    let extent = if fourier {
        indices
            .iter()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            .max(1)
    } else {
        indices.iter().copied().max().unwrap_or(0) as usize + 1
    };
    let points = args.points.resolve(basis.chart())?;
    let mut w = output(None)?;
    writeln!(w, "point,index,re,im")?;
    for p in points {
        let values = basis.eval_all(extent, p)?;
        for &k in &indices {
            let v = values[if fourier {
                canonical_position(k)
            } else {
                k as usize
            }];
            writeln!(
                w,
                "{},{k},{},{}",
                fmt_real(p),
                fmt_real(v.re),
                fmt_real(v.im)
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn quad(args: &QuadArgs) -> Result<(), Error> {
    let gamma = match (args.gamma, args.s) {
        (Some(g), _) => g,
        (None, Some(s)) => s - 1.0,
        _ => unreachable!("clap requires one of --gamma / --s"),
    };
    let theta_rule = fourier_theta_rule(gamma, args.nodes)?;
    let rule = match args.chart {
        ChartArg::Theta if args.weighted => theta_rule.small_rule(),
        ChartArg::Theta => theta_rule.big_rule(),
        ChartArg::X => {
            let s = args
                .s
                .ok_or_else(|| Error::Contract("--chart x needs --s".to_string()))?;
            let family = if args.weighted {
                XWeights::Unweighted
            } else {
                XWeights::Weighted
            };
            map_rule_to_x(&theta_rule, s, family)?
        }
    };
    let mut w = output(None)?;
    write_rule(&mut w, &rule)?;
    w.flush()?;
    Ok(())
}

fn same_point(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
}

fn transform(cmd: &Transform) -> Result<(), Error> {
    match cmd {
        Transform::Nodes { basis, extent } => {
            let rule = basis.basis()?.rule(*extent)?;
            let mut w = output(None)?;
            writeln!(w, "point")?;
            for x in rule.nodes {
                writeln!(w, "{}", fmt_real(x))?;
            }
            w.flush()?;
        }
        Transform::Analyze {
            basis,
            extent,
            samples,
            out,
        } => {
            let basis = basis.basis()?;
            let (points, values) = read_samples(open(samples)?)?;
            let nodes = basis.rule(*extent)?.nodes;
            if points.len() != nodes.len()
                || !points.iter().zip(&nodes).all(|(&a, &b)| same_point(a, b))
            {
                return Err(Error::Contract(format!(
                    "samples must be taken at the {} points printed by `transform nodes`",
                    nodes.len()
                )));
            }
            let coeffs = analyze(&basis, *extent, &values, Strategy::default())?;
            let mut w = output(out.as_deref())?;
            write_coefficients(&mut w, &coeffs)?;
            w.flush()?;
        }
        Transform::Synthesize {
            coeffs,
            points,
            out,
        } => {
            let c = read_coefficients(open(coeffs)?)?;
            let basis = Basis::from_kind(c.kind, &c.params)?;
            let pts = points.resolve(basis.chart())?;
            let values: Vec<Complex64> = synthesize(&c, &pts, Strategy::default())?;
            let mut w = output(out.as_deref())?;
            write_samples(&mut w, &pts, &values)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn connect(args: &ConnectArgs) -> Result<(), Error> {
    let input = read_coefficients(open(&args.input)?)?;
    let direction = args.direction.into();
    let result = match args.pipeline {
        Pipeline::PsiPsi => {
            let g = args
                .shift
                .ok_or_else(|| Error::Contract("psi-psi needs --shift".to_string()))?;
            psi_psi_connect(&input, g, direction)?
        }
        Pipeline::SzegoWeighted => szego_to_weighted(&input, direction)?,
        Pipeline::SMod => {
            let t = args
                .target
                .ok_or_else(|| Error::Contract("s-mod needs --target".to_string()))?;
            modify_s(&input, t)?
        }
        Pipeline::Jacobi => jacobi_connect(&input, args.a, args.b, direction)?,
    };
    let mut w = output(args.out.as_deref())?;
    write_coefficients(&mut w, &result)?;
    w.flush()?;
    Ok(())
}

fn stiffness(args: &StiffnessArgs) -> Result<(), Error> {
    let set = match args.index_set {
        IndexSetArg::Canonical => IndexSet::Canonical,
        IndexSetArg::Mirrored => IndexSet::Mirrored,
    };
    let mut w = output(args.out.as_deref())?;
    if let Some(path) = &args.apply {
        let c = read_coefficients(open(path)?)?;
        if c.kind != BasisKind::PhiWeighted
            || (c.params[0] - args.s).abs() > 1e-14 * args.s.abs().max(1.0)
        {
            return Err(Error::Contract(format!(
                "--apply expects phi coefficients with s = {}",
                args.s
            )));
        }
        write_coefficients(&mut w, &apply_derivative(&c)?)?;
    } else {
        let n = args
            .size
            .ok_or_else(|| Error::Contract("--export and --radius need --N".to_string()))?;
        let m = assemble_stiffness_on(args.s, n, set)?;
        if args.export {
            write_triplets(&mut w, &m)?;
        } else {
            writeln!(w, "{}", fmt_real(spectral_radius(&m, tolerance()?)?))?;
        }
    }
    w.flush()?;
    Ok(())
}

fn table() -> Result<(), Error> {
    let tol = tolerance()?;
    let canonical = table_eig(
        &TABLE_S,
        &TABLE_N,
        IndexSet::Canonical,
        tol,
        Strategy::default(),
    )?;
    let mirrored = table_eig(
        &TABLE_S,
        &TABLE_N,
        IndexSet::Mirrored,
        tol,
        Strategy::default(),
    )?;
    let labels = ["0.6", "1.0", "6.0", "pi^2", "15.5"];
    let mut w = output(None)?;
    writeln!(
        w,
        "{:>5} {:>4} {:>9} {:>21} {:>10} {:>21} {:>10}",
        "s", "N", "reference", "canonical", "|diff|", "mirrored", "|diff|"
    )?;
    for (i, label) in labels.iter().enumerate() {
        for (j, &n) in TABLE_N.iter().enumerate() {
            let reference = TABLE_REFERENCE[i][j];
            let c = canonical[i][j];
            let m = mirrored[i][j];
            writeln!(
                w,
                "{label:>5} {n:>4} {reference:>9.2} {:>21} {:>10.4} {:>21} {:>10.4}",
                fmt_real(c),
                (c - reference).abs(),
                fmt_real(m),
                (m - reference).abs()
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Quad(a) => quad(a),
        Command::Transform(t) => transform(t),
        Command::Connect(a) => connect(a),
        Command::Stiffness(a) => stiffness(a),
        Command::TableEig => table(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wiener: {e}");
            match e {
                Error::NonConvergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
