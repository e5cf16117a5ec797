use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use l2stab::experiments::{
    convergence_svg, run_convergence, run_psd_sweep, run_stability, ConvergenceSpec, ForcingProfile,
    MeshFamily, StabilitySpec,
};
use l2stab::l2coeff::{lemma_properties_check, CoeffMethod, FracOrder, L2Operator, COEFF_CSV_HEADER};
use l2stab::mesh::{
    check_corollary_box, check_rho_condition, check_thm1, constraint_constants, read_mesh_csv,
    write_mesh_csv, Criterion, TimeMesh,
};
use l2stab::quadform::{g_vector, lower_bound_gap, psd_min_eig, QuadFormMatrix, GAP_REL_TOL};
use l2stab::solver::{exact_solution, h1_seminorm, solve, Grid2D, RhsMode, SolverConfig};

use crate::config::CliConfig;

// stdout writes that tolerate a closed pipe
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}
use crate::{Cli, Command, MeshArgs, MeshCommand, PdeArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

enum Failure {
    Usage(String),
    Lib(l2stab::Error),
}

impl From<l2stab::Error> for Failure {
    fn from(e: l2stab::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    cfg: CliConfig,
    out_dir: PathBuf,
}

impl Ctx {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Failure> {
        if let Some(v) = flag {
            return Ok(v);
        }
        Ok(self.cfg.get(key).map_err(Failure::Usage)?.unwrap_or(default))
    }

    fn alpha(&self, flag: Option<f64>) -> Result<FracOrder, Failure> {
        Ok(FracOrder::new(self.get(flag, "alpha", 0.5)?)?)
    }

    fn mesh(&self, args: &MeshArgs) -> Result<TimeMesh, Failure> {
        let file = args.input.clone().or_else(|| self.cfg.get_str("mesh-file").map(PathBuf::from));
        if let Some(path) = file {
            return Ok(read_mesh_csv(&path)?);
        }
        let kind = args
            .kind
            .clone()
            .or_else(|| self.cfg.get_str("kind").map(str::to_string))
            .unwrap_or_else(|| "graded".into());
        let k = self.get(args.k, "K", 20)?;
        let horizon = self.get(args.horizon, "T", 1.0)?;
        Ok(match kind.as_str() {
            "uniform" => TimeMesh::uniform(k, horizon)?,
            "graded" => TimeMesh::graded(k, self.get(args.r, "r", 2.8)?, horizon)?,
            "rvariable" => TimeMesh::rvariable(k, horizon)?,
            other => return Err(Failure::Usage(format!("unknown mesh kind `{other}`"))),
        })
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, Failure> {
        fs::create_dir_all(&self.out_dir)?;
        let path = self.out_dir.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }
}

pub fn run(cli: Cli) -> u8 {
    let cfg = match &cli.config {
        Some(p) => match CliConfig::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
        None => CliConfig::default(),
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| cfg.get_str("out-dir").map(PathBuf::from))
        .or_else(|| std::env::var_os("L2STAB_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let ctx = Ctx { cfg, out_dir };

    let threads = match ctx.get(cli.threads, "threads", 0usize) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }

    match dispatch(&ctx, cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            match f {
                Failure::Lib(e) if e.is_numerical() => EXIT_NUMERICAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: Command) -> Outcome {
    match cmd {
        Command::Mesh(MeshCommand::Gen { mesh, out }) => mesh_gen(ctx, &mesh, out),
        Command::Mesh(MeshCommand::Check { mesh, criterion }) => mesh_check(ctx, &mesh, &criterion),
        Command::Constants => {
            say_raw!("{}", constraint_constants());
            Ok(EXIT_OK)
        }
        Command::Coeffs { mesh, alpha, row, oracle, lemma, out } => {
            coeffs(ctx, &mesh, alpha, row, oracle, lemma, out.as_deref())
        }
        Command::Psd { mesh, alpha, order, gap } => psd(ctx, &mesh, alpha, order, gap),
        Command::PsdSweep { r_values, alphas, n } => {
            let res = run_psd_sweep(&r_values, &alphas, n)?;
            let csv = res.to_csv();
            let path = ctx.write("psd.csv", &csv)?;
            say_raw!("{csv}");
            for a in res.non_monotone_alphas() {
                eprintln!("note: alpha={a} regains semidefiniteness at a larger r");
            }
            eprintln!("wrote {}", path.display());
            Ok(EXIT_OK)
        }
        Command::Solve { mesh, pde } => solve_cmd(ctx, &mesh, &pde),
        Command::Convergence { alphas, ks, families, grid, rhs_mode, eps, horizon } => {
            let mut spec = ConvergenceSpec::default();
            if let Some(a) = alphas {
                spec.alphas = a;
            }
            if let Some(k) = ks {
                spec.ks = k;
            }
            if let Some(f) = families {
                spec.families = f.iter().map(|s| s.parse::<MeshFamily>()).collect::<Result<_, _>>()?;
            }
            spec.grid_n = ctx.get(grid, "N", spec.grid_n)?;
            spec.eps = ctx.get(eps, "eps", spec.eps)?;
            spec.horizon = ctx.get(horizon, "T", spec.horizon)?;
            spec.rhs_mode = rhs(ctx, rhs_mode)?;
            let table = run_convergence(&spec)?;
            let csv = table.to_csv();
            let path = ctx.write("table.csv", &csv)?;
            for a in &spec.alphas {
                ctx.write(&format!("convergence_alpha_{a}.svg"), &convergence_svg(&table, *a))?;
            }
            say_raw!("{csv}");
            eprintln!("wrote {}", path.display());
            Ok(EXIT_OK)
        }
        Command::Stability { mesh, alpha, eps, grid, omega } => {
            let m = ctx.mesh(&mesh)?;
            let mut spec = StabilitySpec::new(m, ctx.alpha(alpha)?);
            spec.eps = ctx.get(eps, "eps", spec.eps)?;
            spec.grid_n = ctx.get(grid, "N", spec.grid_n)?;
            spec.profile = ForcingProfile::SquareWave { omega };
            let s = run_stability(&spec)?;
            let path = ctx.write("stability_trajectory.csv", &s.trajectory.trajectory_csv())?;
            say!("sup_h1={:.12e}", s.sup_h1);
            say!("bound={:.12e}", s.bound);
            say!("bounded={}", s.bounded);
            say!("first_half_max={:.12e} second_half_max={:.12e}", s.first_half_max, s.second_half_max);
            say!("no_blowup={}", s.no_blowup);
            say!("mesh_admissible={}", s.mesh_admissible);
            eprintln!("wrote {}", path.display());
            if !s.mesh_admissible {
                eprintln!("warning: mesh is outside the ratio hypotheses; verdict is diagnostic only");
                return Ok(EXIT_OK);
            }
            Ok(if s.bounded && s.no_blowup { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn rhs(ctx: &Ctx, flag: Option<String>) -> Result<RhsMode, Failure> {
    match flag.or_else(|| ctx.cfg.get_str("rhs-mode").map(str::to_string)) {
        Some(s) => Ok(s.parse()?),
        None => Ok(RhsMode::SemidiscreteManufactured),
    }
}

fn mesh_gen(ctx: &Ctx, args: &MeshArgs, out: Option<PathBuf>) -> Outcome {
    let mesh = ctx.mesh(args)?;
    let path = match out {
        Some(p) => p,
        None => {
            fs::create_dir_all(&ctx.out_dir)?;
            ctx.out_dir.join("mesh.csv")
        }
    };
    write_mesh_csv(&mesh, &path)?;
    eprintln!("wrote {} ({} steps)", path.display(), mesh.n());
    Ok(EXIT_OK)
}

fn mesh_check(ctx: &Ctx, args: &MeshArgs, criterion: &str) -> Outcome {
    let mesh = ctx.mesh(args)?;
    let report = match criterion.parse::<Criterion>()? {
        Criterion::RhoCondition => check_rho_condition(&mesh)?,
        Criterion::Thm1 => check_thm1(&mesh)?,
        Criterion::CorollaryBox => check_corollary_box(&mesh)?,
    };
    say!("{report}");
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn coeffs(
    ctx: &Ctx,
    args: &MeshArgs,
    alpha: Option<f64>,
    row: Option<usize>,
    oracle: bool,
    lemma: bool,
    out: Option<&Path>,
) -> Outcome {
    let mesh = ctx.mesh(args)?;
    let alpha = ctx.alpha(alpha)?;
    let method = if oracle { CoeffMethod::Quadrature } else { CoeffMethod::Closed };
    let op = L2Operator::with_method(&mesh, alpha, method);
    let csv = match row {
        Some(k) => format!("{COEFF_CSV_HEADER}{}", op.row_csv(k)?),
        None => op.coefficients_csv()?,
    };
    match out {
        Some(p) => {
            fs::write(p, &csv)?;
            eprintln!("wrote {}", p.display());
        }
        None => say_raw!("{csv}"),
    }
    if lemma {
        let report = lemma_properties_check(&mesh, alpha, mesh.n())?;
        if out.is_some() {
            say!("{report}");
        } else {
            eprintln!("{report}");
        }
        if !report.all_hold() {
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    Ok(EXIT_OK)
}

fn psd(ctx: &Ctx, args: &MeshArgs, alpha: Option<f64>, order: Option<usize>, gap: bool) -> Outcome {
    let mesh = ctx.mesh(args)?;
    let alpha = ctx.alpha(alpha)?;
    let n = order.unwrap_or(mesh.n());
    let m = QuadFormMatrix::assemble(&mesh, alpha, n)?;
    let verdict = psd_min_eig(&m);
    say!("{verdict}");
    let mut ok = verdict.psd;
    if gap {
        let g = g_vector(&mesh, alpha, n)?;
        let (value, norm) = lower_bound_gap(&m, &g)?;
        let holds = value >= -GAP_REL_TOL * norm;
        say!("ghat={:.12e} gap={:.12e} norm={:.12e} lower_bound={holds}", g.ghat, value, norm);
        ok &= holds;
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn solve_cmd(ctx: &Ctx, args: &MeshArgs, pde: &PdeArgs) -> Outcome {
    let mesh = ctx.mesh(args)?;
    let alpha = ctx.alpha(pde.alpha)?;
    let grid = Grid2D::new(ctx.get(pde.grid, "N", 32)?)?;
    let eps = ctx.get(pde.eps, "eps", 0.1)?;
    let mode = rhs(ctx, pde.rhs_mode.clone())?;
    let mut cfg = SolverConfig::new(alpha, eps, mesh, grid).with_rhs(mode);
    cfg.cg_rel_tol = ctx.get(pde.cg_tol, "cg-tol", cfg.cg_rel_tol)?;
    if pde.oracle {
        cfg.coeff_method = CoeffMethod::Quadrature;
    }
    let res = solve(&cfg)?;
    let field = ctx.write("field.csv", &res.final_field.to_csv())?;
    let traj = ctx.write("trajectory.csv", &res.trajectory_csv())?;
    let horizon = cfg.mesh.horizon();
    say!("steps={} T={horizon}", cfg.mesh.n());
    say!("final_h1_seminorm={:.12e}", res.h1.last().copied().unwrap_or(0.0));
    say!("max_cg_iters={}", res.cg_iters.iter().max().copied().unwrap_or(0));
    let err = h1_seminorm(&res.final_field.sub(&exact_solution(grid, alpha, horizon))?);
    say!("h1_error_vs_manufactured={err:.12e}");
    eprintln!("wrote {} and {}", field.display(), traj.display());
    Ok(EXIT_OK)
}
