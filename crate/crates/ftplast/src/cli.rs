use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ftplast_core::evolution::{self, EvolutionTrace, EvolutionType};
use ftplast_core::inverse::{weights_from_angles, AngleTriple};
use ftplast_core::oracle::{oracle_minimize, DEFAULT_GRID_CELLS, DEFAULT_REFINE_ITERS};
use ftplast_core::plasticity::{
    corollary_coefficients, cosine_system_weights, sine_residuals, verify_geometric_plasticity,
    SectorAngles, Sign, TriangleRatios,
};
use ftplast_core::solver::{
    certificate_residuals, classify_case, resultant_at, solve_with, DEFAULT_MAX_ITERS,
};
use ftplast_core::{
    solve, CaseTag, Configuration, DistanceMode, Point2, SolveResult, SolverOptions,
};

use crate::error::{AppError, AppResult};
use crate::generate::{random_scene, GenOptions};
use crate::scene::{Scene, SolveJson};
use crate::{svg, trace};

#[derive(Debug, Parser)]
#[command(
    name = "ftplast",
    version,
    about = "Weighted Fermat-Torricelli points of circles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Curve,
    Set,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EvolutionArg {
    A,
    B,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find the F-T point and its angles.
    Solve {
        scene: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Write a diagram to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print the full result as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
    /// Recover normalized weights from a scene carrying a point.
    Inverse {
        scene: PathBuf,
        /// Free normalized weights for four or more circles, e.g. `w4=0.2,w5=0.1`.
        #[arg(long)]
        free: Option<String>,
    },
    /// Weights, coefficients and sign pattern of the plasticity family.
    Plasticity {
        scene: PathBuf,
        /// Free weights `w4=..,w5=..`; defaults to the scene's own.
        #[arg(long)]
        free: Option<String>,
        /// Total weight; defaults to the scene's.
        #[arg(long)]
        total: Option<f64>,
    },
    /// Classify the case and print every certificate residual.
    Check { scene: PathBuf },
    /// Grow five circles around their fixed F-T point.
    Evolve {
        scene: PathBuf,
        #[arg(long = "type", value_enum, ignore_case = true)]
        kind: EvolutionArg,
        #[arg(long)]
        steps: usize,
        /// Radius per unit weight; default makes the largest initial radius a
        /// tenth of the smallest center distance.
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Directory for one SVG per step.
        #[arg(long)]
        svg_frames: Option<PathBuf>,
    },
    /// Compare the solver with a brute-force minimizer.
    Oracle {
        scene: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID_CELLS)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_REFINE_ITERS)]
        iters: usize,
    },
    /// Move centers radially and check the F-T point stays put.
    VerifyGeometric {
        scene: PathBuf,
        /// One signed radial shift per circle, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        shifts: Vec<f64>,
        /// Optional new radii, comma separated.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
    /// Print a random floating scene.
    Generate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Centers in convex position, indexed counter-clockwise.
        #[arg(long)]
        convex: bool,
        #[arg(long)]
        equal_weights: bool,
    },
}

/// Parses the arguments, runs the command and returns the exit code.
/// Failures print `ERROR:<code>:<detail>` on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let detail = e.to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("ERROR:usage:{first}");
            return 1;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("ERROR:{}:{}", e.code(), single_line(&e.to_string()));
            e.exit_code()
        }
    }
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

fn load(path: &Path) -> AppResult<(Scene, Configuration)> {
    let scene = Scene::read(path)?;
    let config = scene.configuration()?;
    Ok((scene, config))
}

fn write_file(path: &Path, contents: &[u8]) -> AppResult<()> {
    fs::write(path, contents).map_err(|e| AppError::io(path, e))
}

fn deg(rad: f64) -> String {
    format!("{:.6}°", rad.to_degrees())
}

fn pt(p: Point2) -> String {
    format!("({:.12}, {:.12})", p.x, p.y)
}

/// `w4=0.2,w5=0.1` → `[0.2, 0.1]` for an `n`-circle scene.
fn parse_free(spec: &str, n: usize) -> AppResult<Vec<f64>> {
    let mut values = vec![None; n.saturating_sub(3)];
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| AppError::Usage(format!("expected wK=value, got `{part}`")))?;
        let k: usize = key
            .trim()
            .strip_prefix('w')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| AppError::Usage(format!("bad weight name `{key}`")))?;
        if !(4..=n).contains(&k) {
            return Err(AppError::Usage(format!(
                "free weights are w4..w{n}, got w{k}"
            )));
        }
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| AppError::Usage(format!("bad number `{value}`")))?;
        values[k - 4] = Some(v);
    }
    values
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| AppError::Usage(format!("missing w{}", i + 4))))
        .collect()
}

fn execute(command: Command, out: &mut impl Write) -> AppResult<()> {
    match command {
        Command::Solve {
            scene,
            mode,
            svg,
            json,
            max_iters,
        } => {
            let (_, mut config) = load(&scene)?;
            if let Some(m) = mode {
                config = config.with_mode(match m {
                    ModeArg::Curve => DistanceMode::ToCurve,
                    ModeArg::Set => DistanceMode::ToSet,
                });
            }
            let result = solve_with(&config, &SolverOptions { max_iters })?;
            if let Some(path) = svg {
                write_file(&path, svg::render(&config, Some(&result)).as_bytes())?;
            }
            if json {
                let text = serde_json::to_string_pretty(&SolveJson::new(&config, &result))
                    .expect("result serializes");
                writeln!(out, "{text}").map_err(|e| AppError::io("<stdout>", e))?;
            } else {
                print_solve(out, &config, &result).map_err(|e| AppError::io("<stdout>", e))?;
            }
            Ok(())
        }
        Command::Inverse { scene, free } => cmd_inverse(out, &scene, free.as_deref()),
        Command::Plasticity { scene, free, total } => {
            cmd_plasticity(out, &scene, free.as_deref(), total)
        }
        Command::Check { scene } => cmd_check(out, &scene),
        Command::Evolve {
            scene,
            kind,
            steps,
            scale,
            csv,
            svg_frames,
        } => {
            let (_, config) = load(&scene)?;
            let schedule = evolution::default_schedule(&config, steps);
            let trace = match kind {
                EvolutionArg::A => {
                    let inc: Vec<(f64, f64)> = schedule.iter().map(|&d| (d, d)).collect();
                    evolution::evolve_type_a(&config, &inc, scale)?
                }
                EvolutionArg::B => evolution::evolve_type_b(&config, &schedule, scale)?,
            };
            if let Some(path) = csv {
                let mut buf = Vec::new();
                trace::write_csv(&trace, &mut buf)?;
                write_file(&path, &buf)?;
            }
            if let Some(dir) = svg_frames {
                fs::create_dir_all(&dir).map_err(|e| AppError::io(&dir, e))?;
                for s in &trace.steps {
                    let cfg = trace.configuration_at(s.step)?;
                    let result = solve(&cfg)?;
                    let path = dir.join(format!("frame_{:04}.svg", s.step));
                    write_file(&path, svg::render(&cfg, Some(&result)).as_bytes())?;
                }
            }
            print_trace(out, &trace).map_err(|e| AppError::io("<stdout>", e))
        }
        Command::Oracle { scene, grid, iters } => {
            let (_, config) = load(&scene)?;
            let result = solve(&config)?;
            let p = oracle_minimize(&config, grid, iters);
            let gap = p.distance(result.point);
            let w = |e| AppError::io("<stdout>", e);
            writeln!(out, "solver P = {}", pt(result.point)).map_err(w)?;
            writeln!(out, "oracle P = {}", pt(p)).map_err(w)?;
            writeln!(out, "|P_solver - P_oracle| = {gap:.3e}").map_err(w)?;
            writeln!(
                out,
                "objective: solver {:.12}, oracle {:.12}",
                result.objective,
                config.objective(p)
            )
            .map_err(w)?;
            writeln!(
                out,
                "agreement within 1e-4: {}",
                if gap < 1e-4 { "yes" } else { "no" }
            )
            .map_err(w)?;
            Ok(())
        }
        Command::VerifyGeometric {
            scene,
            shifts,
            radii,
        } => {
            let (_, config) = load(&scene)?;
            let check = verify_geometric_plasticity(&config, &shifts, radii.as_deref())?;
            let w = |e| AppError::io("<stdout>", e);
            writeln!(out, "original P = {}", pt(check.original)).map_err(w)?;
            writeln!(out, "shifted  P = {}", pt(check.shifted)).map_err(w)?;
            writeln!(out, "displacement = {:.3e}", check.displacement).map_err(w)?;
            writeln!(out, "preserved = {}", check.preserved()).map_err(w)?;
            Ok(())
        }
        Command::Generate {
            seed,
            n,
            convex,
            equal_weights,
        } => {
            let opts = GenOptions {
                convex,
                equal_weights,
                ..GenOptions::default()
            };
            let config = random_scene(seed, n, &opts)?;
            writeln!(
                out,
                "{}",
                Scene::from_configuration(&config).to_json_pretty()
            )
            .map_err(|e| AppError::io("<stdout>", e))
        }
    }
}

fn print_solve(
    out: &mut impl Write,
    config: &Configuration,
    r: &SolveResult,
) -> std::io::Result<()> {
    match r.case {
        CaseTag::Floating => writeln!(out, "case=floating")?,
        CaseTag::AbsorbedAt(m) => writeln!(out, "case=absorbed at circle {}", m + 1)?,
    }
    writeln!(out, "P = {}", pt(r.point))?;
    writeln!(out, "objective = {:.12}", r.objective)?;
    writeln!(out, "projections:")?;
    for (i, q) in r.projections.iter().enumerate() {
        writeln!(
            out,
            "  A{}' = {}  d = {:.12}",
            i + 1,
            pt(*q),
            r.distances[i]
        )?;
    }
    if !r.sector_angles.is_empty() {
        writeln!(out, "sector angles:")?;
        let n = r.cyclic_order.len();
        for k in 0..n {
            let (a, b) = (r.cyclic_order[k], r.cyclic_order[(k + 1) % n]);
            writeln!(
                out,
                "  A{}'PA{}' = {}",
                a + 1,
                b + 1,
                deg(r.sector_angles[k])
            )?;
        }
    }
    writeln!(out, "equilibrium residual = {:.3e}", r.equilibrium_residual)?;
    if let Ok(res) = certificate_residuals(r, config) {
        let max = res.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        writeln!(out, "cosine residual (max) = {max:.3e}")?;
    }
    writeln!(out, "iterations = {}", r.iterations)
}

fn print_trace(out: &mut impl Write, t: &EvolutionTrace) -> std::io::Result<()> {
    let tag = match t.type_tag {
        EvolutionType::TypeA => "A",
        EvolutionType::TypeB => "B",
    };
    writeln!(out, "type {tag}, scale {:.6}, P = {}", t.scale, pt(t.point))?;
    for s in &t.steps {
        let pattern: String = s.pattern.iter().map(|p| p.symbol()).collect();
        let w: Vec<String> = s.weights.iter().map(|x| format!("{x:.9}")).collect();
        writeln!(
            out,
            "{:>4}  {}  {}{}",
            s.step,
            w.join(" "),
            pattern,
            if s.pattern_matches {
                ""
            } else {
                "  (unexpected)"
            }
        )?;
    }
    writeln!(out, "termination: {:?}", t.termination)?;
    writeln!(out, "sum drift = {:.3e}", t.sum_drift())?;
    let v = t.pattern_violations();
    if v.is_empty() {
        writeln!(out, "pattern: as expected at every step")
    } else {
        writeln!(out, "pattern differs at steps {v:?}")
    }
}

/// Unit directions from `p` toward each center.
fn rays_from(config: &Configuration, p: Point2) -> AppResult<Vec<Point2>> {
    if let Some(i) = config.disk_containing(p) {
        return Err(ftplast_core::Error::SolutionInsideDisk(i).into());
    }
    config
        .centers()
        .iter()
        .map(|&c| {
            (c - p)
                .unit()
                .ok_or(AppError::Core(ftplast_core::Error::DegenerateAngle))
        })
        .collect()
}

fn cmd_inverse(out: &mut impl Write, path: &Path, free: Option<&str>) -> AppResult<()> {
    let (scene, config) = load(path)?;
    let p: Point2 = scene
        .point
        .ok_or_else(|| AppError::Scene("inverse needs a \"point\"".into()))?
        .into();
    let rays = rays_from(&config, p)?;
    let n = rays.len();
    let w = |e| AppError::io("<stdout>", e);
    let weights: Vec<f64> = if n == 3 {
        let phi = |i: usize, j: usize| rays[i].dot(rays[j]).clamp(-1.0, 1.0).acos();
        let t = AngleTriple::new(phi(1, 2), phi(0, 2), phi(0, 1))?;
        weights_from_angles(&t)?.to_vec()
    } else {
        let fan = SectorAngles::from_directions(
            &rays.iter().map(|r| r.polar_angle()).collect::<Vec<_>>(),
        )?;
        match free {
            Some(spec) => {
                let free = parse_free(spec, n)?;
                let coeffs = corollary_coefficients(&TriangleRatios::from_angles(&fan)?, n)?;
                coeffs.evaluate(&free, 1.0)?
            }
            None if n == 4 => {
                writeln!(out, "no --free given: minimum-norm member of the family").map_err(w)?;
                cosine_system_weights(&fan, None)?.weights.to_vec()
            }
            None => {
                return Err(AppError::Usage(format!(
                    "{n} circles leave {} weights free; pass --free",
                    n - 3
                )))
            }
        }
    };
    for (i, x) in weights.iter().enumerate() {
        writeln!(out, "w{} = {x:.12}", i + 1).map_err(w)?;
    }
    writeln!(out, "sum = {:.12}", weights.iter().sum::<f64>()).map_err(w)?;
    Ok(())
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Negative => '-',
        Sign::Zero => '0',
        Sign::Positive => '+',
    }
}

fn cmd_plasticity(
    out: &mut impl Write,
    path: &Path,
    free: Option<&str>,
    total: Option<f64>,
) -> AppResult<()> {
    let (_, config) = load(path)?;
    let n = config.len();
    if n < 4 {
        return Err(AppError::Usage(
            "plasticity needs at least four circles".into(),
        ));
    }
    let result = solve(&config)?;
    let fan = SectorAngles::from_solution_labeled(&result, &(0..n).collect::<Vec<_>>())?;
    let ratios = TriangleRatios::from_angles(&fan)?;
    let coeffs = corollary_coefficients(&ratios, n)?;
    let free = match free {
        Some(spec) => parse_free(spec, n)?,
        None => config.weights()[3..].to_vec(),
    };
    let total = total.unwrap_or_else(|| config.total_weight());
    let weights = coeffs.evaluate(&free, total)?;
    let w = |e| AppError::io("<stdout>", e);

    writeln!(out, "triangle ratios:").map_err(w)?;
    writeln!(out, "  (w2/w1)_123 = {:.12}", ratios.w2_over_w1_123()?).map_err(w)?;
    writeln!(out, "  (w3/w1)_123 = {:.12}", ratios.w3_over_w1_123()?).map_err(w)?;
    for j in 4..=n {
        writeln!(out, "  (w1/w{j})_13{j} = {:.12}", ratios.w1_over_wj_13j(j)?).map_err(w)?;
        writeln!(out, "  (w1/w{j})_12{j} = {:.12}", ratios.w1_over_wj_12j(j)?).map_err(w)?;
    }
    writeln!(
        out,
        "coefficients a[i][j] (last column multiplies the total):"
    )
    .map_err(w)?;
    for (i, row) in coeffs.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|a| format!("{a:>16.12}")).collect();
        writeln!(out, "  w{} : {}", i + 1, cells.join(" ")).map_err(w)?;
    }
    writeln!(out, "sign pattern (a1, a2, a3) per free weight:").map_err(w)?;
    for (k, s) in coeffs.sign_pattern().iter().enumerate() {
        writeln!(
            out,
            "  w{}: {}{}{}",
            k + 4,
            sign_char(s[0]),
            sign_char(s[1]),
            sign_char(s[2])
        )
        .map_err(w)?;
    }
    if n == 4 {
        writeln!(
            out,
            "four-ray hypothesis (inside 123, 124; outside 134): {}",
            fan.satisfies_four_ray_hypothesis()
        )
        .map_err(w)?;
    }
    writeln!(out, "weights (total {total}):").map_err(w)?;
    for (i, x) in weights.iter().enumerate() {
        writeln!(out, "  w{} = {x:.12}", i + 1).map_err(w)?;
    }
    if weights.iter().any(|&x| x <= 0.0) {
        writeln!(
            out,
            "warning: non-positive weight; no F-T configuration realizes this member"
        )
        .map_err(w)?;
    }
    Ok(())
}

fn cmd_check(out: &mut impl Write, path: &Path) -> AppResult<()> {
    let (_, config) = load(path)?;
    let n = config.len();
    let w = |e| AppError::io("<stdout>", e);
    let case = classify_case(&config);
    match case {
        CaseTag::Floating => writeln!(out, "case=floating").map_err(w)?,
        CaseTag::AbsorbedAt(m) => writeln!(out, "case=absorbed at circle {}", m + 1).map_err(w)?,
    }
    for i in 0..n {
        let pull = resultant_at(&config, i).norm();
        let wi = config.weights()[i];
        writeln!(
            out,
            "  circle {}: pull of others {pull:.12} vs weight {wi:.12}",
            i + 1
        )
        .map_err(w)?;
    }
    let result = solve(&config)?;
    writeln!(out, "P = {}", pt(result.point)).map_err(w)?;
    writeln!(
        out,
        "equilibrium residual = {:.3e}",
        result.equilibrium_residual
    )
    .map_err(w)?;
    if !result.case.is_floating() {
        return Ok(());
    }
    let cos = certificate_residuals(&result, &config)?;
    for (i, r) in cos.iter().enumerate() {
        writeln!(out, "cosine residual {} = {r:.3e}", i + 1).map_err(w)?;
    }
    let normalized = config.normalized_weights();
    if n == 3 {
        let t = AngleTriple::from_solution(&result)?;
        let rec = weights_from_angles(&t)?;
        let err = (0..3)
            .map(|i| (rec[i] - normalized[i]).abs())
            .fold(0.0, f64::max);
        writeln!(out, "inverse weights error = {err:.3e}").map_err(w)?;
    } else {
        let fan = SectorAngles::from_solution_labeled(&result, &(0..n).collect::<Vec<_>>())?;
        if n == 4 {
            let (ccw, order) = SectorAngles::from_solution(&result)?;
            if let Some(rot) = ccw.four_ray_rotation() {
                let f = ccw.relabel(&rot);
                let ws = [0, 1, 2, 3].map(|k| config.weights()[order[rot[k]]]);
                let s = sine_residuals(&f, &ws)?;
                let labels: Vec<usize> = rot.iter().map(|&r| order[r] + 1).collect();
                writeln!(
                    out,
                    "sine residuals (labels {labels:?}) = [{:.3e}, {:.3e}, {:.3e}]",
                    s[0], s[1], s[2]
                )
                .map_err(w)?;
            }
        }
        let coeffs = corollary_coefficients(&TriangleRatios::from_angles(&fan)?, n)?;
        let c = coeffs.check_against(config.weights(), config.total_weight())?;
        writeln!(out, "plasticity form error = {:.3e}", c.max_weight_error).map_err(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_weights_parse() {
        assert_eq!(parse_free("w4=0.2, w5=0.1", 5).unwrap(), vec![0.2, 0.1]);
        assert_eq!(parse_free("w5=1,w4=2", 5).unwrap(), vec![2.0, 1.0]);
        assert!(parse_free("w4=0.2", 5).is_err());
        assert!(parse_free("w3=0.2", 4).is_err());
        assert!(parse_free("w4:0.2", 4).is_err());
    }
}
