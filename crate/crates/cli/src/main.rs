use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use legendrian::analysis::{analyze, exactness_check};
use legendrian::arith::GaussianRational;
use legendrian::contact::{chart_change, is_legendrian};
use legendrian::curves::{bryant_curve, exceptional_line, f_curve, invert_bryant, ProjectiveCurve};
use legendrian::io::{curve_to_json, read_curve, write_curve};
use legendrian::numeric::geometry::with_convergence;
use legendrian::numeric::{
    geometry_report, intrinsic_radius, radius_refinement, sample_surface, DomainSpec, EdgeWeight, Mesh, Precision, RadiusOptions, ReportOptions,
    SampleOptions, StereoPole,
};
use legendrian::parse::{parse_constant, parse_expression};
use legendrian::{Error, Result};

#[derive(Parser)]
#[command(name = "legendrian", version, about = "Holomorphic Legendrian curves in CP3 and their twistor projections to S4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SampleArgs {
    /// Input curve file.
    curve: PathBuf,
    /// rect:x0,x1,y0,y1 | disk:cx,cy,r | annulus:cx,cy,r0,r1
    #[arg(long)]
    domain: DomainSpec,
    /// Grid spacing.
    #[arg(long)]
    h: f64,
    /// Exclusion radius around singular points (default 10 h).
    #[arg(long)]
    exclusion: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Bryant curve B(f, g).
    Bryant {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Curve F(h, g) with integration constant c.
    Fcurve {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "0")]
        c: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exceptional line [1 : a + b t : b : -t].
    Exceptional {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Legendrian check; exit 1 when the pullback of the contact form is nonzero.
    Verify { curve: PathBuf },
    /// Orders, base points, immersion and H-intersections as JSON.
    Analyze { curve: PathBuf },
    /// Residues of h dg; exit 1 when some residue is nonzero.
    Residues {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
    },
    /// Recover (f, g) from a Bryant curve.
    Invert { curve: PathBuf },
    /// Contact chart change with parameters a1, a2, a3.
    Chart {
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[arg(long, allow_hyphen_values = true)]
        a3: String,
        #[arg(long)]
        apply: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample the twistor image and write a mesh (.json or .obj).
    Project {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(short, long)]
        output: PathBuf,
        /// Stereographic pole for OBJ output.
        #[arg(long, default_value = "north", value_parser = ["north", "south"])]
        pole: String,
    },
    /// Conformality, minimality, superminimality and isometry report as JSON.
    Report {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long)]
        richardson: bool,
        /// Also sample at 2h and report observed orders.
        #[arg(long)]
        convergence: bool,
    },
    /// Intrinsic radius from a center point.
    Radius {
        #[command(flatten)]
        sample: SampleArgs,
        /// X,Y
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        /// Number of grid levels, coarsest 2^(levels-1) h.
        #[arg(long, default_value_t = 1)]
        levels: u32,
        #[arg(long)]
        geodesic: bool,
    },
}

fn emit_curve(c: &ProjectiveCurve, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => {
            write_curve(p, c)?;
            say(&format!("{c}"));
        }
        None => say(&curve_to_json(c)?),
    }
    Ok(())
}

fn say(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn sample(args: &SampleArgs, h: f64) -> Result<legendrian::numeric::SurfaceSample> {
    let c = read_curve(&args.curve)?;
    let opts = SampleOptions { precision: Precision::from_env()?, exclusion_radius: args.exclusion, ..Default::default() };
    sample_surface(&c, args.domain, h, &opts)
}

fn parse_center(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidInput(format!("bad center '{s}'; expected X,Y"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

/// Runs a command; `Ok(false)` means the check ran and refuted.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Bryant { f, g, output } => {
            emit_curve(&bryant_curve(&parse_expression(&f)?, &parse_expression(&g)?)?, output.as_deref())?;
        }
        Command::Fcurve { h, g, c, output } => {
            emit_curve(&f_curve(&parse_expression(&h)?, &parse_expression(&g)?, &parse_constant(&c)?)?, output.as_deref())?;
        }
        Command::Exceptional { a, b, output } => {
            emit_curve(&exceptional_line(&parse_constant(&a)?, &parse_constant(&b)?), output.as_deref())?;
        }
        Command::Verify { curve } => {
            let v = is_legendrian(&read_curve(&curve)?);
            match &v.witness {
                None => say("legendrian"),
                Some(w) => say(&format!("not legendrian: pullback of alpha0 = ({}) dz", w.to_string_var("z"))),
            }
            return Ok(v.legendrian);
        }
        Command::Analyze { curve } => {
            let r = analyze(&read_curve(&curve)?)?;
            say(&serde_json::to_string_pretty(&r.to_json())?);
        }
        Command::Residues { h, g } => {
            let r = exactness_check(&parse_expression(&h)?, &parse_expression(&g)?);
            say(&serde_json::to_string_pretty(&r.to_json())?);
            return Ok(r.pass());
        }
        Command::Invert { curve } => {
            let (f, g) = invert_bryant(&read_curve(&curve)?)?;
            say(&serde_json::to_string_pretty(&json!({ "f": f.to_string_var("z"), "g": g.to_string_var("z") }))?);
        }
        Command::Chart { a1, a2, a3, apply, output } => {
            let chart = chart_change(parse_constant(&a1)?, parse_constant(&a2)?, parse_constant(&a3)?);
            match apply {
                Some(p) => emit_curve(&chart.apply(&read_curve(&p)?)?, output.as_deref())?,
                None => {
                    let m = |m: &[[GaussianRational; 4]; 4]| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect() };
                    say(&serde_json::to_string_pretty(&json!({ "to_new": m(&chart.to_new), "to_old": m(&chart.to_old) }))?);
                }
            }
        }
        Command::Project { sample: args, output, pole } => {
            let mesh = Mesh::from_sample(&sample(&args, args.h)?)?;
            let text = match output.extension().and_then(|e| e.to_str()) {
                Some("obj") => mesh.to_obj(StereoPole { axis: 4, sign: if pole == "north" { 1.0 } else { -1.0 } })?,
                Some("json") => mesh.to_json()?,
                _ => return Err(Error::InvalidInput("mesh output must end in .json or .obj".into())),
            };
            std::fs::write(&output, text)?;
            say(&format!("{} vertices, {} quads -> {}", mesh.vertices_r5.len(), mesh.faces.len(), output.display()));
        }
        Command::Report { sample: args, richardson, convergence } => {
            let opts = ReportOptions { richardson };
            let mut r = geometry_report(&sample(&args, args.h)?, &opts)?;
            if convergence {
                r = with_convergence(r, &geometry_report(&sample(&args, 2.0 * args.h)?, &opts)?);
            }
            say(&serde_json::to_string_pretty(&r)?);
        }
        Command::Radius { sample: args, center, levels, geodesic } => {
            let p0 = parse_center(&center)?;
            let opts = RadiusOptions { weights: if geodesic { EdgeWeight::Geodesic } else { EdgeWeight::Chordal } };
            let r = if levels <= 1 {
                intrinsic_radius(&sample(&args, args.h)?, p0, &opts)?
            } else {
                let hs: Vec<f64> = (0..levels).rev().map(|k| args.h * f64::from(1u32 << k.min(20))).collect();
                radius_refinement(|h| sample(&args, h), &hs, p0, &opts)?
            };
            say(&serde_json::to_string_pretty(&r)?);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
