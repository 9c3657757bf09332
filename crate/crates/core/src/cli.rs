//! The `zonoids` command line.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::ground_state::{surface_tension_sweep, sweep_csv, PairInteractions};
use crate::io::{
    direction_grid, parse_directions, parse_measure, parse_system, polygon_csv, polygon_svg,
    write_measure, SystemFile,
};
use crate::lattice::{sublattice_basis, LatticeIndex};
use crate::num::{format_rational, Rational};
use crate::wulff_discrete::{wulff_convergence_diagnostic, AnnealSchedule, DiagnosticOptions};
use crate::zonoid::{
    approximate_zonoid, directed_wulff, sample_directions, ApproxOptions, ZonoidTarget,
};
use crate::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "zonoids",
    version,
    about = "Surface tensions and Wulff shapes of ferromagnetic Ising systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the surface tension at a list of directions.
    Phi {
        system: PathBuf,
        /// One direction per line.
        #[arg(long, conflicts_with = "grid")]
        directions: Option<PathBuf>,
        /// Equally spaced directions (sampled directions when d ≥ 3).
        #[arg(long, value_parser = positive_usize)]
        grid: Option<usize>,
    },
    /// Decide coercivity and report the sublattice spanned by the support.
    CheckCoercive { system: PathBuf },
    /// Compare the generating measures of two systems.
    Equiv { a: PathBuf, b: PathBuf },
    /// Vertices of the Wulff shape (support-function samples when d ≥ 3).
    Wulff {
        system: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 64, value_parser = positive_usize)]
        samples: usize,
    },
    /// Minimal transition energies m_T(ν) by exact min-cut.
    Tension {
        system: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        nu: Vec<f64>,
        #[arg(long = "T", alias = "sizes", value_delimiter = ',', value_parser = positive_usize, required = true)]
        sizes: Vec<usize>,
    },
    /// Volume-constrained ground states compared with the Wulff shape.
    DiscreteWulff {
        system: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = positive_f64, required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        box_radius: Option<i64>,
        /// Directory receiving one overlay SVG per ε (planar systems).
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Rational zonoid approximating a measure file or the unit disk.
    Approx {
        #[arg(long, conflicts_with = "disk", required_unless_present = "disk")]
        measure: Option<PathBuf>,
        #[arg(long)]
        disk: bool,
        #[arg(long, default_value_t = 0.02, value_parser = positive_f64)]
        eta: f64,
        #[arg(long, default_value_t = 10, value_parser = positive_usize)]
        denbound: usize,
        #[arg(long, default_value_t = 3600, value_parser = positive_usize)]
        samples: usize,
        /// Pad coordinate directions so the canonical system is coercive.
        #[arg(long)]
        coercive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn read_system(path: &Path) -> Result<SystemFile> {
    parse_system(&read_file(path)?)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Phi {
            system,
            directions,
            grid,
        } => phi(&read_system(&system)?, directions.as_deref(), grid, out),
        Command::CheckCoercive { system } => check_coercive(&read_system(&system)?, out),
        Command::Equiv { a, b } => equiv(read_system(&a)?, read_system(&b)?, out),
        Command::Wulff {
            system,
            svg,
            samples,
        } => wulff(&read_system(&system)?, svg.as_deref(), samples, out),
        Command::Tension { system, nu, sizes } => {
            let file = read_system(&system)?;
            let coefficients: &dyn PairInteractions = match &file {
                SystemFile::Undirected(s) => s,
                SystemFile::Directed(s) => s,
                SystemFile::Periodic(p) => p,
            };
            if nu.len() != coefficients.dim() {
                return Err(Error::DimensionMismatch {
                    expected: coefficients.dim(),
                    got: nu.len(),
                });
            }
            let rows = surface_tension_sweep(coefficients, &nu, &sizes)?;
            out.write_all(sweep_csv(&rows).as_bytes())?;
            Ok(())
        }
        Command::DiscreteWulff {
            system,
            eps,
            seed,
            box_radius,
            svg_dir,
        } => {
            let system = read_system(&system)?.undirected()?;
            eprintln!("seed: {seed}");
            let options = DiagnosticOptions {
                schedule: AnnealSchedule {
                    seed,
                    ..AnnealSchedule::default()
                },
                box_radius,
                ..DiagnosticOptions::default()
            };
            let report = wulff_convergence_diagnostic(&system, &eps, &options)?;
            if let Some(dir) = svg_dir {
                fs::create_dir_all(&dir)?;
                for i in 0..report.rows.len() {
                    if let Some(svg) = report.overlay_svg(i) {
                        fs::write(dir.join(format!("discrete_wulff_{i}.svg")), svg)?;
                    }
                }
            }
            out.write_all(report.to_csv().as_bytes())?;
            Ok(())
        }
        Command::Approx {
            measure,
            disk: _,
            eta,
            denbound,
            samples,
            coercive,
            out: path,
        } => {
            let target = match measure {
                Some(p) => ZonoidTarget::Measure(parse_measure(&read_file(&p)?)?),
                None => ZonoidTarget::unit_disk(),
            };
            let options = ApproxOptions {
                eta,
                denominator_bound: i64::try_from(denbound)
                    .map_err(|_| Error::InvalidArgument("denbound".into()))?,
                samples,
                coercive_padding: coercive,
            };
            let result = approximate_zonoid(&target, &options)?;
            let mut text = format!("# sup_error {:.9}\n", result.sup_error);
            if let Some(p) = &result.padding {
                text.push_str(&format!("# padding {}\n", format_rational(p)));
            }
            text.push_str(&write_measure(&result.measure));
            eprintln!(
                "sup-error: {:.9} over {samples} directions",
                result.sup_error
            );
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn phi(
    file: &SystemFile,
    directions: Option<&Path>,
    grid: Option<usize>,
    out: &mut dyn Write,
) -> Result<()> {
    let d = file.dim();
    let dirs = match (directions, grid) {
        (Some(p), _) => parse_directions(&read_file(p)?, d)?,
        (None, n) if d == 2 => direction_grid(n.unwrap_or(16)),
        (None, n) => sample_directions(d, n.unwrap_or(16)),
    };
    let tension: Box<dyn Fn(&[f64]) -> f64 + '_> = match file {
        SystemFile::Undirected(s) => Box::new(|z| s.surface_tension(z)),
        SystemFile::Directed(s) => Box::new(|z| s.directed_surface_tension(z)),
        SystemFile::Periodic(_) => {
            return Err(Error::InvalidArgument(
                "periodic coefficients have no closed form; use `tension`".into(),
            ))
        }
    };
    let header: Vec<String> = (1..=d)
        .map(|i| format!("z{i}"))
        .chain(["phi".to_string()])
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for z in dirs {
        let cols: Vec<String> = z.iter().map(|x| fixed12(*x)).collect();
        writeln!(out, "{},{}", cols.join(","), fixed12(tension(&z)))?;
    }
    Ok(())
}

fn check_coercive(file: &SystemFile, out: &mut dyn Write) -> Result<()> {
    let support = match file {
        SystemFile::Undirected(s) => s.support(),
        SystemFile::Directed(s) => s.coefficients().keys().cloned().collect(),
        SystemFile::Periodic(_) => {
            return Err(Error::InvalidArgument(
                "coercivity is decided for homogeneous systems".into(),
            ))
        }
    };
    let d = file.dim();
    let basis = sublattice_basis(d, &support)?;
    let index = basis.index();
    writeln!(out, "coercive: {}", index == LatticeIndex::Finite(1.into()))?;
    writeln!(out, "rank: {}", basis.rank())?;
    writeln!(out, "index: {index}")?;
    let basis_text: Vec<String> = basis
        .basis_vectors()
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(out, "basis: {}", basis_text.join(" "))?;
    if basis.is_full_rank() {
        let reps: Vec<String> = basis
            .residue_classes()?
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(out, "representatives: {}", reps.join(" "))?;
    }
    Ok(())
}

fn equiv(a: SystemFile, b: SystemFile, out: &mut dyn Write) -> Result<()> {
    let (a, b) = (a.undirected()?, b.undirected()?);
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let (sa, sb) = (a.aggregates(), b.aggregates());
    writeln!(out, "equivalent: {}", a.equivalent(&b))?;
    writeln!(out, "direction,s_a,s_b")?;
    let classes: BTreeSet<_> = sa.keys().chain(sb.keys()).collect();
    let zero = Rational::from_integer(0.into());
    for c in classes {
        let fa = format_rational(sa.get(c).unwrap_or(&zero));
        let fb = format_rational(sb.get(c).unwrap_or(&zero));
        writeln!(out, "\"{}\",{fa},{fb}", c.primitive())?;
    }
    Ok(())
}

fn wulff(file: &SystemFile, svg: Option<&Path>, samples: usize, out: &mut dyn Write) -> Result<()> {
    let d = file.dim();
    let zonotope = match file {
        SystemFile::Undirected(s) => (
            s.generating_measure().exact_zonotope()?,
            vec![Rational::from_integer(0.into()); d],
        ),
        SystemFile::Directed(s) => directed_wulff(s)?,
        SystemFile::Periodic(_) => {
            return Err(Error::InvalidArgument(
                "the Wulff shape of periodic coefficients is not available in closed form".into(),
            ))
        }
    };
    let (z, shift) = zonotope;
    let directed = matches!(file, SystemFile::Directed(_));
    if directed && d == 2 && z.rank() < 2 {
        // A directed system along one line has a segment (or a point) as its Wulff shape.
        let mut half = [
            Rational::from_integer(0.into()),
            Rational::from_integer(0.into()),
        ];
        if let Some(u) = z.generators().first() {
            for g in z.generators() {
                let sign = if &g[0] * &u[0] + &g[1] * &u[1] < Rational::from_integer(0.into()) {
                    -1
                } else {
                    1
                };
                for a in 0..2 {
                    half[a] += &g[a] * Rational::from_integer(sign.into());
                }
            }
        }
        let ends: Vec<[f64; 2]> = [-1i64, 1]
            .iter()
            .map(|&t| {
                let p: Vec<Rational> = (0..2)
                    .map(|a| &shift[a] + &half[a] * Rational::from_integer(t.into()))
                    .collect();
                [
                    crate::num::Scalar::to_f64(&p[0]),
                    crate::num::Scalar::to_f64(&p[1]),
                ]
            })
            .collect();
        let segment = crate::zonoid::ConvexPolygon::from_ccw(ends);
        if let Some(path) = svg {
            fs::write(path, polygon_svg(&segment))?;
        }
        out.write_all(polygon_csv(&segment).as_bytes())?;
        return Ok(());
    }
    if !z.is_non_degenerate() {
        return Err(Error::DegenerateWulffShape(format!(
            "rank {} < dimension {d}",
            z.rank()
        )));
    }
    if d == 2 {
        let polygon = z
            .polygon_2d()?
            .translated(&[shift[0].clone(), shift[1].clone()])
            .to_f64();
        if let Some(path) = svg {
            fs::write(path, polygon_svg(&polygon))?;
        }
        out.write_all(polygon_csv(&polygon).as_bytes())?;
        return Ok(());
    }
    let zf = z.to_f64();
    let shift: Vec<f64> = shift.iter().map(crate::num::Scalar::to_f64).collect();
    let header: Vec<String> = (1..=d)
        .map(|i| format!("z{i}"))
        .chain(["support".to_string()])
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for u in sample_directions(d, samples) {
        let h = zf.support(&u) + u.iter().zip(&shift).map(|(a, b)| a * b).sum::<f64>();
        let cols: Vec<String> = u.iter().map(|x| fixed12(*x)).collect();
        writeln!(out, "{},{h:.12}", cols.join(","))?;
    }
    Ok(())
}

fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}
