use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use disk_hurwitz::checks::{self, Suite};
use disk_hurwitz::engine::{cache, Engine, GraveSide, Route};
use disk_hurwitz::rational::{to_machine, to_text, Rational};
use disk_hurwitz::report::{render_table, value_table, ConsistencyReport, Format, RoutesReport};
use disk_hurwitz::{BoundaryMonomial, Convention, DotWeight, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "disk-hurwitz", version, about = "Exact disk single Hurwitz numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Automorphism weight of a dot component.
    #[arg(long, value_enum, default_value_t = WeightArg::Index)]
    dot_weight: WeightArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Memo cache to load before and save after the run.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Rules {
    /// Which point is removed first when both kinds are present.
    #[arg(long, value_enum, default_value_t = RouteArg::BoundaryFirst)]
    route: RouteArg,
    /// Pairing used by the grave step.
    #[arg(long, value_enum, default_value_t = GraveArg::Printed)]
    grave_side: GraveArg,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one number.
    Eval {
        #[arg(long)]
        m: u32,
        /// Total boundary points; sums over all splits.
        #[arg(long, conflicts_with_all = ["acute", "grave"], required_unless_present_all = ["acute", "grave"])]
        points: Option<u32>,
        #[arg(long, requires = "grave")]
        acute: Option<u32>,
        #[arg(long, requires = "acute")]
        grave: Option<u32>,
        /// Boundary monomial such as "A1*B2^2".
        #[arg(long)]
        b: String,
        #[command(flatten)]
        rules: Rules,
        #[command(flatten)]
        common: Common,
    },
    /// Every value up to the given bounds.
    Table {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 2)]
        max_points: u32,
        #[command(flatten)]
        rules: Rules,
        #[command(flatten)]
        common: Common,
    },
    /// Run a self-check suite.
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
    /// Compare published formulas with the computed ones.
    Report {
        #[arg(value_enum)]
        kind: ReportArg,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 2)]
        max_points: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum WeightArg {
    Index,
    TwiceIndex,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy)]
enum RouteArg {
    BoundaryFirst,
    InteriorFirst,
}

#[derive(ValueEnum, Clone, Copy)]
enum GraveArg {
    Printed,
    Mirrored,
}

#[derive(ValueEnum, Clone, Copy)]
enum SuiteArg {
    Oracle,
    Pde,
    Classical,
    Symmetry,
}

#[derive(ValueEnum, Clone, Copy)]
enum ReportArg {
    Consistency,
    Routes,
}

impl Common {
    fn convention(&self) -> Convention {
        Convention {
            dot_weight: match self.dot_weight {
                WeightArg::Index => DotWeight::Index,
                WeightArg::TwiceIndex => DotWeight::TwiceIndex,
            },
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }

    fn engine(&self, rules: Rules) -> Result<Engine, Error> {
        let route = match rules.route {
            RouteArg::BoundaryFirst => Route::BoundaryFirst,
            RouteArg::InteriorFirst => Route::InteriorFirst,
        };
        let side = match rules.grave_side {
            GraveArg::Printed => GraveSide::Printed,
            GraveArg::Mirrored => GraveSide::Mirrored,
        };
        let engine = Engine::new(self.convention()).with_route(route).with_grave_side(side);
        if let Some(path) = &self.cache {
            if path.exists() && cacheable(&engine) {
                cache::import(&engine, BufReader::new(File::open(path)?))?;
            }
        }
        Ok(engine)
    }

    fn save_cache(&self, engine: &Engine) -> Result<(), Error> {
        match &self.cache {
            Some(path) if cacheable(engine) => {
                let mut buf = Vec::new();
                cache::export(engine, &mut buf)?;
                write_atomic(path, &buf)
            }
            _ => Ok(()),
        }
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => write_atomic(path, text.as_bytes()),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// The cache records only values of the default rules.
fn cacheable(engine: &Engine) -> bool {
    engine.route() == Route::BoundaryFirst && engine.grave_side() == GraveSide::Printed
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn eval_text(
    m: u32,
    points: Option<u32>,
    split: Option<(u32, u32)>,
    b: &BoundaryMonomial,
    engine: &Engine,
    format: Format,
) -> Result<String, Error> {
    let (points, value, refined) = match (points, split) {
        (Some(p), _) => (p, engine.h_total(m, p, b)?, None),
        (None, Some((a, g))) => {
            let idx = disk_hurwitz::engine::HurwitzIndex::new(m, a, g, b.clone());
            let v = engine.h_refined(&idx)?;
            (a + g, v.total(), Some((a, g, v)))
        }
        (None, None) => unreachable!("clap requires one of the forms"),
    };
    let rj = |q: &Rational| json!({"num": q.numer().to_string(), "den": q.denom().to_string()});
    Ok(match format {
        Format::Text => match &refined {
            None => format!("{}\n", to_text(&value)),
            Some((_, _, v)) => format!(
                "{}\nacute-first {}\ngrave-first {}\n",
                to_text(&value),
                to_text(&v.acute),
                to_text(&v.grave)
            ),
        },
        Format::Json => {
            let mut obj = json!({"m": m, "points": points, "b": b.to_string(), "value": rj(&value)});
            if let Some((a, g, v)) = &refined {
                obj["acute"] = json!(a);
                obj["grave"] = json!(g);
                obj["acute_first"] = rj(&v.acute);
                obj["grave_first"] = rj(&v.grave);
            }
            let mut s = serde_json::to_string_pretty(&obj).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (a, g) = match &refined {
                Some((a, g, _)) => (a.to_string(), g.to_string()),
                None => (String::new(), String::new()),
            };
            let (num, den) = to_machine(&value)
                .split_once('/')
                .map(|(n, d)| (n.to_string(), d.to_string()))
                .expect("machine form has a slash");
            format!("m,acute,grave,b,num,den\n{m},{a},{g},{b},{num},{den}\n")
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Eval {
            m,
            points,
            acute,
            grave,
            b,
            rules,
            common,
        } => {
            let b: BoundaryMonomial = b.parse()?;
            let engine = common.engine(rules)?;
            let text = eval_text(m, points, acute.zip(grave), &b, &engine, common.format())?;
            common.save_cache(&engine)?;
            common.emit(&text)?;
        }
        Command::Table {
            max_degree,
            max_points,
            rules,
            common,
        } => {
            let engine = common.engine(rules)?;
            let rows = value_table(&engine, max_degree, max_points)?;
            common.save_cache(&engine)?;
            common.emit(&render_table(
                &rows,
                common.convention(),
                max_degree,
                max_points,
                common.format(),
            ))?;
        }
        Command::Check { suite, common } => {
            let suite = match suite {
                SuiteArg::Oracle => Suite::Oracle,
                SuiteArg::Pde => Suite::Pde,
                SuiteArg::Classical => Suite::Classical,
                SuiteArg::Symmetry => Suite::Symmetry,
            };
            let outcome = checks::run(suite, common.convention())?;
            common.emit(&outcome.to_string())?;
            if !outcome.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Report {
            kind,
            max_degree,
            max_points,
            common,
        } => {
            let text = match kind {
                ReportArg::Consistency => {
                    ConsistencyReport::build(common.convention(), max_degree, max_points)?.render(common.format())
                }
                ReportArg::Routes => RoutesReport::build(common.convention(), max_degree)?.render(common.format()),
            };
            common.emit(&text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Usage(_) | Error::Domain(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
