use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use brickword::exact::parse_rational;
use brickword::gentle::{validate_gentle, AlgebraFile, GentleAlgebra, Quiver, StringWord};
use brickword::graph_map::{graph_maps, is_brick_finite, kisses, BrickVerdict, Ends, GraphMap, Orientation};
use brickword::kronecker::{
    brick_window_checks, classify_infinite, inner_witness_ab, not_brick_evidence, strong_inner_witness_ab,
    verify_brick_band_christoffel, ABWord, InfiniteDKSpec,
};
use brickword::representation::{band_module_end_dim, hom_dim_oracle};
use brickword::single_kiss::{shared_suffix_check, verify_single_kissing_file};
use brickword::sturmian::{
    characteristic_word, christoffel, cutting_word, CharacteristicCf, Convention, IntervalSpec, SlopeSpec,
};
use brickword::word::{complexity, is_balanced, Balance, BinaryWord, Letter, WordWindow};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "brickword", version, about = "Sturmian words and bricks over gentle algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gentle algebras, strings and graph maps.
    #[command(subcommand)]
    Gentle(GentleCommand),
    /// Binary words, cutting words and Christoffel words.
    #[command(subcommand)]
    Word(WordCommand),
    /// Strings of the double-Kronecker algebra as words in a and b.
    #[command(subcommand)]
    Bridge(BridgeCommand),
}

#[derive(Subcommand)]
enum GentleCommand {
    /// Check the gentleness conditions.
    Validate { file: PathBuf },
    /// List all strings up to a length.
    Strings {
        file: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// List bands up to rotation and inversion.
    Bands {
        file: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Graph maps between two string modules, checked against linear algebra.
    Hom { file: PathBuf, u: String, v: String },
    /// Decide whether a string module is a brick.
    Brick { file: PathBuf, w: String },
    /// Kisses from one string to another.
    Kisses { file: PathBuf, u: String, v: String },
    /// Endomorphism dimension of a band module.
    BandEnd { file: PathBuf, w: String },
}

#[derive(Subcommand)]
enum WordCommand {
    /// The Christoffel word of slope p/q.
    Christoffel { p: u64, q: u64 },
    /// Cutting word of a line over an interval.
    Cutting(CuttingArgs),
    /// Prefix of a characteristic word given by its continued fraction.
    Characteristic {
        /// For example `[0; (1)]` or `[0; 2, (1, 3)]`.
        #[arg(long)]
        cf: String,
        #[arg(long)]
        len: usize,
    },
    /// Decide balance, with a witness when unbalanced.
    Balanced { w: String },
    /// Number of distinct subwords of length n.
    Complexity { w: String, n: usize },
}

#[derive(Args)]
struct CuttingArgs {
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    intercept: String,
    /// For example `(0,8)`, `[0,inf)` or `(-inf,inf)`.
    #[arg(long, allow_hyphen_values = true)]
    domain: String,
    /// Lattice points give `ab`.
    #[arg(long, conflicts_with = "lower")]
    upper: bool,
    /// Lattice points give `ba` (the default).
    #[arg(long)]
    lower: bool,
    /// Number of letters; required for unbounded domains.
    #[arg(long)]
    len: Option<usize>,
}

#[derive(Subcommand)]
enum BridgeCommand {
    /// Classify an infinite string given as JSON.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        /// Letters in the windows used to double-check the verdict.
        #[arg(long, default_value_t = 200)]
        window: usize,
    },
    /// Compare brick bands in Str(a,b) with Christoffel words.
    VerifyChristoffel {
        #[arg(long)]
        max: usize,
    },
    /// Check a single-kiss configuration (a, b) over an algebra.
    VerifyConfig {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Check that double-role substrings end with z for all words up to a length.
    SharedSuffix {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        right_open: bool,
    },
    /// Graph-map witnesses on a finite a,b-window.
    Witness {
        #[arg(long)]
        word: String,
        #[arg(long)]
        left_open: bool,
        #[arg(long)]
        right_open: bool,
    },
}

/// Whether a command found a violation or mismatch.
enum Status {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Gentle(c) => gentle(c),
        Command::Word(c) => word(c),
        Command::Bridge(c) => bridge(c),
    }
}

fn read_algebra_file(path: &Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<GentleAlgebra> {
    let file = read_algebra_file(path)?;
    GentleAlgebra::from_file(&file).with_context(|| format!("loading {}", path.display()))
}

fn parse_string(alg: &GentleAlgebra, text: &str) -> Result<StringWord> {
    Ok(alg.parse_string(text)?)
}

fn parse_word(text: &str) -> Result<BinaryWord> {
    if text.is_empty() {
        return Ok(BinaryWord::empty());
    }
    Ok(text.parse()?)
}

fn describe(alg: &GentleAlgebra, m: &GraphMap) -> String {
    let inverted = if m.target.orientation == Orientation::Inverted { " inverted" } else { "" };
    format!("{} from {} to {}{inverted}", alg.format_string(&m.pattern), m.source.position, m.target.position)
}

fn gentle(command: GentleCommand) -> Result<Status> {
    match command {
        GentleCommand::Validate { file } => {
            let f = read_algebra_file(&file)?;
            let quiver = Quiver { vertices: f.vertices, arrows: f.arrows };
            let violations = validate_gentle(&quiver, &f.relations)?;
            if violations.is_empty() {
                println!("gentle");
                return Ok(Status::Ok);
            }
            for v in violations {
                println!("violation {v}");
            }
            Ok(Status::Violation)
        }
        GentleCommand::Strings { file, max } => {
            let alg = load_algebra(&file)?;
            for w in alg.enumerate_strings(max) {
                println!("{}", alg.format_string(&w));
            }
            Ok(Status::Ok)
        }
        GentleCommand::Bands { file, max } => {
            let alg = load_algebra(&file)?;
            for b in alg.enumerate_bands(max) {
                println!("{}", alg.format_string(&b.representative));
            }
            Ok(Status::Ok)
        }
        GentleCommand::Hom { file, u, v } => {
            let alg = load_algebra(&file)?;
            let (u, v) = (parse_string(&alg, &u)?, parse_string(&alg, &v)?);
            let maps = graph_maps(&alg, &u, &v);
            for m in &maps {
                println!("map {}", describe(&alg, m));
            }
            let oracle = hom_dim_oracle(&alg, &u, &v);
            println!("graph maps {}", maps.len());
            println!("hom dimension {oracle}");
            Ok(if oracle == maps.len() { Status::Ok } else { Status::Violation })
        }
        GentleCommand::Brick { file, w } => {
            let alg = load_algebra(&file)?;
            let w = parse_string(&alg, &w)?;
            match is_brick_finite(&alg, &w) {
                BrickVerdict::Brick => println!("brick"),
                BrickVerdict::NotBrick(m) => println!("not a brick: {}", describe(&alg, &m)),
            }
            Ok(Status::Ok)
        }
        GentleCommand::Kisses { file, u, v } => {
            let alg = load_algebra(&file)?;
            let (u, v) = (parse_string(&alg, &u)?, parse_string(&alg, &v)?);
            let found = kisses(&alg, &u, &v);
            for m in &found {
                println!("kiss {}", describe(&alg, m));
            }
            println!("kisses {}", found.len());
            Ok(Status::Ok)
        }
        GentleCommand::BandEnd { file, w } => {
            let alg = load_algebra(&file)?;
            let band = alg.band(&parse_string(&alg, &w)?)?;
            println!("band {}", alg.format_string(&band.representative));
            println!("end dimension {}", band_module_end_dim(&alg, &band));
            Ok(Status::Ok)
        }
    }
}

fn word(command: WordCommand) -> Result<Status> {
    match command {
        WordCommand::Christoffel { p, q } => {
            println!("{}", christoffel(p, q)?.word);
        }
        WordCommand::Cutting(args) => {
            let slope: SlopeSpec = args.slope.parse()?;
            let intercept = parse_rational(&args.intercept)?;
            let domain: IntervalSpec = args.domain.parse()?;
            let convention = if args.upper { Convention::Upper } else { Convention::Lower };
            let w = cutting_word(&slope, intercept, &domain, convention, args.len)?;
            println!("{}", w.word);
        }
        WordCommand::Characteristic { cf, len } => {
            let cf: CharacteristicCf = cf.parse()?;
            println!("{}", characteristic_word(&cf, len)?.word);
        }
        WordCommand::Balanced { w } => match is_balanced(&parse_word(&w)?) {
            Balance::Balanced => println!("balanced"),
            Balance::Unbalanced { length, lighter, heavier } => {
                println!("unbalanced length {length} lighter {lighter} heavier {heavier}")
            }
        },
        WordCommand::Complexity { w, n } => {
            println!("{}", complexity(&parse_word(&w)?, n));
        }
    }
    Ok(Status::Ok)
}

fn bridge(command: BridgeCommand) -> Result<Status> {
    match command {
        BridgeCommand::Classify { spec, window } => {
            let text = std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let spec: InfiniteDKSpec =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", spec.display()))?;
            let verdict = classify_infinite(&spec)?;
            println!("spec {spec}");
            println!("verdict {verdict}");
            let mut status = Status::Ok;
            if verdict.is_brick() {
                for check in brick_window_checks(&spec, window)? {
                    match check.witness {
                        None => println!("check {} over {window} letters: none", check.name),
                        Some(w) => {
                            println!("check {} over {window} letters: {w}", check.name);
                            status = Status::Violation;
                        }
                    }
                }
            } else {
                match not_brick_evidence(&spec, window)? {
                    Some(e) if e.holds() => println!("evidence {e}"),
                    Some(e) => {
                        println!("evidence {e} fails on its window");
                        status = Status::Violation;
                    }
                    None => println!("evidence none within {window} letters"),
                }
            }
            Ok(status)
        }
        BridgeCommand::VerifyChristoffel { max } => {
            let report = verify_brick_band_christoffel(max);
            println!("{report}");
            Ok(if report.mismatches() == 0 { Status::Ok } else { Status::Violation })
        }
        BridgeCommand::VerifyConfig { algebra, a, b } => {
            let file = read_algebra_file(&algebra)?;
            match verify_single_kissing_file(&file, &a, &b) {
                Ok(config) => {
                    println!("{config}");
                    println!("verified");
                    Ok(Status::Ok)
                }
                Err(violations) => {
                    for v in violations {
                        println!("violation {v}");
                    }
                    Ok(Status::Violation)
                }
            }
        }
        BridgeCommand::SharedSuffix { algebra, a, b, max, right_open } => {
            let file = read_algebra_file(&algebra)?;
            let config = verify_single_kissing_file(&file, &a, &b)
                .map_err(|v| anyhow!("configuration not verified: {}", v.join("; ")))?;
            let ends = Ends { left_open: false, right_open };
            let (mut roles, mut bad) = (0, 0);
            for len in 1..=max {
                for mask in 0u64..1 << len {
                    let letters = (0..len).map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A });
                    let host = ABWord::forward(BinaryWord::new(letters.collect()));
                    let report = shared_suffix_check(&config, &host, ends);
                    roles += report.double_roles.len();
                    for d in report.double_roles.iter().filter(|d| !d.holds()) {
                        println!("violation {} {}", report.host, config.algebra().format_string(&d.s));
                        bad += 1;
                    }
                }
            }
            println!("double roles {roles}");
            println!("violations {bad}");
            Ok(if bad == 0 { Status::Ok } else { Status::Violation })
        }
        BridgeCommand::Witness { word, left_open, right_open } => {
            let w = parse_word(&word)?;
            if w.is_empty() {
                bail!("the window must be non-empty");
            }
            let window = WordWindow::new(w, !left_open, !right_open);
            let show = |x: Option<BinaryWord>| x.map_or("none".to_string(), |x| format!("x = \"{x}\""));
            println!("strong inner {}", show(strong_inner_witness_ab(&window)));
            println!("inner {}", show(inner_witness_ab(&window)));
            Ok(Status::Ok)
        }
    }
}
