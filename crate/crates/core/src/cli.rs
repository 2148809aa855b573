//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative certification verdict, 2 usage or
//! domain error, 3 I/O error. Reals are printed with 12 significant digits.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::correlated::{
    classical_payoff_bounds, lemma1_check, max_bob_recommendation, max_ce_payoff,
    CorrelatedStrategy,
};
use crate::error::Error;
use crate::game::{build_game, Epsilon, GameFile, Player, UtilityTable, EPSILON_MAX};
use crate::nosignaling::{ns_vertices, pr_star_payoffs, verify_pr_nash};
use crate::quantum::{
    analytic_best_response, best_response_max, q_star_beats_tightened_bounds, q_star_payoffs,
    theorem2_window, tightened_classical_bounds,
};
use crate::simulate::{run, AdviceSource};
use crate::strategy::{Deviation, EquilibriumReport, PayoffMatrix, PureStrategy, GAIN_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// First line of every scan CSV.
pub const SCAN_CSV_HEADER: &str = "# advice-games scan v1: epsilon,pure_alice_max,pure_bob_max,bound_alice_eq5,bound_bob_eq6,ce_alice_lp,ce_bob_lp,pr_alice,pr_bob,pr_nash,q_alice,q_bob,q_nash,in_theorem2_window";

#[derive(Debug, Parser)]
#[command(
    name = "advice-games",
    version,
    about = "Bayesian games with classical, no-signaling and quantum advice"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Utility table of G(ε) (or of a game file).
    Table {
        #[arg(long, required_unless_present = "game")]
        epsilon: Option<f64>,
        /// Game in the JSON game format instead of G(ε).
        #[arg(long, conflicts_with = "epsilon")]
        game: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Equilibria of a given class with the pure payoff table.
    Equilibria {
        #[arg(long, required_unless_present = "game")]
        epsilon: Option<f64>,
        #[arg(long, conflicts_with = "epsilon")]
        game: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pure")]
        class: EquilibriumClass,
        #[arg(long)]
        json: bool,
    },
    /// Classical payoff bounds, correlated-equilibrium LP maxima and the
    /// S3-recommendation check.
    Bound {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        json: bool,
    },
    /// Whether PR* or Q* advice is a Nash equilibrium.
    Certify {
        #[arg(long, value_enum)]
        advice: CertifyAdvice,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo play against the analytic payoffs.
    Simulate {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum)]
        advice: SimulateAdvice,
        #[arg(long, default_value_t = 1_000_000)]
        rounds: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// JSON `{"p": [[..4..] x4]}` recommendation distribution for
        /// classical advice; defaults to a point mass on the first pure
        /// Nash profile.
        #[arg(long)]
        strategy_file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// The 24 no-signaling vertices as JSON.
    Vertices,
    /// One row of results per ε on a grid.
    Scan {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: ScanFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquilibriumClass {
    Pure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyAdvice {
    Pr,
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimulateAdvice {
    Classical,
    Pr,
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Formats like C's `%.12g`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, v);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            &s
        };
        if s == "-0" {
            "0".into()
        } else {
            s.to_string()
        }
    } else {
        let s = format!("{:.11e}", v);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

/// `v` rounded to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    fmt_num(v).parse().unwrap_or(v)
}

fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|f| serde_json::Number::from_f64(round_sig(f)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn print_json(out: &mut dyn Write, v: Value) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(&round_json(v)).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

fn epsilon(v: f64) -> std::result::Result<Epsilon, Failure> {
    Ok(Epsilon::new(v)?)
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_game(
    epsilon_arg: Option<f64>,
    game: Option<&Path>,
) -> std::result::Result<UtilityTable, Failure> {
    match (epsilon_arg, game) {
        (_, Some(path)) => {
            let file: GameFile = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(UtilityTable::try_from(file)?)
        }
        (Some(v), None) => Ok(build_game(epsilon(v)?)),
        (None, None) => Err(Failure::Usage(
            "either --epsilon or --game is required".into(),
        )),
    }
}

macro_rules! out {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| Failure::Io(e.to_string()))?
    };
}

fn cmd_table(game: &UtilityTable, json: bool, w: &mut dyn Write) -> CliResult {
    if json {
        print_json(
            w,
            serde_json::to_value(GameFile::from(game)).expect("serializable"),
        )?;
        return Ok(EXIT_OK);
    }
    out!(w, "{:<4} {:<4} {:>14} {:>14}", "x", "y", "u_A", "u_B");
    for (xi, (ra, rb)) in game
        .table(Player::Alice)
        .iter()
        .zip(game.table(Player::Bob))
        .enumerate()
    {
        for (yi, (a, b)) in ra.iter().zip(rb).enumerate() {
            out!(
                w,
                "{:<4} {:<4} {:>14} {:>14}",
                format!("{:02b}", xi),
                format!("{:02b}", yi),
                fmt_num(*a),
                fmt_num(*b)
            );
        }
    }
    Ok(EXIT_OK)
}

fn payoff_grid(m: &PayoffMatrix, w: &mut dyn Write) -> std::result::Result<(), Failure> {
    let head: Vec<String> = PureStrategy::ALL
        .iter()
        .map(|s| format!("{:>30}", s.to_string()))
        .collect();
    out!(w, "{:<4}{}", "", head.join(""));
    for a in PureStrategy::ALL {
        let cells: Vec<String> = PureStrategy::ALL
            .iter()
            .map(|&b| {
                let p = m.0[a.index()][b.index()];
                format!(
                    "{:>30}",
                    format!("({}, {})", fmt_num(p.alice), fmt_num(p.bob))
                )
            })
            .collect();
        out!(w, "{:<4}{}", a.to_string(), cells.join(""));
    }
    Ok(())
}

fn cmd_equilibria(game: &UtilityTable, json: bool, w: &mut dyn Write) -> CliResult {
    let m = PayoffMatrix::of_game(game);
    let nash = m.pure_nash();
    if json {
        let eq: Vec<Value> = nash
            .iter()
            .map(|p| json!({ "alice": p.alice.to_string(), "bob": p.bob.to_string(), "payoffs": m.get(*p) }))
            .collect();
        print_json(
            w,
            json!({ "class": "pure", "equilibria": eq, "payoff_table": m }),
        )?;
        return Ok(EXIT_OK);
    }
    out!(w, "pure Nash equilibria: {}", nash.len());
    for p in &nash {
        let v = m.get(*p);
        out!(
            w,
            "  {p}  payoffs ({}, {})",
            fmt_num(v.alice),
            fmt_num(v.bob)
        );
    }
    out!(w, "");
    out!(w, "payoff table (rows: Alice, columns: Bob)");
    payoff_grid(&m, w)?;
    Ok(EXIT_OK)
}

fn cmd_bound(eps: Epsilon, json: bool, w: &mut dyn Write) -> CliResult {
    let game = build_game(eps);
    let bounds = classical_payoff_bounds(eps);
    let ce_a = max_ce_payoff(&game, Player::Alice)?;
    let ce_b = max_ce_payoff(&game, Player::Bob)?;
    let tight = tightened_classical_bounds(eps);
    let lemma = match lemma1_check(eps) {
        Ok(holds) => Some((
            holds,
            max_bob_recommendation(&game, PureStrategy::Identity)?.value,
        )),
        Err(Error::Domain { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if json {
        let lemma = lemma.map(|(holds, lambda3)| json!({ "holds": holds, "max_lambda3": lambda3 }));
        print_json(
            w,
            json!({
                "epsilon": eps.value(),
                "regime": bounds.regime,
                "bound_alice": bounds.alice_bound,
                "bound_bob": bounds.bob_bound,
                "tightened_alice": tight.alice,
                "tightened_bob": tight.bob,
                "ce_alice_lp": ce_a.value,
                "ce_bob_lp": ce_b.value,
                "ce_alice_witness": ce_a.witness,
                "ce_bob_witness": ce_b.witness,
                "lemma1": lemma,
            }),
        )?;
        return Ok(EXIT_OK);
    }
    out!(
        w,
        "epsilon: {}  regime: {:?}",
        fmt_num(eps.value()),
        bounds.regime
    );
    out!(
        w,
        "classical bound     alice {:>16}  bob {:>16}",
        fmt_num(bounds.alice_bound),
        fmt_num(bounds.bob_bound)
    );
    out!(
        w,
        "tightened bound     alice {:>16}  bob {:>16}",
        fmt_num(tight.alice),
        fmt_num(tight.bob)
    );
    out!(
        w,
        "CE LP maximum       alice {:>16}  bob {:>16}",
        fmt_num(ce_a.value),
        fmt_num(ce_b.value)
    );
    match lemma {
        Some((holds, l3)) => out!(
            w,
            "Bob never told S3 in a CE: {}  (max λ3 = {})",
            if holds { "yes" } else { "no" },
            fmt_num(l3)
        ),
        None => out!(w, "Bob never told S3 in a CE: n/a outside [0.25, 0.5]"),
    }
    Ok(EXIT_OK)
}

fn describe(d: &Option<Deviation>) -> String {
    match d {
        None => "none".into(),
        Some(Deviation::Pure { strategy }) => format!("pure {strategy}"),
        Some(Deviation::NoSignaling { vertex }) => format!("vertex {vertex}"),
        Some(Deviation::Povm { params }) => format!(
            "POVM a=({}; {}, {}, {}) b=({}; {}, {}, {})",
            fmt_num(params.type0.offset),
            fmt_num(params.type0.bloch[0]),
            fmt_num(params.type0.bloch[1]),
            fmt_num(params.type0.bloch[2]),
            fmt_num(params.type1.offset),
            fmt_num(params.type1.bloch[0]),
            fmt_num(params.type1.bloch[1]),
            fmt_num(params.type1.bloch[2]),
        ),
    }
}

fn verdict_lines(r: &EquilibriumReport, w: &mut dyn Write) -> std::result::Result<(), Failure> {
    out!(
        w,
        "alice best gain: {}  deviation: {}",
        fmt_num(r.alice_gain),
        describe(&r.best_alice_deviation)
    );
    out!(
        w,
        "bob best gain:   {}  deviation: {}",
        fmt_num(r.bob_gain),
        describe(&r.best_bob_deviation)
    );
    out!(
        w,
        "verdict: {}",
        if r.is_equilibrium {
            "equilibrium"
        } else {
            "not an equilibrium"
        }
    );
    Ok(())
}

fn verdict_code(r: &EquilibriumReport) -> i32 {
    if r.is_equilibrium {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_certify(advice: CertifyAdvice, eps: Epsilon, json: bool, w: &mut dyn Write) -> CliResult {
    match advice {
        CertifyAdvice::Pr => {
            let payoffs = pr_star_payoffs(eps)?;
            let report = verify_pr_nash(eps)?;
            if json {
                print_json(
                    w,
                    json!({ "advice": "pr", "epsilon": eps.value(), "payoffs": payoffs, "report": report }),
                )?;
            } else {
                out!(
                    w,
                    "PR* payoffs: alice {}  bob {}",
                    fmt_num(payoffs.alice),
                    fmt_num(payoffs.bob)
                );
                verdict_lines(&report, w)?;
            }
            Ok(verdict_code(&report))
        }
        CertifyAdvice::Quantum => {
            let payoffs = q_star_payoffs(eps)?;
            let alice = best_response_max(Player::Alice, eps)?;
            let bob = best_response_max(Player::Bob, eps)?;
            let report = EquilibriumReport::from_gains(
                (
                    alice.gain(),
                    Some(Deviation::Povm {
                        params: alice.argmax,
                    }),
                ),
                (bob.gain(), Some(Deviation::Povm { params: bob.argmax })),
            );
            let window = theorem2_window();
            let in_window = window.contains(eps);
            let beats = q_star_beats_tightened_bounds(eps)?;
            if json {
                print_json(
                    w,
                    json!({
                        "advice": "quantum",
                        "epsilon": eps.value(),
                        "payoffs": payoffs,
                        "best_response": { "alice": alice, "bob": bob },
                        "report": report,
                        "window": window,
                        "in_window": in_window,
                        "beats_tightened_bounds": beats,
                    }),
                )?;
            } else {
                out!(
                    w,
                    "Q* payoffs: alice {}  bob {}",
                    fmt_num(payoffs.alice),
                    fmt_num(payoffs.bob)
                );
                for br in [&alice, &bob] {
                    out!(
                        w,
                        "{} best response: analytic {}  searched {}",
                        br.player,
                        fmt_num(br.analytic),
                        fmt_num(br.numeric)
                    );
                }
                verdict_lines(&report, w)?;
                out!(
                    w,
                    "window ({}, {}): {}",
                    fmt_num(window.c1),
                    fmt_num(window.c2),
                    if in_window { "inside" } else { "outside" }
                );
                out!(
                    w,
                    "beats tightened classical bounds: {}",
                    if beats { "yes" } else { "no" }
                );
            }
            Ok(verdict_code(&report))
        }
    }
}

#[derive(Debug, Deserialize)]
struct StrategyFile {
    p: [[f64; 4]; 4],
}

fn cmd_simulate(
    eps: Epsilon,
    advice: SimulateAdvice,
    rounds: u64,
    seed: u64,
    strategy_file: Option<&Path>,
    json: bool,
    w: &mut dyn Write,
) -> CliResult {
    let game = build_game(eps);
    let source = match advice {
        SimulateAdvice::Classical => {
            let strategy = match strategy_file {
                Some(path) => {
                    let file: StrategyFile = serde_json::from_str(&read_file(path)?)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    CorrelatedStrategy::new(file.p)?
                }
                None => {
                    let first = PayoffMatrix::of_game(&game)
                        .pure_nash()
                        .into_iter()
                        .next()
                        .ok_or_else(|| {
                            Failure::Usage("no pure Nash profile to recommend".into())
                        })?;
                    CorrelatedStrategy::point_mass(first)
                }
            };
            AdviceSource::ClassicalCorrelated(strategy)
        }
        SimulateAdvice::Pr => AdviceSource::PrBox,
        SimulateAdvice::Quantum => AdviceSource::q_star(),
    };
    if strategy_file.is_some() && advice != SimulateAdvice::Classical {
        return Err(Failure::Usage(
            "--strategy-file only applies to classical advice".into(),
        ));
    }
    let report = run(&game, &source, rounds, seed)?;
    if json {
        print_json(w, serde_json::to_value(&report).expect("serializable"))?;
    } else {
        out!(w, "rounds: {}  seed: {}", report.rounds, report.seed);
        for (label, p) in [
            ("empirical", report.empirical),
            ("analytic", report.analytic),
            ("abs error", report.abs_error),
        ] {
            out!(
                w,
                "{label:<10} alice {:>16}  bob {:>16}",
                fmt_num(p.alice),
                fmt_num(p.bob)
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_vertices(w: &mut dyn Write) -> CliResult {
    let vertices: Vec<Value> = ns_vertices()
        .into_iter()
        .map(|v| {
            json!({
                "index": v.kind.index(),
                "kind": v.kind,
                "label": v.kind.to_string(),
                "correlation": v.correlation.table(),
            })
        })
        .collect();
    print_json(w, Value::Array(vertices))?;
    Ok(EXIT_OK)
}

/// One grid point of a scan. Reals are stored rounded to 12 significant
/// digits, so a written CSV parses back to identical rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub epsilon: f64,
    /// Largest payoff each player gets in some pure Nash equilibrium.
    pub pure_alice_max: f64,
    pub pure_bob_max: f64,
    pub bound_alice_eq5: f64,
    pub bound_bob_eq6: f64,
    pub ce_alice_lp: f64,
    pub ce_bob_lp: f64,
    pub pr_alice: f64,
    pub pr_bob: f64,
    pub pr_nash: bool,
    pub q_alice: f64,
    pub q_bob: f64,
    pub q_nash: bool,
    pub in_theorem2_window: bool,
}

impl ScanRow {
    /// The Q* verdict here uses the closed-form best response; `certify`
    /// also runs the measurement search.
    pub fn at(eps: Epsilon) -> crate::Result<Self> {
        let game = build_game(eps);
        let m = PayoffMatrix::of_game(&game);
        let nash = m.pure_nash();
        let pure_max = |player| {
            nash.iter()
                .map(|p| m.get(*p).get(player))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let bounds = classical_payoff_bounds(eps);
        let pr = pr_star_payoffs(eps)?;
        let q = q_star_payoffs(eps)?;
        let q_nash = Player::BOTH
            .iter()
            .all(|&p| analytic_best_response(p, eps).0 - q.get(p) <= GAIN_TOL);
        Ok(ScanRow {
            epsilon: round_sig(eps.value()),
            pure_alice_max: round_sig(pure_max(Player::Alice)),
            pure_bob_max: round_sig(pure_max(Player::Bob)),
            bound_alice_eq5: round_sig(bounds.alice_bound),
            bound_bob_eq6: round_sig(bounds.bob_bound),
            ce_alice_lp: round_sig(max_ce_payoff(&game, Player::Alice)?.value),
            ce_bob_lp: round_sig(max_ce_payoff(&game, Player::Bob)?.value),
            pr_alice: round_sig(pr.alice),
            pr_bob: round_sig(pr.bob),
            pr_nash: verify_pr_nash(eps)?.is_equilibrium,
            q_alice: round_sig(q.alice),
            q_bob: round_sig(q.bob),
            q_nash,
            in_theorem2_window: theorem2_window().contains(eps),
        })
    }
}

/// Grid `from, from + step, …` up to `to`; `to` itself is included when it
/// is within rounding of a grid point.
pub fn scan_grid(from: f64, to: f64, step: f64) -> crate::Result<Vec<Epsilon>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(Error::invalid(
            "scan range",
            "from, to and step must be finite with step > 0",
        ));
    }
    if !(0.0 <= from && from < to && to <= EPSILON_MAX) {
        return Err(Error::invalid(
            "scan range",
            format!("need 0 ≤ from < to ≤ {EPSILON_MAX}"),
        ));
    }
    let span = (to - from) / step;
    let whole = span.round();
    if (span - whole).abs() <= 1e-9 * span.max(1.0) {
        return Epsilon::grid(from, to, whole as usize + 1);
    }
    (0..=span.floor() as usize)
        .map(|k| Epsilon::new(from + k as f64 * step))
        .collect()
}

pub fn scan_rows(from: f64, to: f64, step: f64) -> crate::Result<Vec<ScanRow>> {
    scan_grid(from, to, step)?
        .into_iter()
        .map(ScanRow::at)
        .collect()
}

pub fn write_scan_csv(rows: &[ScanRow], w: impl Write) -> csv::Result<()> {
    let mut w = w;
    writeln!(w, "{SCAN_CSV_HEADER}")?;
    let mut csv = csv::Writer::from_writer(w);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_scan_csv(r: impl std::io::Read) -> csv::Result<Vec<ScanRow>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(r)
        .deserialize()
        .collect()
}

fn cmd_scan(
    from: f64,
    to: f64,
    step: f64,
    out: &Path,
    format: ScanFormat,
    w: &mut dyn Write,
) -> CliResult {
    let rows = scan_rows(from, to, step)?;
    let mut buf = Vec::new();
    match format {
        ScanFormat::Csv => {
            write_scan_csv(&rows, &mut buf).map_err(|e| Failure::Io(e.to_string()))?
        }
        ScanFormat::Json => {
            serde_json::to_writer_pretty(&mut buf, &rows)
                .map_err(|e| Failure::Io(e.to_string()))?;
            buf.push(b'\n');
        }
    }
    fs::write(out, buf).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    out!(w, "wrote {} rows to {}", rows.len(), out.display());
    Ok(EXIT_OK)
}

fn dispatch(command: Command, w: &mut dyn Write) -> CliResult {
    match command {
        Command::Table {
            epsilon,
            game,
            json,
        } => cmd_table(&load_game(epsilon, game.as_deref())?, json, w),
        Command::Equilibria {
            epsilon,
            game,
            class: EquilibriumClass::Pure,
            json,
        } => cmd_equilibria(&load_game(epsilon, game.as_deref())?, json, w),
        Command::Bound { epsilon: e, json } => cmd_bound(epsilon(e)?, json, w),
        Command::Certify {
            advice,
            epsilon: e,
            json,
        } => cmd_certify(advice, epsilon(e)?, json, w),
        Command::Simulate {
            epsilon: e,
            advice,
            rounds,
            seed,
            strategy_file,
            json,
        } => cmd_simulate(
            epsilon(e)?,
            advice,
            rounds,
            seed,
            strategy_file.as_deref(),
            json,
            w,
        ),
        Command::Vertices => cmd_vertices(w),
        Command::Scan {
            from,
            to,
            step,
            out,
            format,
        } => cmd_scan(from, to, step, &out, format, w),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "I/O error: {msg}");
            EXIT_IO
        }
    }
}
