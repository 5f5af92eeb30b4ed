//! Command-line front end: key generation, encoding, corruption, decoding,
//! and the leakage benchmark.
//!
//! Exit codes: 0 success, 1 usage or file-parse errors, 2 parameter or
//! length validation errors, 3 decode failure.

use clap::{Parser, Subcommand, ValueEnum};
use goppa::code::{CodeError, FileError, GoppaCode};
use goppa::mceliece::random_weight_pattern;
use goppa::newton::{decode, DecodeError, DecodeMode, Profile};
use goppa::patterson::patterson_decode;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "goppa",
    about = "Binary Goppa codes with a Newton-identity decoder",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random code and write it to a code file.
    Keygen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: String,
    },
    /// Encode a message word with a code file.
    Encode {
        #[arg(long)]
        code: String,
        #[arg(long)]
        message: String,
    },
    /// Flip a fixed number of random positions in a word.
    Corrupt {
        #[arg(long)]
        word: String,
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decode a received word: prints error vector, codeword, and message.
    Decode {
        #[arg(long)]
        code: String,
        #[arg(long)]
        received: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ProfileArg::Adaptive)]
        profile: ProfileArg,
        #[arg(long, default_value_t = false)]
        count_ops: bool,
    },
    /// Compare Newton fixed/adaptive op counts against Patterson iteration
    /// counts across error weights; writes a CSV report.
    Bench {
        #[arg(long)]
        code: String,
        /// Weight range, e.g. 0..3 (inclusive).
        #[arg(long)]
        weights: String,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Q,
    Sigma,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Adaptive,
    Fixed,
}

enum CliError {
    Parse(String),
    Validation(String),
    Decode(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Decode(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(s) | CliError::Validation(s) | CliError::Decode(s) => s,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

impl From<DecodeError> for CliError {
    fn from(e: DecodeError) -> CliError {
        match e {
            DecodeError::LengthMismatch { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Decode(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Keygen { m, r, n, seed, out } => cmd_keygen(m, r, n, seed, &out),
        Command::Encode { code, message } => cmd_encode(&code, &message),
        Command::Corrupt { word, weight, seed } => cmd_corrupt(&word, weight, seed),
        Command::Decode {
            code,
            received,
            mode,
            profile,
            count_ops,
        } => cmd_decode(&code, &received, mode, profile, count_ops),
        Command::Bench {
            code,
            weights,
            trials,
            seed,
            out,
        } => cmd_bench(&code, &weights, trials, seed, out.as_deref()),
    }
}

fn load_code(path: &str) -> Result<GoppaCode, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?;
    Ok(GoppaCode::from_file_string(&text)?)
}

fn parse_word(s: &str, expected: usize, what: &str) -> Result<Vec<u8>, CliError> {
    let word: Vec<u8> = s
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            _ => Err(CliError::Validation(format!(
                "{what} must be a '0'/'1' string"
            ))),
        })
        .collect::<Result<_, _>>()?;
    if word.len() != expected {
        return Err(CliError::Validation(format!(
            "{what} has length {}, expected {expected}",
            word.len()
        )));
    }
    Ok(word)
}

fn word_string(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 1 { '1' } else { '0' })
        .collect()
}

fn cmd_keygen(m: usize, r: usize, n: usize, seed: u64, out: &str) -> Result<(), CliError> {
    if !(2..=16).contains(&m) {
        return Err(CliError::Validation(format!(
            "m={m} outside supported range 2..=16"
        )));
    }
    let max_n = (1usize << m) - 1;
    if n > max_n {
        return Err(CliError::Validation(format!(
            "n={n} exceeds the {max_n} nonzero field elements of GF(2^{m})"
        )));
    }
    if r == 0 || n < 2 || r > n - 1 {
        return Err(CliError::Validation(format!(
            "need 1 <= r <= n-1, got r={r}, n={n}"
        )));
    }
    let code = GoppaCode::random(m, r, n, seed)?;
    std::fs::write(out, code.to_file_string())
        .map_err(|e| CliError::Validation(format!("cannot write {out}: {e}")))?;
    println!(
        "n={} k={} r={} t={}",
        code.n(),
        code.k(),
        code.r(),
        code.t()
    );
    Ok(())
}

fn cmd_encode(code_path: &str, message: &str) -> Result<(), CliError> {
    let code = load_code(code_path)?;
    let msg = parse_word(message, code.k(), "message")?;
    let cw = code.encode(&msg)?;
    println!("{}", word_string(&cw));
    Ok(())
}

fn cmd_corrupt(word: &str, weight: usize, seed: u64) -> Result<(), CliError> {
    if word.is_empty() {
        return Err(CliError::Validation("word must be nonempty".into()));
    }
    let mut bits = parse_word(word, word.len(), "word")?;
    if weight > bits.len() {
        return Err(CliError::Validation(format!(
            "weight {weight} exceeds word length {}",
            bits.len()
        )));
    }
    let pattern = random_weight_pattern(bits.len(), weight, seed);
    for (b, &p) in bits.iter_mut().zip(&pattern) {
        *b ^= p;
    }
    println!("{}", word_string(&bits));
    Ok(())
}

fn cmd_decode(
    code_path: &str,
    received: &str,
    mode: ModeArg,
    profile: ProfileArg,
    count_ops: bool,
) -> Result<(), CliError> {
    let code = load_code(code_path)?;
    let word = parse_word(received, code.n(), "received word")?;
    let mode = match mode {
        ModeArg::Q => DecodeMode::Q,
        ModeArg::Sigma => DecodeMode::Sigma,
        ModeArg::Both => DecodeMode::Both,
    };
    let profile = match profile {
        ProfileArg::Adaptive => Profile::Adaptive,
        ProfileArg::Fixed => Profile::Fixed,
    };
    let result = decode(&code, &word, mode, profile)?;
    println!("error= {}", word_string(&result.error));
    println!("codeword= {}", word_string(&result.codeword));
    println!("message= {}", word_string(&result.message));
    if count_ops {
        println!(
            "ops= field_mults={} field_invs={} row_ops={}",
            result.ops.field_mults, result.ops.field_invs, result.ops.row_ops
        );
    }
    Ok(())
}

fn parse_weight_range(s: &str, t: usize) -> Result<Vec<usize>, CliError> {
    let parse = |x: &str| {
        x.parse::<usize>()
            .map_err(|_| CliError::Validation(format!("bad weight range {s:?}")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let w = parse(s)?;
            (w, w)
        }
    };
    if lo > hi || hi > t {
        return Err(CliError::Validation(format!(
            "weight range {s} outside 0..{t} (code capacity)"
        )));
    }
    Ok((lo..=hi).collect())
}

fn cmd_bench(
    code_path: &str,
    weights: &str,
    trials: usize,
    seed: u64,
    out: Option<&str>,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Validation("trials must be positive".into()));
    }
    let code = load_code(code_path)?;
    if !code.is_irreducible() {
        return Err(CliError::Validation(
            "bench needs an irreducible goppa polynomial for the patterson baseline".into(),
        ));
    }
    let weights = parse_weight_range(weights, code.t())?;

    let mut csv = String::from(
        "weight,trials,newton_fixed,newton_adaptive,patt_min,patt_med,patt_max,failures\n",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &w in &weights {
        let mut fixed_total = None;
        let mut adaptive_totals = Vec::with_capacity(trials);
        let mut patterson_iters = Vec::with_capacity(trials);
        let mut failures = 0usize;
        for _ in 0..trials {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..2u8)).collect();
            let error = random_weight_pattern(code.n(), w, rng.gen());
            let cw = code.encode(&msg)?;
            let received: Vec<u8> = cw.iter().zip(&error).map(|(&c, &e)| c ^ e).collect();

            match decode(&code, &received, DecodeMode::Both, Profile::Fixed) {
                Ok(res) if res.message == msg && res.error == error => {
                    let total = res.ops.total();
                    if let Some(prev) = fixed_total {
                        debug_assert_eq!(prev, total, "fixed profile must be constant");
                    }
                    fixed_total = Some(total);
                }
                _ => failures += 1,
            }
            match decode(&code, &received, DecodeMode::Both, Profile::Adaptive) {
                Ok(res) if res.message == msg && res.error == error => {
                    adaptive_totals.push(res.ops.total())
                }
                _ => failures += 1,
            }
            match patterson_decode(&code, &received) {
                Ok((res, trace)) if res.error == error => {
                    patterson_iters.push(trace.eea_iterations)
                }
                _ => failures += 1,
            }
        }
        adaptive_totals.sort_unstable();
        patterson_iters.sort_unstable();
        let median = |v: &[u64]| if v.is_empty() { 0 } else { v[v.len() / 2] };
        let imedian = |v: &[usize]| if v.is_empty() { 0 } else { v[v.len() / 2] };
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            w,
            trials,
            fixed_total.unwrap_or(0),
            median(&adaptive_totals),
            patterson_iters.first().copied().unwrap_or(0),
            imedian(&patterson_iters),
            patterson_iters.last().copied().unwrap_or(0),
            failures
        );
    }

    match out {
        Some(path) => std::fs::write(path, &csv)
            .map_err(|e| CliError::Validation(format!("cannot write {path}: {e}")))?,
        None => print!("{csv}"),
    }
    Ok(())
}
