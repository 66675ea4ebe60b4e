//! Argument parsing and command dispatch for the `montdiv` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use montdiv::bench::{run_bench, BenchConfig};
use montdiv::radix_power::bitmap_census;
use montdiv::{
    div_rem, div_rem_folded, divides, fermat_has_factor, make_ctx, mersenne_has_factor,
    neg_pow2_mod, pos_pow2_mod, remainder, remainder_folded, AnyCtx, BigUint, DivisorSpec, Fold,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_Q: &str = "16357897499336320049";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed integer {0:?}")]
    Malformed(String),
    #[error("constant in {0:?} does not fit in 64 bits")]
    ConstantTooWide(String),
    #[error("{0:?} is negative")]
    Negative(String),
    #[error("cannot read limb file {path}: {source}")]
    LimbFile {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Math(#[from] montdiv::Error),
    #[error("{0}")]
    Usage(String),
}

/// Parses decimal, `0x` hex, `2^K`, `2^K+c` or `2^K-c`, or a limb file given
/// as `@path` or as the path of an existing file.
pub fn parse_biguint(text: &str) -> Result<BigUint, CliError> {
    let t = text.trim();
    if let Some(path) = t.strip_prefix('@') {
        return load(path);
    }
    if let Some(expr) = t.strip_prefix("2^") {
        return parse_pow2_expr(t, expr);
    }
    match t.parse::<BigUint>() {
        Ok(v) => Ok(v),
        Err(_) if Path::new(t).is_file() => load(t),
        Err(_) => Err(CliError::Malformed(text.to_string())),
    }
}

fn load(path: &str) -> Result<BigUint, CliError> {
    montdiv::limbfile::load(Path::new(path)).map_err(|source| CliError::LimbFile {
        path: path.to_string(),
        source,
    })
}

fn parse_pow2_expr(full: &str, expr: &str) -> Result<BigUint, CliError> {
    let malformed = || CliError::Malformed(full.to_string());
    let split = expr.find(['+', '-']);
    let (k, rest) = match split {
        Some(i) => (&expr[..i], Some((&expr[i..i + 1], &expr[i + 1..]))),
        None => (expr, None),
    };
    if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let k: u32 = k.parse().map_err(|_| malformed())?;
    let base = BigUint::pow2(k);
    let Some((sign, c)) = rest else {
        return Ok(base);
    };
    if c.is_empty() || !c.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let c: u64 = c
        .parse()
        .map_err(|_| CliError::ConstantTooWide(full.to_string()))?;
    if sign == "+" {
        Ok(base.add_u64(c))
    } else {
        base.checked_sub_u64(c)
            .ok_or_else(|| CliError::Negative(full.to_string()))
    }
}

#[derive(Parser, Debug)]
#[command(name = "montdiv", version, about = "Right-to-left multiword division")]
struct Cli {
    /// Print numbers in hexadecimal
    #[arg(long, global = true)]
    hex: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct DivArgs {
    /// Dividend
    #[arg(long)]
    x: String,
    /// Divisor (at least 2; its odd part must fit in 128 bits)
    #[arg(long)]
    q: String,
    /// Number of interleaved chains: 1, 2 or 4
    #[arg(long)]
    fold: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether q divides x
    Isdiv(DivArgs),
    /// Quotient and remainder
    Divmod(DivArgs),
    /// Remainder only
    Rem(DivArgs),
    /// 2^p mod q, or 2^-p mod q with --inverse
    Pow2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Test whether q divides 2^p - 1
    Mersenne {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: String,
    },
    /// Test whether q divides 2^(2^f) + 1
    Fermat {
        #[arg(long)]
        f: u32,
        #[arg(long)]
        q: String,
    },
    /// Set-bit differences between adjacent powering bitmaps
    Census {
        #[arg(long, default_value_t = 6)]
        min: u64,
        #[arg(long, default_value_t = 1 << 20)]
        max: u64,
    },
    /// Throughput of remainder and divmod at every fold, as CSV
    Bench {
        #[arg(long, default_value_t = 1 << 20)]
        words: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, env = "MONTDIV_SEED", default_value_t = 1)]
        seed: u64,
        /// Odd 64-bit modulus
        #[arg(long, default_value = DEFAULT_Q)]
        q: String,
    },
}

struct Fmt {
    hex: bool,
}

impl Fmt {
    fn big(&self, v: &BigUint) -> String {
        if self.hex {
            format!("0x{v:x}")
        } else {
            v.to_string()
        }
    }

    fn word(&self, v: u128) -> String {
        if self.hex {
            format!("0x{v:x}")
        } else {
            v.to_string()
        }
    }
}

fn fold_arg(f: Option<usize>) -> Result<Option<Fold>, CliError> {
    f.map(Fold::try_from).transpose().map_err(CliError::from)
}

fn divisor(text: &str) -> Result<DivisorSpec, CliError> {
    Ok(DivisorSpec::new(&parse_biguint(text)?)?)
}

fn odd_ctx(text: &str) -> Result<AnyCtx, CliError> {
    Ok(make_ctx(&parse_biguint(text)?)?)
}

fn verdict(out: &mut dyn Write, yes: bool) -> std::io::Result<i32> {
    writeln!(out, "{yes}")?;
    Ok(if yes { EXIT_OK } else { EXIT_FALSE })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let fmt = Fmt { hex: cli.hex };
    let io = |e: std::io::Error| CliError::Usage(format!("write failed: {e}"));
    match cli.cmd {
        Command::Isdiv(a) => {
            let x = parse_biguint(&a.x)?;
            let d = divisor(&a.q)?;
            let yes = match fold_arg(a.fold)? {
                None => divides(&x, &d),
                Some(f) => remainder_folded(&x, &d, f)?.is_zero(),
            };
            verdict(out, yes).map_err(io)
        }
        Command::Rem(a) => {
            let x = parse_biguint(&a.x)?;
            let d = divisor(&a.q)?;
            let r = match fold_arg(a.fold)? {
                None => remainder(&x, &d)?,
                Some(f) => remainder_folded(&x, &d, f)?,
            };
            writeln!(out, "remainder {}", fmt.big(&r)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Divmod(a) => {
            let x = parse_biguint(&a.x)?;
            let d = divisor(&a.q)?;
            let (y, r) = match fold_arg(a.fold)? {
                None => div_rem(&x, &d)?,
                Some(f) => div_rem_folded(&x, &d, f)?,
            };
            writeln!(out, "remainder {}", fmt.big(&r)).map_err(io)?;
            writeln!(out, "quotient {}", fmt.big(&y)).map_err(io)?;
            for (i, w) in y.words().iter().enumerate() {
                writeln!(out, "quotient_word {i} {}", fmt.word(*w as u128)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Pow2 { p, q, inverse } => {
            let v = match odd_ctx(&q)? {
                AnyCtx::W64(c) => {
                    let v = if inverse {
                        neg_pow2_mod(p, &c)?
                    } else {
                        pos_pow2_mod(p, &c)
                    };
                    v as u128
                }
                AnyCtx::W128(c) => {
                    if inverse {
                        neg_pow2_mod(p, &c)?
                    } else {
                        pos_pow2_mod(p, &c)
                    }
                }
            };
            writeln!(out, "{}", fmt.word(v)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Mersenne { p, q } => {
            let yes = mersenne_has_factor(p, &parse_biguint(&q)?)?;
            verdict(out, yes).map_err(io)
        }
        Command::Fermat { f, q } => {
            let yes = fermat_has_factor(f, &parse_biguint(&q)?)?;
            verdict(out, yes).map_err(io)
        }
        Command::Census { min, max } => {
            if !(6 <= min && min < max) {
                return Err(CliError::Usage("census needs 6 <= min < max".into()));
            }
            let c = bitmap_census(min, max)?;
            let mean = c.mean();
            writeln!(out, "pairs {}", c.pairs).map_err(io)?;
            writeln!(out, "total_abs_diff {}", c.total_abs_diff).map_err(io)?;
            writeln!(out, "total_signed_diff {}", c.total_signed_diff).map_err(io)?;
            writeln!(out, "mean {}/{}", mean.numer(), mean.denom()).map_err(io)?;
            writeln!(out, "mean_f64 {:.10}", c.mean_f64()).map_err(io)?;
            writeln!(out, "max_diff {}", c.max_diff).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            words,
            trials,
            seed,
            q,
        } => {
            let modulus = parse_biguint(&q)?
                .to_u64()
                .ok_or_else(|| CliError::Usage("bench modulus must fit in 64 bits".into()))?;
            let rows = run_bench(&BenchConfig {
                words,
                trials,
                seed,
                modulus,
            })?;
            writeln!(out, "op,fold,words,ns_per_word,words_per_sec").map_err(io)?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{:.4},{:.0}",
                    r.op.name(),
                    r.fold.factor(),
                    r.words,
                    r.ns_per_word,
                    r.words_per_sec
                )
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit
/// status: 0 on success, 1 when a divisibility test answers false, 2 on a
/// usage, parse or arithmetic error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
