//! Command implementations behind the `selfdual` binary.
//!
//! Every command writes to caller-supplied streams and returns an exit code, so
//! the whole interface can be driven in-process from tests.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use selfdual_core::counting::{
    self, CountError, CountResult, Kind, LengthSpec, Method, MixedTermScaling,
};
use selfdual_core::exec::Strategy;
use selfdual_core::numtheory::{self, Factorization};
use selfdual_core::{table, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_LISTED_MISMATCHES: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "selfdual",
    version,
    about = "Count self-dual cyclic codes over fields of characteristic 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of self-dual cyclic codes of length 2^nu * n'.
    Count(CountArgs),
    /// Euclidean exponent t(n', l).
    T(ExponentArgs),
    /// Hermitian exponent tau(n', l).
    Tau(ExponentArgs),
    /// One record per odd n' <= odd-max and l <= l-max.
    Table(TableArgs),
    /// Cross-check every counting route against the independent oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OddPart {
    /// Odd part n' of the length, in decimal.
    #[arg(long)]
    pub odd: Option<String>,
    /// Odd part given as its factorization, e.g. "3^2,7".
    #[arg(long)]
    pub odd_factored: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Euclidean,
    Hermitian,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Euclidean => Kind::Euclidean,
            KindArg::Hermitian => Kind::Hermitian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    GeneralSum,
    PrimePower,
    TwoPrime,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::GeneralSum => Method::GeneralSum,
            MethodArg::PrimePower => Method::PrimePower,
            MethodArg::TwoPrime => Method::TwoPrime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub nu: u32,
    #[command(flatten)]
    pub odd: OddPart,
    #[arg(long)]
    pub l: u64,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: RecordFormat,
    /// Force a specific route instead of the cheapest applicable one.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Report base and exponent without expanding the value.
    #[arg(long)]
    pub exponent_only: bool,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[command(flatten)]
    pub odd: OddPart,
    #[arg(long)]
    pub l: u64,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub odd_max: u64,
    #[arg(long)]
    pub l_max: u64,
    #[arg(long)]
    pub nu: u32,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 105)]
    pub odd_max: u64,
    #[arg(long, default_value_t = 8)]
    pub l_max: u64,
    #[arg(long, default_value_t = 16)]
    pub enumerate_max_length: u64,
    /// Run on one thread.
    #[arg(long)]
    pub sequential: bool,
    /// Drop the factor 1/2 on the mixed two-prime term (fault injection).
    #[arg(long, hide = true)]
    pub omit_half: bool,
}

/// One count, as printed by `count` and `table`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub nu: u32,
    pub odd_part: String,
    pub l: u64,
    #[serde(with = "display_str")]
    pub kind: Kind,
    #[serde(with = "json_number")]
    pub exponent: BigUint,
    #[serde(with = "json_number")]
    pub base: BigUint,
    /// `base^exponent` in decimal; `null` when not expanded.
    pub value: Option<String>,
    #[serde(with = "display_str")]
    pub method: Method,
}

impl OutputRecord {
    pub fn new(nu: u32, odd_part: impl ToString, l: u64, result: &CountResult) -> Self {
        Self {
            nu,
            odd_part: odd_part.to_string(),
            l,
            kind: result.kind,
            exponent: result.exponent.clone(),
            base: result.base.clone(),
            value: result.value.as_ref().map(BigUint::to_string),
            method: result.method,
        }
    }

    /// `base^exponent = value`, or just `base^exponent` when the value is absent.
    pub fn to_text(&self) -> String {
        match &self.value {
            Some(v) => format!("{}^{} = {}", self.base, self.exponent, v),
            None => format!("{}^{}", self.base, self.exponent),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record fields always serialize")
    }

    pub const CSV_HEADER: &'static str = "nu,odd_part,l,kind,exponent,base,value,method";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.nu,
            self.odd_part,
            self.l,
            self.kind,
            self.exponent,
            self.base,
            self.value.as_deref().unwrap_or(""),
            self.method
        )
    }
}

/// Serializes through `Display` / `FromStr`.
mod display_str {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Big integers as bare JSON numbers of any size.
mod json_number {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&v.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = Number::deserialize(d)?;
        BigUint::from_str(n.as_str())
            .map_err(|_| de::Error::custom(format!("{n} is not a natural number")))
    }
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        let code = match e {
            CountError::NonInteger(_) | CountError::Inconsistent(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_factored(s: &str) -> Result<Factorization, Failure> {
    let mut pairs = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (p, r) = part.split_once('^').unwrap_or((part, "1"));
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad prime '{p}' in --odd-factored")))?;
        let r: u32 = r
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad exponent '{r}' in --odd-factored")))?;
        pairs.push((p, r));
    }
    pairs.sort_unstable();
    Factorization::from_pairs(pairs).map_err(|e| Failure::usage(format!("--odd-factored: {e}")))
}

fn resolve_odd(odd: &OddPart) -> Result<Factorization, Failure> {
    let f = match (&odd.odd, &odd.odd_factored) {
        (Some(dec), _) => {
            let n: u64 = dec.trim().parse().map_err(|_| {
                Failure::usage(format!(
                    "--odd must be a positive integer below 2^64, got '{dec}' (use --odd-factored for larger values)"
                ))
            })?;
            if n == 0 {
                return Err(Failure::usage("--odd must be positive"));
            }
            numtheory::factorize(n).map_err(|e| Failure::usage(e.to_string()))?
        }
        (None, Some(fact)) => parse_factored(fact)?,
        (None, None) => return Err(Failure::usage("one of --odd or --odd-factored is required")),
    };
    if !f.is_odd() {
        return Err(Failure::usage(format!("odd part must be odd, got {f}")));
    }
    Ok(f)
}

/// Decimal when small enough to expand, otherwise the `p^r,q^s` form that
/// `--odd-factored` accepts.
pub fn odd_part_string(odd: &Factorization) -> String {
    let bits: u64 = odd
        .pairs()
        .iter()
        .map(|&(p, r)| u64::from(r).saturating_mul(u64::from(64 - p.leading_zeros())))
        .fold(0, u64::saturating_add);
    if bits <= counting::MAX_VALUE_BITS {
        return odd.value().to_string();
    }
    odd.pairs()
        .iter()
        .map(|&(p, r)| {
            if r == 1 {
                p.to_string()
            } else {
                format!("{p}^{r}")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn check_positive(name: &str, v: u64) -> Result<(), Failure> {
    if v == 0 {
        return Err(Failure::usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn strategy(sequential: bool) -> Strategy {
    if sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    }
}

pub fn cmd_count(args: &CountArgs) -> Result<String, Failure> {
    check_positive("nu", u64::from(args.nu))?;
    check_positive("l", args.l)?;
    let odd = resolve_odd(&args.odd)?;
    let spec = LengthSpec::new(args.nu, odd.clone())?;
    let kind = Kind::from(args.kind);
    let method = args
        .method
        .map_or_else(|| counting::preferred_method(&odd), Method::from);
    let mut result = counting::count_self_dual_with(&spec, args.l, kind, method)?;
    if args.exponent_only {
        result.value = None;
    }
    let record = OutputRecord::new(args.nu, odd_part_string(&odd), args.l, &result);
    let mut out = match args.format {
        RecordFormat::Text => record.to_text(),
        RecordFormat::Json => record.to_json(),
    };
    out.push('\n');
    Ok(out)
}

pub fn cmd_exponent(args: &ExponentArgs, kind: Kind) -> Result<String, Failure> {
    check_positive("l", args.l)?;
    let odd = resolve_odd(&args.odd)?;
    let method = args
        .method
        .map_or_else(|| counting::preferred_method(&odd), Method::from);
    let exponent = counting::exponent_with(&odd, args.l, kind, method)?;
    Ok(format!("{exponent} ({method})\n"))
}

pub fn cmd_table(args: &TableArgs) -> Result<String, Failure> {
    check_positive("nu", u64::from(args.nu))?;
    check_positive("odd-max", args.odd_max)?;
    check_positive("l-max", args.l_max)?;
    let rows = table::tabulate(
        args.odd_max,
        args.l_max,
        args.nu,
        args.kind.into(),
        strategy(args.sequential),
    )?;
    let mut out = String::new();
    if args.format == TableFormat::Csv {
        out.push_str(OutputRecord::CSV_HEADER);
        out.push('\n');
    }
    for row in &rows {
        let record = OutputRecord::new(row.nu, row.odd_part, row.l, &row.result);
        let line = match args.format {
            TableFormat::Csv => record.to_csv(),
            TableFormat::Json => record.to_json(),
        };
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}

/// Runs the verification families. The output is produced even on failure; the
/// returned code says whether everything matched.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32), Failure> {
    check_positive("odd-max", args.odd_max)?;
    check_positive("l-max", args.l_max)?;
    let cfg = verify::VerifyConfig {
        odd_max: args.odd_max,
        l_max: args.l_max,
        enumerate_max_length: args.enumerate_max_length,
        scaling: if args.omit_half {
            MixedTermScaling::Unhalved
        } else {
            MixedTermScaling::Halved
        },
        strategy: strategy(args.sequential),
        ..Default::default()
    };
    let report = verify::run(&cfg);
    let mut out = report.to_string();
    match report.first_failure() {
        None => {
            let _ = writeln!(
                out,
                "all {} checks passed ({} cases)",
                report.families.len(),
                report.total_cases()
            );
            Ok((out, EXIT_OK))
        }
        Some((family, message)) => {
            let failures: usize = report.families.iter().map(|f| f.failures.len()).sum();
            let _ = writeln!(
                out,
                "{failures} mismatches; first counterexample [{family}]: {message}"
            );
            let all = report
                .families
                .iter()
                .flat_map(|f| f.failures.iter().map(move |m| (f.name, m)));
            for (name, m) in all.take(MAX_LISTED_MISMATCHES) {
                let _ = writeln!(out, "  [{name}] {m}");
            }
            if failures > MAX_LISTED_MISMATCHES {
                let _ = writeln!(out, "  ... {} more", failures - MAX_LISTED_MISMATCHES);
            }
            Ok((out, EXIT_FAILURE))
        }
    }
}

fn write_all(stream: &mut impl Write, text: &str) -> i32 {
    match stream
        .write_all(text.as_bytes())
        .and_then(|()| stream.flush())
    {
        Ok(()) => EXIT_OK,
        // A closed pipe downstream is not our failure.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(_) => EXIT_FAILURE,
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                write_all(err, &text);
                EXIT_USAGE
            } else {
                write_all(out, &text)
            };
        }
    };
    let outcome = match &cli.command {
        Command::Count(a) => cmd_count(a).map(|s| (s, EXIT_OK)),
        Command::T(a) => cmd_exponent(a, Kind::Euclidean).map(|s| (s, EXIT_OK)),
        Command::Tau(a) => cmd_exponent(a, Kind::Hermitian).map(|s| (s, EXIT_OK)),
        Command::Table(a) => cmd_table(a).map(|s| (s, EXIT_OK)),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok((text, code)) => {
            let written = write_all(out, &text);
            if code == EXIT_OK {
                written
            } else {
                code
            }
        }
        Err(f) => {
            write_all(err, &format!("error: {}\n", f.message));
            f.code
        }
    }
}

impl FromStr for OutputRecord {
    type Err = serde_json::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_form_accepts_any_order_and_bare_primes() {
        let f = parse_factored("7, 3^2").unwrap();
        assert_eq!(f.pairs(), &[(3, 2), (7, 1)]);
        assert!(parse_factored("").is_err());
        assert!(parse_factored("3^0").is_err());
        assert!(parse_factored("4").is_err());
    }

    #[test]
    fn odd_part_expands_only_when_small() {
        assert_eq!(
            odd_part_string(&Factorization::prime_power(11, 3).unwrap()),
            "1331"
        );
        assert_eq!(odd_part_string(&Factorization::one()), "1");
        let huge = Factorization::from_pairs(vec![(3, 1), (5, 20_000_000)]).unwrap();
        assert_eq!(odd_part_string(&huge), "3,5^20000000");
    }

    #[test]
    fn csv_leaves_missing_value_empty() {
        let rec = OutputRecord {
            nu: 1,
            odd_part: "3^100".into(),
            l: 2,
            kind: Kind::Euclidean,
            exponent: BigUint::from(100u32),
            base: BigUint::from(3u32),
            value: None,
            method: Method::PrimePower,
        };
        assert_eq!(rec.to_csv(), "1,3^100,2,euclidean,100,3,,prime-power");
        assert_eq!(rec.to_text(), "3^100");
    }
}
