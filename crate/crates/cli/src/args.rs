use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lenskit::cfrac::{CfExpansion, ExtendedRational};
use lenskit::lens::LensSpace;
use lenskit::lisca::LiscaType;
use lenskit::surgery::{DualFamily, SimpleKnotClass};

// Aliases keep clap from treating a comma list as a repeated argument.
pub type Ints = Vec<i64>;
pub type Rows = Vec<Vec<i64>>;

/// Exact lens-space surgery calculus.
///
/// Coefficient strings are comma separated. Put them after `--` when they
/// start with a minus sign; flags may follow the `--`.
#[derive(Debug, Parser)]
#[command(name = "lenskit", version)]
pub struct Cli {
    /// Emit one JSON record per line.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel searches and sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Directory for cached embedding searches.
    #[arg(long, global = true, env = "LENSKIT_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Never read or write the embedding cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Report cache hits and misses on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Include wall-clock timings in the records.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Negative continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Lens spaces and their homeomorphisms.
    #[command(subcommand)]
    Lens(LensCmd),
    /// The four lens-space families bounding rational balls.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Lisca string types.
    #[command(subcommand)]
    String(StringCmd),
    /// Embeddings of the plumbing lattice.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Keystone vectors and suggested knots.
    #[command(subcommand)]
    Keystone(KeystoneCmd),
    /// Homology of chain surgeries and dual knots.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Verification sweeps and golden checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum CfCmd {
    /// Value of `[a1, ..., an]^-`.
    Eval {
        #[arg(allow_hyphen_values = true, value_parser = parse_cf)]
        terms: CfExpansion,
    },
    /// Canonical expansion of a rational `p/q` (or `1/0`).
    Expand {
        #[arg(allow_hyphen_values = true, value_parser = parse_rational)]
        value: ExtendedRational,
    },
    /// Riemenschneider complement of a standard string.
    Complement {
        #[arg(allow_hyphen_values = true, value_parser = parse_cf)]
        terms: CfExpansion,
    },
}

#[derive(Debug, Subcommand)]
pub enum LensCmd {
    /// Whether two lens spaces are homeomorphic.
    Homeo {
        #[arg(value_parser = parse_lens)]
        a: LensSpace,
        #[arg(value_parser = parse_lens)]
        b: LensSpace,
        /// Require an orientation-preserving homeomorphism.
        #[arg(long)]
        oriented: bool,
    },
    /// The mirror `L(p, p-q)`.
    Mirror {
        #[arg(value_parser = parse_lens)]
        lens: LensSpace,
    },
    /// The standard continued-fraction string of `p/q`.
    String {
        #[arg(value_parser = parse_lens)]
        lens: LensSpace,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Family memberships of a lens space.
    Classify {
        #[arg(value_parser = parse_lens)]
        lens: LensSpace,
        /// Only count orientation-preserving witnesses.
        #[arg(long)]
        oriented: bool,
    },
    /// Every family member with `p` up to the bound.
    Enumerate {
        #[arg(long, default_value_t = 100)]
        max_order: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum StringCmd {
    /// Types matching a framing string.
    Recognize {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
    },
    /// Strings of a type (or all types) up to a length.
    Generate {
        #[arg(long = "type", value_parser = parse_type)]
        kind: Option<LiscaType>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
}

#[derive(Debug, Args)]
pub struct RowsArg {
    /// Embedding rows, `;` between rows, `,` between entries.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rows)]
    pub rows: Option<Rows>,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// All embedding classes, with their keystones.
    Embed {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
    },
    /// Checks that the given rows realize the form.
    Verify {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rows)]
        rows: Rows,
    },
    /// Closed-form embedding of each recognized type.
    Table {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
    },
}

#[derive(Debug, Subcommand)]
pub enum KeystoneCmd {
    /// Keystone sets with their filtrations.
    Report {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
        #[command(flatten)]
        rows: RowsArg,
    },
    /// The `-1` framed knot suggested by a keystone.
    Suggest {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
        /// Basis label `k` of `e_k`; every keystone when omitted.
        #[arg(long, short)]
        e: Option<usize>,
        #[command(flatten)]
        rows: RowsArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomologyCmd {
    /// Meridian classes of a chain presentation.
    Classes {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
    },
    /// Computed dual-knot class against its closed form.
    Theorem16 {
        #[arg(value_parser = parse_family)]
        family: DualFamily,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        b: Option<Ints>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Whether surgery on the knot `ε` can give S¹×S² homologically.
    S1s2 {
        #[arg(allow_hyphen_values = true, value_parser = parse_ints)]
        coefficients: Ints,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ints)]
        eps: Ints,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        framing: i64,
    },
    /// Whether two simple knots `K(p,q,k)` are equivalent.
    SimpleEq {
        #[arg(value_parser = parse_knot)]
        a: SimpleKnotClass,
        #[arg(value_parser = parse_knot)]
        b: SimpleKnotClass,
        /// Allow the orientation-reversing map multiplying by `q` when `q² ≡ -1`.
        #[arg(long)]
        reversing_square_root: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every acceptance criterion and golden check.
    All {
        #[arg(long, default_value_t = 300)]
        max_order: u32,
        #[arg(long, default_value_t = 9)]
        max_rank: usize,
        #[arg(long, default_value_t = 20_000)]
        cf_cases: u32,
        #[arg(long, default_value_t = 0x6c65_6e73)]
        cf_seed: u64,
        /// Upper bound for `s, t` in the dual-knot sweep.
        #[arg(long, default_value_t = 6)]
        family_bound: i64,
    },
    /// Named golden checks; all of them when no name is given.
    Golden { names: Vec<String> },
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| tok.trim().parse::<T>().map_err(|_| format!("invalid {what} token '{}'", tok.trim())))
        .collect()
}

pub fn parse_ints(s: &str) -> Result<Ints, String> {
    parse_list(s, "integer")
}

fn parse_rows(s: &str) -> Result<Rows, String> {
    s.split(';').map(parse_ints).collect()
}

fn parse_cf(s: &str) -> Result<CfExpansion, String> {
    s.parse().map_err(|e: lenskit::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<ExtendedRational, String> {
    s.parse().map_err(|e: lenskit::Error| e.to_string())
}

fn parse_lens(s: &str) -> Result<LensSpace, String> {
    s.parse().map_err(|e: lenskit::Error| e.to_string())
}

fn parse_knot(s: &str) -> Result<SimpleKnotClass, String> {
    s.parse().map_err(|e: lenskit::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<DualFamily, String> {
    s.parse().map_err(|e: lenskit::Error| e.to_string())
}

fn parse_type(s: &str) -> Result<LiscaType, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['T', 't']).unwrap_or(t);
    digits.parse().ok().and_then(LiscaType::from_number).ok_or_else(|| format!("invalid type token '{t}'"))
}

/// Drops the first bare `--` so that flags may follow a negative coefficient
/// string; the coefficient arguments accept leading hyphens on their own.
pub fn normalize_args(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = false;
    args.into_iter()
        .filter(|a| {
            let drop = !seen && a == "--";
            seen |= drop;
            !drop
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(normalize_args(args.iter().map(|s| s.to_string())))
    }

    #[test]
    fn lists() {
        assert_eq!(parse_ints("-2,-3, -2").unwrap(), vec![-2, -3, -2]);
        assert_eq!(parse_ints("[1,2]").unwrap(), vec![1, 2]);
        assert_eq!(parse_ints("1,x,2").unwrap_err(), "invalid integer token 'x'");
        assert_eq!(parse_rows("1,0;0,-1").unwrap(), vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(parse_type("T3").unwrap(), LiscaType::T3);
        assert!(parse_type("T8").is_err());
    }

    #[test]
    fn flags_after_sentinel() {
        let cli = parse(&["lenskit", "lattice", "embed", "--", "-2,-3,-2,-3,-3", "--json"]).unwrap();
        assert!(cli.json);
        let cli =
            parse(&["lenskit", "homology", "s1s2", "--", "-2,-2,-2", "--eps", "-1,0,1", "--framing", "-1"]).unwrap();
        match cli.command {
            Command::Homology(HomologyCmd::S1s2 { coefficients, eps, framing }) => {
                assert_eq!(coefficients, vec![-2, -2, -2]);
                assert_eq!(eps, vec![-1, 0, 1]);
                assert_eq!(framing, -1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_negative_term() {
        let cli = parse(&["lenskit", "cf", "eval", "--", "-5"]).unwrap();
        assert!(matches!(cli.command, Command::Cf(CfCmd::Eval { .. })));
    }
}
