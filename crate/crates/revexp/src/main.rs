use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use revexp::bisim::{check, Variant};
use revexp::encoding::{default_order, encode, ExecutionOrder};
use revexp::enumerate::{alphabet, enumerate_with_depth, initial_terms, DEFAULT_DEPTH};
use revexp::equational::{
    canonical_key, expansion_law_f, normalize_f, normalize_f_traced, normalize_fr, normalize_fr_traced, normalize_r,
    normalize_r_traced, prove_eq, Theory,
};
use revexp::lts::{build_brs_lts, build_lts, export, Format};
use revexp::selftest::{correspondence_suite, oracle_agreement};
use revexp::syntax::{parse, parse_proof, parse_sync_list, parse_unchecked, render_brs_with, render_with, Style};
use revexp::terms::{size, Process};
use revexp::{Error, Result};

#[derive(Parser)]
#[command(
    name = "revexp",
    version,
    about = "Workbench for reversible processes with parallel composition"
)]
struct Cli {
    /// Accept terms that are not well formed.
    #[arg(long, global = true)]
    allow_illformed: bool,
    /// Print executed actions with a dagger.
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Fb,
    Fbps,
    Rb,
    Frb,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Fb => Variant::FB,
            VariantArg::Fbps => Variant::FBps,
            VariantArg::Rb => Variant::RB,
            VariantArg::Frb => Variant::FRB,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    F,
    R,
    Fr,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::F => Theory::F,
            TheoryArg::R => Theory::R,
            TheoryArg::Fr => Theory::FR,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a bisimilarity.
    Check {
        #[arg(long, value_enum)]
        variant: VariantArg,
        p1: String,
        p2: String,
        /// Print the stable partition when equivalent.
        #[arg(long)]
        witness: bool,
    },
    /// Print the transition system reachable from the initial version of a term.
    Lts {
        p: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: FormatArg,
        /// Use the transition system of the encoding.
        #[arg(long)]
        brs: bool,
    },
    /// Print the backward-ready-set encoding.
    Encode {
        p: String,
        /// `lex`, or `file:<path>` with one proof term per line giving the history.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Print a normal form.
    Normalize {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        p: String,
    },
    /// Decide derivable equality.
    Prove {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        p1: String,
        p2: String,
        /// Print the axioms applied while normalizing.
        #[arg(long)]
        trace: bool,
    },
    /// Expand a parallel composition once.
    Expand {
        p1: String,
        p2: String,
        #[arg(long, default_value = "")]
        sync: String,
        /// `f` applies the forward expansion law to the F-nfs of the operands;
        /// `r` and `fr` print the encoding of the composition.
        #[arg(long, value_enum, default_value = "f")]
        theory: TheoryArg,
    },
    /// List reachable processes up to a size.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value = "a,b")]
        alphabet: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Run the oracle-agreement and correspondence suites.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}

struct Ctx {
    allow_illformed: bool,
    style: Style,
}

impl Ctx {
    fn parse(&self, src: &str) -> Result<Process> {
        if self.allow_illformed {
            parse_unchecked(src)
        } else {
            parse(src)
        }
    }

    fn show(&self, p: &Process) -> String {
        render_with(p, self.style)
    }
}

fn order_from(arg: &str, p: &Process) -> Result<ExecutionOrder> {
    if arg == "lex" {
        return Ok(default_order(p));
    }
    let path = arg
        .strip_prefix("file:")
        .ok_or_else(|| Error::Invalid(format!("unknown order {arg}; expected lex or file:<path>")))?;
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    let history = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_proof)
        .collect::<Result<Vec<_>>>()?;
    Ok(ExecutionOrder::History(history))
}

fn run(cli: Cli) -> Result<bool> {
    let ctx = Ctx {
        allow_illformed: cli.allow_illformed,
        style: Style { unicode: cli.unicode },
    };
    match cli.command {
        Command::Check {
            variant,
            p1,
            p2,
            witness,
        } => {
            let v = check(&ctx.parse(&p1)?, &ctx.parse(&p2)?, variant.into())?;
            if v.equivalent {
                println!("equivalent");
                if witness {
                    for (i, block) in v.witness.iter().flatten().enumerate() {
                        let names: Vec<String> = block.iter().map(|s| ctx.show(s)).collect();
                        println!("block {i}: {}", names.join(" ; "));
                    }
                }
            } else {
                println!("not equivalent");
                if let Some(c) = v.counterexample {
                    println!("{} split in round {}: {}", c.direction, c.round, c.reason);
                }
            }
            Ok(v.equivalent)
        }
        Command::Lts { p, format, brs } => {
            let p = ctx.parse(&p)?;
            let format = match format {
                FormatArg::Dot => Format::Dot,
                FormatArg::Json => Format::Json,
            };
            let text = if brs {
                let u = encode(&p, &default_order(&p))?;
                export(&build_brs_lts(&u.to_initial())?, format)
            } else {
                export(&build_lts(&revexp::terms::to_initial(&p))?, format)
            };
            println!("{text}");
            Ok(true)
        }
        Command::Encode { p, order } => {
            let p = ctx.parse(&p)?;
            let u = encode(&p, &order_from(&order, &p)?)?;
            println!("{}", render_brs_with(&u, ctx.style));
            Ok(true)
        }
        Command::Normalize { theory, p } => {
            let p = ctx.parse(&p)?;
            match Theory::from(theory) {
                Theory::F => println!("{}", ctx.show(&normalize_f(&p)?)),
                t => {
                    let u = encode(&p, &default_order(&p))?;
                    let nf = if t == Theory::R {
                        normalize_r(&u)
                    } else {
                        normalize_fr(&u)
                    };
                    println!("{}", render_brs_with(&nf, ctx.style));
                }
            }
            Ok(true)
        }
        Command::Prove { theory, p1, p2, trace } => {
            let theory = Theory::from(theory);
            let (p1, p2) = (ctx.parse(&p1)?, ctx.parse(&p2)?);
            let equal = prove_eq(&p1, &p2, theory)?;
            println!("{}", if equal { "equal" } else { "not equal" });
            if trace {
                for (name, p) in [("left", &p1), ("right", &p2)] {
                    println!("{name}:");
                    let steps = match theory {
                        Theory::F => normalize_f_traced(p)?.1,
                        Theory::R => normalize_r_traced(&encode(p, &default_order(p))?).1,
                        Theory::FR => normalize_fr_traced(&encode(p, &default_order(p))?).1,
                    };
                    for (i, s) in steps.iter().enumerate() {
                        println!("  {}. {s}", i + 1);
                    }
                    for key in canonical_key(p, theory)? {
                        println!("  = {key}");
                    }
                }
            }
            Ok(equal)
        }
        Command::Expand { p1, p2, sync, theory } => {
            let (p1, p2) = (ctx.parse(&p1)?, ctx.parse(&p2)?);
            let sync = parse_sync_list(&sync)?;
            match Theory::from(theory) {
                Theory::F => {
                    let e = expansion_law_f(&normalize_f(&p1)?, &normalize_f(&p2)?, &sync)?;
                    println!("{}", ctx.show(&e));
                }
                _ => {
                    let whole = Process::par(sync, p1, p2);
                    let u = encode(&whole, &default_order(&whole))?;
                    println!("{}", render_brs_with(&u, ctx.style));
                }
            }
            Ok(true)
        }
        Command::Enumerate {
            max_size,
            alphabet: names,
            depth,
            count_only,
        } => {
            let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let ps = enumerate_with_depth(max_size, depth, &alphabet(&names))?;
            if count_only {
                println!("{}", ps.len());
            } else {
                for p in &ps {
                    println!("{}", ctx.show(p));
                }
            }
            Ok(true)
        }
        Command::Selftest { max_size } => {
            let acts = alphabet(&["a", "b"]);
            let ps = enumerate_with_depth(max_size, DEFAULT_DEPTH, &acts)?;
            let mut all_ok = true;
            for theory in Theory::ALL {
                let a = oracle_agreement(&ps, theory)?;
                all_ok &= a.ok();
                println!(
                    "oracle {theory}: {} processes, {} disagreeing pairs",
                    a.items, a.disagreeing_pairs
                );
                if let Some((i, j)) = a.example {
                    println!("  e.g. {} vs {}", ctx.show(&ps[i]), ctx.show(&ps[j]));
                }
            }
            let roots: Vec<Process> = initial_terms(DEFAULT_DEPTH, max_size, &alphabet(&["a", "b", "c"]))
                .into_iter()
                .filter(|p| size(p) <= max_size)
                .collect();
            let s = correspondence_suite(&roots);
            all_ok &= s.failing.is_empty();
            println!(
                "correspondence: {} roots, {} states, {} transitions, {} failing",
                s.roots,
                s.states,
                s.transitions,
                s.failing.len()
            );
            for (p, why) in s.failing.iter().take(3) {
                println!("  {}: {why}", ctx.show(p));
            }
            Ok(all_ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
