//! The `hbk` command line.
//!
//! Exit status: 0 on success, 1 when a verification suite finds violations,
//! 2 on usage, parse or constraint errors.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{annulus_census, classify, AnnulusCensus, Classification, JsjType};
use crate::emknot::{canonicalize, HandlebodyKnot, Params, Side};
use crate::equivalence::{
    enumerate_family, equivalent, exteriors_homeomorphic, mirror_equivalent, EquivalenceVerdict,
    FamilyReport, Move,
};
use crate::error::{Error, Result};
use crate::invariants::{characteristic_slopes, SlopeData};
use crate::verify::{self, Suite, VerificationReport};

#[derive(Parser, Debug)]
#[command(
    name = "hbk",
    version,
    about = "Invariants of handlebody-knots induced by Eudave-Muñoz knots",
    after_help = "Knots are written R:l,m,n,p (right) or L:m,n,p (left)."
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Λ, Φ, Δ, JSJ type and slopes
    Invariants { knot: String },
    /// JSJ type and mapping class group
    Classify { knot: String },
    /// Decide equivalence (or mirror equivalence) of two knots
    Equiv {
        a: String,
        b: String,
        /// Compare the mirror image of the first knot with the second
        #[arg(long)]
        mirror: bool,
    },
    /// Decide whether two type K knots have homeomorphic exteriors
    Exterior { a: String, b: String },
    /// List the left knots L:m,0,p for p in a range
    #[command(allow_negative_numbers = true)]
    Family { m: i64, p_from: i64, p_to: i64 },
    /// Essential annuli in the exterior
    Census { knot: String },
    /// Run the verification suites
    Verify {
        /// Box bound; defaults to 8, or 6 for collisions
        #[arg(long, env = "HBK_BOUND")]
        bound: Option<i64>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Lemmas,
    Oracles,
    Collisions,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Oracles => Suite::Oracles,
            SuiteArg::Collisions => Suite::Collisions,
            SuiteArg::All => Suite::All,
        }
    }
}

/// JSON document of `hbk invariants`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsOutput {
    pub knot: String,
    pub side: Side,
    pub params: Params,
    pub l_irrelevant: bool,
    #[serde(with = "crate::projrat::wide_int")]
    pub lambda: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub phi: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub delta: i128,
    pub jsj_type: JsjType,
    /// Left form the slopes were read from, for type K right knots.
    pub canonical: Option<String>,
    pub slopes: SlopeData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub knot: String,
    #[serde(flatten)]
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivOutput {
    pub a: String,
    pub b: String,
    pub mirror: bool,
    #[serde(flatten)]
    pub verdict: EquivalenceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorOutput {
    pub a: String,
    pub b: String,
    pub exteriors_homeomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOutput {
    pub knot: String,
    #[serde(flatten)]
    pub census: AnnulusCensus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

fn knot(spec: &str) -> Result<HandlebodyKnot> {
    spec.parse()
}

pub fn invariants_output(hk: &HandlebodyKnot) -> Result<InvariantsOutput> {
    let d = hk.derived()?;
    let c = canonicalize(hk)?;
    Ok(InvariantsOutput {
        knot: hk.to_string(),
        side: hk.side(),
        params: hk.params(),
        l_irrelevant: hk.is_left(),
        lambda: d.lambda,
        phi: d.phi,
        delta: d.delta,
        jsj_type: classify(hk)?.jsj_type,
        canonical: (c != *hk).then(|| c.to_string()),
        slopes: characteristic_slopes(hk)?,
    })
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::other)?;
    writeln!(out)
}

fn slopes_table(out: &mut dyn Write, s: &SlopeData) -> io::Result<()> {
    match s {
        SlopeData::TypeM { r_a, r_b } => {
            writeln!(out, "r_a         {r_a}")?;
            writeln!(out, "r_b         {r_b}")
        }
        SlopeData::TypeK { r1, r2, r_c } => {
            writeln!(out, "r1          {r1}")?;
            writeln!(out, "r2          {r2}")?;
            writeln!(out, "r_c         {r_c}")
        }
    }
}

fn move_name(m: &Move) -> String {
    match m {
        Move::DoubleMirror => "double mirror".into(),
        Move::HorizontalFlip => "horizontal flip".into(),
        Move::Rotation { rule, forward } => {
            format!("rotation {rule:?}{}", if *forward { "" } else { " (reversed)" })
        }
    }
}

/// Runs one parsed command, writing to `out`. Returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let json = cli.format == Format::Json;
    let io = |e: io::Error| Error::Internal(format!("write failed: {e}"));
    match &cli.command {
        Command::Invariants { knot: spec } => {
            let o = invariants_output(&knot(spec)?)?;
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                (|| -> io::Result<()> {
                    writeln!(out, "knot        {}", o.knot)?;
                    if o.l_irrelevant {
                        writeln!(out, "l           {} (placeholder, irrelevant)", o.params.l)?;
                    }
                    writeln!(out, "Λ           {}", o.lambda)?;
                    writeln!(out, "Φ           {}", o.phi)?;
                    writeln!(out, "Δ           {}", o.delta)?;
                    writeln!(out, "JSJ type    {}", o.jsj_type.letter())?;
                    if let Some(c) = &o.canonical {
                        writeln!(out, "left form   {c}")?;
                    }
                    slopes_table(out, &o.slopes)
                })()
                .map_err(io)?;
            }
        }
        Command::Classify { knot: spec } => {
            let k = knot(spec)?;
            let o = ClassifyOutput {
                knot: k.to_string(),
                classification: classify(&k)?,
            };
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                (|| -> io::Result<()> {
                    writeln!(out, "knot        {}", o.knot)?;
                    writeln!(out, "JSJ type    {}", o.classification.jsj_type.letter())?;
                    writeln!(out, "MCG         {}", o.classification.mcg.name())?;
                    writeln!(out, "MCG = MCG+  {}", o.classification.mcg_positive_equal)
                })()
                .map_err(io)?;
            }
        }
        Command::Equiv { a, b, mirror } => {
            let (ka, kb) = (knot(a)?, knot(b)?);
            let verdict = if *mirror {
                mirror_equivalent(&ka, &kb)?
            } else {
                equivalent(&ka, &kb)?
            };
            let o = EquivOutput {
                a: ka.to_string(),
                b: kb.to_string(),
                mirror: *mirror,
                verdict,
            };
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                (|| -> io::Result<()> {
                    let lhs = if o.mirror {
                        format!("mirror of {}", o.a)
                    } else {
                        o.a.clone()
                    };
                    writeln!(out, "{lhs} vs {}", o.b)?;
                    writeln!(out, "equivalent  {}", o.verdict.equivalent)?;
                    writeln!(out, "reason      {:?}", o.verdict.reason)?;
                    if let Some(w) = &o.verdict.witness {
                        for s in w {
                            writeln!(out, "  {} → {}  ({})", s.from, s.to, move_name(&s.step))?;
                        }
                    }
                    Ok(())
                })()
                .map_err(io)?;
            }
        }
        Command::Exterior { a, b } => {
            let (ka, kb) = (knot(a)?, knot(b)?);
            let o = ExteriorOutput {
                a: ka.to_string(),
                b: kb.to_string(),
                exteriors_homeomorphic: exteriors_homeomorphic(&ka, &kb)?,
            };
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                writeln!(out, "{} vs {}", o.a, o.b).map_err(io)?;
                writeln!(out, "exteriors homeomorphic  {}", o.exteriors_homeomorphic).map_err(io)?;
            }
        }
        Command::Family { m, p_from, p_to } => {
            let f: FamilyReport = enumerate_family(*m, *p_from, *p_to)?;
            if json {
                emit(out, &f).map_err(io)?;
            } else {
                (|| -> io::Result<()> {
                    for x in &f.members {
                        writeln!(out, "{:<14} r_c = {}", x.knot.to_string(), x.r_c)?;
                    }
                    writeln!(out, "pairwise inequivalent              {}", f.pairwise_inequivalent)?;
                    writeln!(
                        out,
                        "pairwise homeomorphic exteriors    {}",
                        f.pairwise_exteriors_homeomorphic
                    )
                })()
                .map_err(io)?;
            }
        }
        Command::Census { knot: spec } => {
            let k = knot(spec)?;
            let o = CensusOutput {
                knot: k.to_string(),
                census: annulus_census(&k)?,
            };
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                (|| -> io::Result<()> {
                    let c = &o.census;
                    writeln!(out, "knot                      {}", o.knot)?;
                    writeln!(out, "JSJ type                  {}", c.jsj_type.letter())?;
                    writeln!(out, "characteristic annuli     {}", c.characteristic_count)?;
                    if c.jsj_type == JsjType::TypeK {
                        let idx: Vec<String> =
                            c.type32_indices.iter().map(ToString::to_string).collect();
                        writeln!(out, "type 3-2 indices l        {{{}}}", idx.join(", "))?;
                        writeln!(out, "type 3-3 annulus          {}", c.has_type33)?;
                        writeln!(out, "non-4-1 count             {}", c.noncharacteristic_non41_count)
                    } else {
                        writeln!(out, "unique type 4-1 annulus   {}", c.type41_unique)
                    }
                })()
                .map_err(io)?;
            }
        }
        Command::Verify { bound, suite } => {
            let reports = verify::run((*suite).into(), *bound)?;
            let o = VerifyOutput {
                passed: reports.iter().all(VerificationReport::passed),
                reports,
            };
            if json {
                emit(out, &o).map_err(io)?;
            } else {
                verify_table(out, &o).map_err(io)?;
            }
            return Ok(if o.passed { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn verify_table(out: &mut dyn Write, o: &VerifyOutput) -> io::Result<()> {
    for rep in &o.reports {
        writeln!(
            out,
            "== {} (bound {}, {} ms)",
            rep.suite, rep.box_bound, rep.elapsed_ms
        )?;
        for c in &rep.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status}  {:>6} tested  {:>4} violations  {}",
                c.instances_tested,
                c.violations.len(),
                c.name
            )?;
            for v in c.violations.iter().take(10) {
                writeln!(out, "        {}: {}", v.subject, v.detail)?;
            }
            if c.violations.len() > 10 {
                writeln!(out, "        … {} more", c.violations.len() - 10)?;
            }
        }
    }
    writeln!(out, "{}", if o.passed { "all checks passed" } else { "violations found" })
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
