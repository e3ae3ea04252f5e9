//! Command-line front end. Exit codes: 0 success, 1 a check failed or the input was
//! refused, 2 the input could not be read.

pub mod format;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::amalgam::{amalgamate, strong_ap_counterwitness, verify_amalgam};
use crate::bunch::{bunch_classify, bunch_validate, embedding_check, subbunch_check, Bunch, RankClass};
use crate::dirsys::{ds_closure, ds_validate};
use crate::error::{Error, Result};
use crate::flechain::{axiom_suite, roundtrip_check, table_decompose};
use crate::flechain::FleChain;
use crate::report::Report;
use format::*;

#[derive(Parser, Debug)]
#[command(name = "layerbunch", version, about = "Bunches of layer groups and involutive FL_e-chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 5)]
    pub bound: u32,
    #[arg(long, global = true, default_value_t = 500)]
    pub count: usize,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a bunch (or a bare system) against its defining conditions.
    Validate { file: PathBuf },
    /// Rank class and idempotent symmetry of a bunch.
    Classify { file: PathBuf },
    /// Evaluate operations of the algebra of a bunch on element literals like `•(1,0)@a`.
    Eval {
        file: PathBuf,
        /// Elements document to sort, when no operation is given.
        elements: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        mul: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        res: Option<Vec<String>>,
        #[arg(long, value_name = "X")]
        neg: Option<String>,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        cmp: Option<Vec<String>>,
    },
    /// Run the chain axioms on the algebra of a bunch or on a finite table.
    Axioms { file: PathBuf },
    /// Decompose a finite table into a bunch.
    Decompose { file: PathBuf },
    /// Rebuild a bunch from its algebra and compare.
    Roundtrip { file: PathBuf },
    /// Check that `x` is a sub-bunch of `y`, with optional inclusion maps.
    Subbunch { x: PathBuf, y: PathBuf, maps: Option<PathBuf> },
    /// Check an embedding specification.
    EmbedCheck { x: PathBuf, y: PathBuf, embedding: PathBuf },
    /// Extend a system to a larger skeleton.
    Closure { system: PathBuf, skeleton: PathBuf },
    /// Amalgamate a V-formation.
    Amalgamate { vformation: PathBuf },
    /// Verify an amalgam against its V-formation.
    VerifyAmalgam { vformation: PathBuf, amalgam: PathBuf },
    /// Show a formation whose amalgam identifies elements outside the common part.
    DemoStrongAp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome { code: 0, text: text.into() }
    }

    fn report(r: &Report) -> Self {
        Outcome { code: if r.is_ok() { 0 } else { 1 }, text: r.render() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Rejected(_) | Error::Failed(_) | Error::InvalidBunch(_) | Error::Table(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { code, text: e.render().to_string() }
        }
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: exit_code(&e), text: format!("error: {e}") },
    }
}

fn bunch_at(path: &PathBuf) -> Result<Bunch> {
    match load(path)?.doc.payload {
        Payload::Bunch(d) => bunch_from_doc(&d),
        other => Err(Error::Parse(format!("{}: expected a bunch document, found {}", path.display(), other.kind()))),
    }
}

fn chain_at(path: &PathBuf) -> Result<FleChain> {
    FleChain::new(bunch_at(path)?)
}

fn emit(cli: &Cli, doc: Document, summary: &str) -> Result<String> {
    match &cli.out {
        Some(p) => {
            std::fs::write(p, doc.to_json()).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(format!("{summary}wrote {}", p.display()))
        }
        None => Ok(doc.to_json().trim_end().to_owned()),
    }
}

fn rank_name(r: RankClass) -> &'static str {
    match r {
        RankClass::Odd => "odd",
        RankClass::EvenNonIdemF => "even, f not idempotent",
        RankClass::EvenIdemF => "even, f idempotent",
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let (bound, count, seed) = (cli.bound, cli.count, cli.seed);
    match &cli.command {
        Command::Validate { file } => match load(file)?.doc.payload {
            Payload::Bunch(d) => Ok(Outcome::report(&bunch_validate(&bunch_from_doc(&d)?))),
            Payload::System(d) => Ok(Outcome::report(&ds_validate(&direct_system_from_doc(&d)?))),
            other => Err(Error::Parse(format!("cannot validate a {} document", other.kind()))),
        },
        Command::Classify { file } => {
            let b = bunch_at(file)?;
            let rep = bunch_validate(&b);
            if !rep.is_ok() {
                return Ok(Outcome::report(&rep));
            }
            let c = bunch_classify(&b);
            Ok(Outcome::ok(format!("rank: {}\nsymm: {}", rank_name(c.rank), c.symm)))
        }
        Command::Eval { file, elements, mul, res, neg, cmp } => {
            let c = chain_at(file)?;
            let el = |s: &String| c.parse_element(s);
            let line = if let Some(v) = mul {
                c.describe(&c.mul(&el(&v[0])?, &el(&v[1])?))
            } else if let Some(v) = res {
                c.describe(&c.res(&el(&v[0])?, &el(&v[1])?))
            } else if let Some(x) = neg {
                c.describe(&c.neg(&el(x)?))
            } else if let Some(v) = cmp {
                match c.compare(&el(&v[0])?, &el(&v[1])?) {
                    Ordering::Less => "<".into(),
                    Ordering::Equal => "=".into(),
                    Ordering::Greater => ">".into(),
                }
            } else if let Some(p) = elements {
                let Payload::Elements(d) = load(p)?.doc.payload else {
                    return Err(Error::Parse(format!("{}: expected an elements document", p.display())));
                };
                let mut xs = d.elements.iter().map(&el).collect::<Result<Vec<_>>>()?;
                xs.sort_by(|a, b| c.compare(a, b));
                xs.iter().map(|x| c.describe(x)).collect::<Vec<_>>().join("\n")
            } else {
                return Err(Error::Parse("eval needs --mul, --res, --neg, --cmp or an elements document".into()));
            };
            Ok(Outcome::ok(line))
        }
        Command::Axioms { file } => match load(file)?.doc.payload {
            Payload::Bunch(d) => Ok(Outcome::report(&axiom_suite(&FleChain::new(bunch_from_doc(&d)?)?, bound, count, seed))),
            Payload::Table(d) => Ok(Outcome::report(&axiom_suite(&table_from_doc(&d)?, bound, count, seed))),
            other => Err(Error::Parse(format!("cannot run axioms on a {} document", other.kind()))),
        },
        Command::Decompose { file } => {
            let Payload::Table(d) = load(file)?.doc.payload else {
                return Err(Error::Parse(format!("{}: expected a table document", file.display())));
            };
            let b = table_decompose(&table_from_doc(&d)?)?;
            Ok(Outcome::ok(emit(cli, Document::new(Payload::Bunch(bunch_to_doc(&b))), "")?))
        }
        Command::Roundtrip { file } => Ok(Outcome::report(&roundtrip_check(&bunch_at(file)?, bound, count, seed))),
        Command::Subbunch { x, y, maps } => {
            let (bx, by) = (bunch_at(x)?, bunch_at(y)?);
            let inclusions = match maps {
                None => BTreeMap::new(),
                Some(p) => {
                    let Payload::Embedding(d) = load(p)?.doc.payload else {
                        return Err(Error::Parse(format!("{}: expected an embedding document", p.display())));
                    };
                    embedding_from_doc(&d, &bx, &by)?.layer_maps
                }
            };
            Ok(Outcome::report(&subbunch_check(&bx, &by, &inclusions)))
        }
        Command::EmbedCheck { x, y, embedding } => {
            let (bx, by) = (bunch_at(x)?, bunch_at(y)?);
            let Payload::Embedding(d) = load(embedding)?.doc.payload else {
                return Err(Error::Parse(format!("{}: expected an embedding document", embedding.display())));
            };
            Ok(Outcome::report(&embedding_check(&bx, &by, &embedding_from_doc(&d, &bx, &by)?)))
        }
        Command::Closure { system, skeleton } => {
            let d = match load(system)?.doc.payload {
                Payload::System(d) => direct_system_from_doc(&d)?,
                Payload::Bunch(d) => bunch_from_doc(&d)?.system().clone(),
                other => return Err(Error::Parse(format!("cannot close a {} document", other.kind()))),
            };
            let Payload::Skeleton(s) = load(skeleton)?.doc.payload else {
                return Err(Error::Parse(format!("{}: expected a skeleton document", skeleton.display())));
            };
            let closed = ds_closure(&d, &skeleton_from_doc(&s)?)?;
            let rep = ds_validate(&closed);
            let text = emit(cli, Document::new(Payload::System(system_to_doc(&closed))), "")?;
            Ok(Outcome { code: if rep.is_ok() { 0 } else { 1 }, text: format!("{}\n{text}", rep.render()) })
        }
        Command::Amalgamate { vformation } => {
            let loaded = load(vformation)?;
            let Payload::Vformation(d) = &loaded.doc.payload else {
                return Err(Error::Parse(format!("{}: expected a vformation document", vformation.display())));
            };
            let v = vformation_from_doc(d, &loaded.base)?;
            let r = amalgamate(&v)?;
            let rep = verify_amalgam(&v, &r, bound, count, seed);
            let lines = rep.render().lines().map(str::to_owned).collect();
            let doc = Document::new(Payload::Amalgam(amalgam_to_doc(&r, Some(lines))));
            let summary = format!("{}\n", rep.render());
            Ok(Outcome { code: if rep.is_ok() { 0 } else { 1 }, text: emit(cli, doc, &summary)? })
        }
        Command::VerifyAmalgam { vformation, amalgam } => {
            let loaded = load(vformation)?;
            let Payload::Vformation(d) = &loaded.doc.payload else {
                return Err(Error::Parse(format!("{}: expected a vformation document", vformation.display())));
            };
            let v = vformation_from_doc(d, &loaded.base)?;
            let Payload::Amalgam(a) = load(amalgam)?.doc.payload else {
                return Err(Error::Parse(format!("{}: expected an amalgam document", amalgam.display())));
            };
            let r = amalgam_from_doc(&a, &v)?;
            Ok(Outcome::report(&verify_amalgam(&v, &r, bound, count, seed)))
        }
        Command::DemoStrongAp => {
            let (v, r, w) = strong_ap_counterwitness()?;
            let (cy, cz, cw) = (FleChain::new(v.y.clone())?, FleChain::new(v.z.clone())?, FleChain::new(r.w.clone())?);
            let summary = format!(
                "both legs double the Z layer at node 1\nviolation: {} in Y and {} in Z both map to {} in W; neither is in the image of X\n",
                cy.describe(&w.y),
                cz.describe(&w.z),
                cw.describe(&w.image)
            );
            let text = match cli.out {
                Some(_) => emit(cli, Document::new(Payload::Vformation(vformation_to_doc(&v))), &summary)?,
                None => summary.trim_end().to_owned(),
            };
            Ok(Outcome::ok(text))
        }
    }
}
