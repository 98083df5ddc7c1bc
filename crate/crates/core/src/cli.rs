//! The `grpops` command line.
//!
//! Exit codes: `0` when every check passes, `1` when a check fails, `2` for
//! unreadable input, structural errors and usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::actions::{check_split_extension, semidirect, verify_derived_action};
use crate::covering::{classify_covers, construct_cover, lift_operations};
use crate::equivalence::{delta, delta_on_covering, eta, eta_on_cover, iso_delta_eta, iso_eta_delta};
use crate::error::{Error, Result};
use crate::groupoid::{check_groupoid, check_groupoid_morphism};
use crate::internal::{check_internal_groupoid, check_internal_morphism};
use crate::io::format::{parse, serialize, Structure};
use crate::io::generators::{
    gen_cyclic_group, gen_cyclic_ring, gen_dihedral, gen_f4_space, gen_module, gen_one_object,
    gen_pair_groupoid,
};
use crate::omega::{check_identity, check_omega_group, enumerate_subobjects, Identity, OmegaGroup};
use crate::report::Report;
use crate::xmod::{check_crossed_module, check_xmod_morphism};

#[derive(Parser, Debug)]
#[command(name = "grpops", version, about = "Check and build finite groups with operations, crossed modules and internal groupoids")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// File of extra identities, one per line, checked on every Ω-group.
    #[arg(long, value_name = "FILE", global = true)]
    identities: Option<PathBuf>,

    /// Witnesses shown per failed law.
    #[arg(long, value_name = "K", default_value_t = 5, global = true)]
    max_witnesses: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom of the structure in a file.
    Check { file: PathBuf },
    /// Build `B ⋉ A` from an action of `B` on `A`.
    Semidirect {
        base: PathBuf,
        kernel: PathBuf,
        action: PathBuf,
    },
    /// Internal groupoid to crossed module, or covering morphism to cover.
    Delta { file: PathBuf },
    /// Crossed module to internal groupoid, or cover to covering morphism.
    Eta { file: PathBuf },
    /// Verify the round-trip isomorphism of a crossed module or internal groupoid.
    Roundtrip { file: PathBuf },
    /// Build the cover of a groupoid or internal groupoid for a vertex subgroup.
    Cover {
        file: PathBuf,
        /// Comma-separated loops at object 0, e.g. `0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        subobject: Vec<usize>,
        /// Emit the covering morphism instead of the cover.
        #[arg(long)]
        projection: bool,
    },
    /// List every subgroup of the vertex group and whether operations lift.
    Classify { file: PathBuf },
    /// List every subobject of an Ω-group.
    Subobjects { file: PathBuf },
    /// Write an example structure.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Size parameters: `n` for most families, `m n` for `module`.
        params: Vec<usize>,
        /// Wrap the result as a one-object internal groupoid.
        #[arg(long, conflicts_with = "pair_groupoid")]
        one_object: bool,
        /// Wrap the result as the pair groupoid on it.
        #[arg(long)]
        pair_groupoid: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    CyclicGroup,
    CyclicRing,
    Module,
    Dihedral,
    F4Space,
}

struct Out<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    format: Format,
    max: usize,
}

impl Out<'_> {
    fn render(&self, r: &Report) -> String {
        match self.format {
            Format::Human => r.render_human(self.max),
            Format::Machine => r.render_machine(self.max),
        }
    }

    /// Writes a check report to stdout.
    fn report(&mut self, r: &Report) -> Result<i32> {
        let text = self.render(r);
        self.stdout.write_all(text.as_bytes())?;
        Ok(exit_code(r))
    }

    /// Writes a structure to stdout and its accompanying report to stderr.
    fn structure(&mut self, s: &Structure, r: &Report) -> Result<i32> {
        if r.is_ok() {
            self.stdout.write_all(serialize(s).as_bytes())?;
        }
        let text = self.render(r);
        self.stderr.write_all(text.as_bytes())?;
        Ok(exit_code(r))
    }
}

fn exit_code(r: &Report) -> i32 {
    if r.is_ok() {
        0
    } else {
        1
    }
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let mut out = Out {
        stdout,
        stderr,
        format: cli.format,
        max: cli.max_witnesses,
    };
    match dispatch(&cli, &mut out) {
        Ok(code) => code,
        Err(Error::Verification(r)) => {
            let text = out.render(&r);
            let _ = out.stderr.write_all(text.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {e}");
            2
        }
    }
}

fn load(path: &Path) -> Result<Structure> {
    let text = fs::read_to_string(path)?;
    parse(&text).map_err(|e| match e {
        Error::Syntax {
            line,
            column,
            message,
        } => Error::Syntax {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        e => e,
    })
}

fn load_identities(path: &Path) -> Result<Vec<Identity>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id = line.parse::<Identity>().map_err(|e| match e {
            Error::Syntax {
                column, message, ..
            } => Error::Syntax {
                line: i + 1,
                column,
                message,
            },
            e => e,
        })?;
        out.push(id);
    }
    Ok(out)
}

fn wrong_kind(command: &str, s: &Structure, expected: &str) -> Error {
    Error::malformed(format!(
        "`{command}` expects {expected}, found kind `{}`",
        s.kind()
    ))
}

/// The Ω-groups inside a structure, with the report section for each.
fn components(s: &Structure) -> Vec<(String, &OmegaGroup)> {
    match s {
        Structure::OmegaGroup { group, .. } => vec![(String::new(), group)],
        Structure::Action(a) => vec![("actor".into(), a.actor()), ("acted".into(), a.acted())],
        Structure::SplitExtension(x) => vec![
            ("kernel".into(), x.kernel()),
            ("extension".into(), x.extension()),
            ("base".into(), x.base()),
        ],
        Structure::CrossedModule(x) => {
            vec![("kernel".into(), x.kernel()), ("base".into(), x.base())]
        }
        Structure::Groupoid(_) | Structure::GroupoidMorphism(_) => vec![],
        Structure::InternalGroupoid(g) => vec![
            ("morphism_group".into(), g.morphism_group()),
            ("object_group".into(), g.object_group()),
        ],
        Structure::XModMorphism(m) => vec![
            ("source/kernel".into(), m.source().kernel()),
            ("source/base".into(), m.source().base()),
            ("target/kernel".into(), m.target().kernel()),
            ("target/base".into(), m.target().base()),
        ],
        Structure::InternalMorphism(f) => vec![
            ("source/morphism_group".into(), f.source().morphism_group()),
            ("source/object_group".into(), f.source().object_group()),
            ("target/morphism_group".into(), f.target().morphism_group()),
            ("target/object_group".into(), f.target().object_group()),
        ],
    }
}

fn join_section(prefix: &str, section: &str) -> String {
    if prefix.is_empty() {
        section.to_string()
    } else {
        format!("{prefix}/{section}")
    }
}

/// Every axiom check for a structure.
pub fn check_structure(s: &Structure) -> Result<Report> {
    let mut r = Report::new();
    match s {
        Structure::OmegaGroup { group, .. } => r = check_omega_group(group),
        Structure::Action(a) => {
            r.absorb("actor", check_omega_group(a.actor()));
            r.absorb("acted", check_omega_group(a.acted()));
            r.absorb("action", verify_derived_action(a));
        }
        Structure::SplitExtension(x) => r = check_split_extension(x),
        Structure::CrossedModule(x) => {
            r.absorb("kernel", check_omega_group(x.kernel()));
            r.absorb("base", check_omega_group(x.base()));
            r.absorb("crossed_module", check_crossed_module(x)?);
        }
        Structure::Groupoid(g) => r = check_groupoid(g),
        Structure::InternalGroupoid(g) => r = check_internal_groupoid(g),
        Structure::XModMorphism(m) => {
            for (name, x) in [("source", m.source()), ("target", m.target())] {
                r.absorb(&format!("{name}/kernel"), check_omega_group(x.kernel()));
                r.absorb(&format!("{name}/base"), check_omega_group(x.base()));
                r.absorb(name, check_crossed_module(x)?);
            }
            r.absorb("morphism", check_xmod_morphism(m)?);
        }
        Structure::GroupoidMorphism(f) => {
            r.absorb("source", check_groupoid(f.source()));
            r.absorb("target", check_groupoid(f.target()));
            r.absorb("morphism", check_groupoid_morphism(f));
        }
        Structure::InternalMorphism(f) => {
            r.absorb("source", check_internal_groupoid(f.source()));
            r.absorb("target", check_internal_groupoid(f.target()));
            r.absorb("morphism", check_internal_morphism(f)?);
        }
    }
    Ok(r)
}

fn check_identities(s: &Structure, extra: &[Identity]) -> Result<Report> {
    let mut r = Report::new();
    let own: &[Identity] = match s {
        Structure::OmegaGroup { identities, .. } => identities,
        _ => &[],
    };
    for (prefix, g) in components(s) {
        for (i, id) in own.iter().chain(extra).enumerate() {
            r.absorb(
                &join_section(&prefix, &format!("identities.{i}")),
                check_identity(g, id)?,
            );
        }
    }
    Ok(r)
}

fn dispatch(cli: &Cli, out: &mut Out<'_>) -> Result<i32> {
    let extra = match &cli.identities {
        Some(p) => load_identities(p)?,
        None => Vec::new(),
    };
    match &cli.command {
        Command::Check { file } => {
            let s = load(file)?;
            let mut r = check_structure(&s)?;
            r.absorb("", check_identities(&s, &extra)?);
            out.report(&r)
        }
        Command::Semidirect {
            base,
            kernel,
            action,
        } => {
            let b = expect_group(load(base)?, "semidirect")?;
            let a = expect_group(load(kernel)?, "semidirect")?;
            let act = match load(action)? {
                Structure::Action(act) => act,
                s => return Err(wrong_kind("semidirect", &s, "an `action` record")),
            };
            if act.actor() != &b || act.acted() != &a {
                return Err(Error::malformed(
                    "the action's groups differ from the given base and kernel",
                ));
            }
            let r = verify_derived_action(&act);
            out.structure(&Structure::from(semidirect(&act)), &r)
        }
        Command::Delta { file } => match load(file)? {
            Structure::InternalGroupoid(g) => {
                let x = delta(&g)?;
                out.structure(&Structure::from(x), &Report::new())
            }
            Structure::InternalMorphism(f) => {
                let (m, r) = delta_on_covering(&f)?;
                out.structure(&Structure::from(m), &r)
            }
            s => Err(wrong_kind(
                "delta",
                &s,
                "an `internal_groupoid` or a `groupoid_morphism` between internal groupoids",
            )),
        },
        Command::Eta { file } => match load(file)? {
            Structure::CrossedModule(x) => {
                let g = eta(&x)?;
                out.structure(&Structure::from(g), &Report::new())
            }
            Structure::XModMorphism(m) => {
                let (f, r) = eta_on_cover(&m)?;
                out.structure(&Structure::from(f), &r)
            }
            s => Err(wrong_kind("eta", &s, "a `crossed_module` or an `xmod_morphism`")),
        },
        Command::Roundtrip { file } => match load(file)? {
            Structure::CrossedModule(x) => out.report(&iso_delta_eta(&x)?.report),
            Structure::InternalGroupoid(g) => out.report(&iso_eta_delta(&g)?.report),
            s => Err(wrong_kind(
                "roundtrip",
                &s,
                "a `crossed_module` or an `internal_groupoid`",
            )),
        },
        Command::Cover {
            file,
            subobject,
            projection,
        } => match load(file)? {
            Structure::Groupoid(g) => {
                let c = construct_cover(&g, subobject)?;
                let s = if *projection {
                    Structure::from(c.projection().clone())
                } else {
                    Structure::from(c.cover().clone())
                };
                out.structure(&s, &Report::new())
            }
            Structure::InternalGroupoid(g) => {
                let l = lift_operations(&g, subobject)?;
                let s = if *projection {
                    Structure::from(l.projection.clone())
                } else {
                    Structure::from(l.cover.clone())
                };
                out.structure(&s, &l.report)
            }
            s => Err(wrong_kind("cover", &s, "a `groupoid` or an `internal_groupoid`")),
        },
        Command::Classify { file } => {
            let g = match load(file)? {
                Structure::InternalGroupoid(g) => g,
                s => return Err(wrong_kind("classify", &s, "an `internal_groupoid`")),
            };
            let classes = classify_covers(&g)?;
            let mut defects = Report::new();
            for c in &classes {
                let members = list(&c.subgroup);
                let (objects, morphisms) = (c.cover.index(), c.cover.cover().n_morphisms());
                match out.format {
                    Format::Human => writeln!(
                        out.stdout,
                        "subgroup {{{}}}: {}, cover with {} and {}",
                        members.replace(',', ", "),
                        if c.liftable { "liftable" } else { "not liftable" },
                        plural(objects, "object"),
                        plural(morphisms, "morphism"),
                    )?,
                    Format::Machine => writeln!(
                        out.stdout,
                        "subgroup members={members} order={} liftable={} objects={objects} morphisms={morphisms}",
                        c.subgroup.len(),
                        c.liftable,
                    )?,
                }
                if let Some(l) = &c.lifted {
                    defects.absorb(&format!("subgroup.{}", members.replace(',', "_")), l.report.clone());
                }
            }
            let liftable = classes.iter().filter(|c| c.liftable).count();
            match out.format {
                Format::Human => writeln!(
                    out.stdout,
                    "{} subgroups, {liftable} liftable",
                    classes.len()
                )?,
                Format::Machine => writeln!(
                    out.stdout,
                    "summary subgroups={} liftable={liftable}",
                    classes.len()
                )?,
            }
            if !defects.is_ok() {
                let text = out.render(&defects);
                out.stderr.write_all(text.as_bytes())?;
            }
            Ok(exit_code(&defects))
        }
        Command::Subobjects { file } => {
            let g = expect_group(load(file)?, "subobjects")?;
            let subs = enumerate_subobjects(&g);
            for s in &subs {
                match out.format {
                    Format::Human => {
                        writeln!(out.stdout, "{{{}}}", list(s.members()).replace(',', ", "))?
                    }
                    Format::Machine => writeln!(
                        out.stdout,
                        "subobject members={} order={}",
                        list(s.members()),
                        s.len()
                    )?,
                }
            }
            match out.format {
                Format::Human => writeln!(out.stdout, "{} subobjects", subs.len())?,
                Format::Machine => writeln!(out.stdout, "summary subobjects={}", subs.len())?,
            }
            Ok(0)
        }
        Command::Generate {
            family,
            params,
            one_object,
            pair_groupoid,
        } => {
            let g = generate(*family, params)?;
            let s = if *one_object {
                Structure::from(gen_one_object(&g))
            } else if *pair_groupoid {
                Structure::from(gen_pair_groupoid(&g))
            } else {
                Structure::from(g)
            };
            out.stdout.write_all(serialize(&s).as_bytes())?;
            Ok(0)
        }
    }
}

fn expect_group(s: Structure, command: &str) -> Result<OmegaGroup> {
    match s {
        Structure::OmegaGroup { group, .. } => Ok(group),
        s => Err(wrong_kind(command, &s, "an `omega_group` record")),
    }
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn generate(family: Family, params: &[usize]) -> Result<OmegaGroup> {
    let want = if matches!(family, Family::Module) {
        2
    } else if matches!(family, Family::F4Space) {
        0
    } else {
        1
    };
    if params.len() != want || params.contains(&0) {
        return Err(Error::malformed(format!(
            "this family takes {want} positive size parameter(s), got {params:?}"
        )));
    }
    Ok(match family {
        Family::CyclicGroup => gen_cyclic_group(params[0]),
        Family::CyclicRing => gen_cyclic_ring(params[0]),
        Family::Module => gen_module(params[0], params[1]),
        Family::Dihedral => gen_dihedral(params[0]),
        Family::F4Space => gen_f4_space(),
    })
}
