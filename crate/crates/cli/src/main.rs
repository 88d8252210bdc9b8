mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use strata_core::acyccat::random_category;
use strata_core::exitpath::{build_chart, cover, inner_horns, verify_chart};
use strata_core::morse::{classify_flow, flow_category, morse_complex, validate_matching, MorseError};
use strata_core::poset::face_poset;
use strata_core::simpset::io::{to_json, to_off};
use strata_core::simpset::homology;
use strata_core::stellar::{
    chain_stratification, enriched_stratification, roundtrip, roundtrip_enriched, simplicial_cylindrical_structure, star,
    verify_stratum_equals_star,
};
use strata_core::strat::{cone_strat, implications_harness, join_law};
use strata_core::{CategoryJson, LoadedCategory, Side, StratJson, StratSpace};

use input::CategoryArg;
use report::{tuple, Outcome};

#[derive(Parser, Debug)]
#[command(name = "strata", version, about = "Classifying spaces, stellar stratifications and discrete Morse flow categories")]
struct Cli {
    /// Seed for randomized harnesses.
    #[arg(long, global = true, env = "STRATA_SEED", default_value_t = 0)]
    seed: u64,
    /// Output on standard output.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Print nothing; the exit status carries the verdict.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tap,
    Off,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Unstable,
    Stable,
    Simplicial,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nerve (classifying space) of a category.
    Nerve(CategoryArg),
    /// Classifying space with homology and strata counts.
    Classify(CategoryArg),
    /// Stratify a classifying space or a simplicial set.
    Stratify {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long, value_enum, default_value = "unstable")]
        mode: Mode,
        /// simpset.json, for --mode simplicial.
        #[arg(long)]
        space: Option<PathBuf>,
    },
    /// Check the stratification conditions on a labelled simplicial set.
    CheckStrat {
        #[arg(long, required_unless_present = "fixture")]
        strat: Option<PathBuf>,
        #[arg(long, conflicts_with = "strat")]
        fixture: Option<String>,
    },
    /// Implications among the stratification conditions on random samples.
    Implications {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Join of two stratified spaces.
    Join {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Cone on a stratified space.
    Cone {
        #[arg(long)]
        strat: PathBuf,
    },
    /// Lower or upper star of an object.
    Stellar {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value = "lower")]
        side: SideArg,
    },
    /// Extract the face category of the unstable stratification and compare.
    Roundtrip {
        #[command(flatten)]
        cat: CategoryArg,
        /// Also run this many seeded random categories.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Exit paths: conical charts and inner horns.
    Exit {
        #[command(subcommand)]
        command: ExitCommand,
    },
    /// Discrete Morse matchings and flow categories.
    Morse {
        #[command(subcommand)]
        command: MorseCommand,
    },
    /// Integral homology of a simplicial set or classifying space.
    Homology {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long)]
        space: Option<PathBuf>,
        /// A built-in space such as hexagon, two_gon, simplex3 or sphere2.
        #[arg(long, conflicts_with = "space")]
        space_fixture: Option<String>,
    },
    /// Export a space (json or off) or a stratified space (json).
    Export {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long)]
        space: Option<PathBuf>,
        #[arg(long, conflicts_with = "space")]
        space_fixture: Option<String>,
        #[arg(long, conflicts_with_all = ["space", "space_fixture"])]
        strat: Option<PathBuf>,
        /// bad_antichain, good_edge or vertex_with_open_triangle.
        #[arg(long, conflicts_with_all = ["space", "space_fixture", "strat"])]
        strat_fixture: Option<String>,
        /// Export the category itself rather than its classifying space.
        #[arg(long)]
        category_json: bool,
        /// Export the unstable stratification of the classifying space.
        #[arg(long)]
        stratified: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ExitCommand {
    /// Conical chart at one object.
    Chart {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long)]
        object: String,
    },
    /// Charts at every object and whether they cover.
    Cover {
        #[command(flatten)]
        cat: CategoryArg,
    },
    /// Inner horns of exit simplices and their fillers.
    Horns {
        #[command(flatten)]
        cat: CategoryArg,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(clap::Args, Debug)]
struct MorseArg {
    /// matching.json
    #[arg(long, required_unless_present = "fixture")]
    matching: Option<PathBuf>,
    /// flowhoms.json
    #[arg(long)]
    flowhoms: Option<PathBuf>,
    /// hexagon, circle or three_cycle.
    #[arg(long, conflicts_with = "matching")]
    fixture: Option<String>,
}

impl MorseArg {
    fn load(&self) -> Result<(strata_core::RegComplex, strata_core::Matching, Option<strata_core::FlowHoms>)> {
        let (c, m, mut homs) = match (&self.matching, &self.fixture) {
            (Some(p), _) => {
                let (c, m) = input::load_matching(p)?;
                (c, m, None)
            }
            (None, Some(f)) => input::morse_fixture(f)?,
            (None, None) => bail!("--matching or --fixture is required"),
        };
        if let Some(p) = &self.flowhoms {
            homs = Some(input::load_flow_homs(p)?);
        }
        Ok((c, m, homs))
    }
}

#[derive(Subcommand, Debug)]
enum MorseCommand {
    /// Structural and acyclicity checks.
    Validate(MorseArg),
    /// The Morse complex and its homology.
    Complex(MorseArg),
    /// The flow category.
    Flow(MorseArg),
    /// The stratified classifying space of the flow category.
    Classify(MorseArg),
}

fn strata_sizes(s: &StratSpace) -> Vec<usize> {
    (0..s.poset().len()).map(|l| s.stratum(l).len()).collect()
}

fn strat_checks(out: &mut Outcome, s: &StratSpace) {
    let r = s.check_conditions();
    for (name, v) in r.conditions() {
        out.check_with(name, v.pass, v.witness.as_ref().map(|w| format!("cell {} label {}: {}", w.cell, w.label, w.detail)));
    }
    for (kind, map) in [("connected", &r.connected), ("locally-closed", &r.locally_closed)] {
        for (label, v) in map {
            out.check_with(format!("{kind} {label}"), v.pass, v.witness.as_ref().map(|w| format!("cell {}: {}", w.cell, w.detail)));
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Nerve(cat) => {
            let x = match cat.load()? {
                LoadedCategory::Discrete(c) => c.classifying_space().0,
                LoadedCategory::Enriched(e) => e.classifying_space()?.0,
            };
            if cli.format == Some(Format::Off) {
                return Ok(Outcome::raw(to_off(&x)?));
            }
            let mut out = Outcome::new(json!({ "f_vector": x.f_vector(), "space": serde_json::from_str::<serde_json::Value>(&to_json(&x))? }));
            out.check("nerve is a valid simplicial set", x.validate().is_ok());
            out.note(format!("f-vector {}", tuple(&x.f_vector())));
            out
        }
        Command::Classify(cat) => {
            let (x, strata) = match cat.load()? {
                LoadedCategory::Discrete(c) => {
                    let (s, _) = chain_stratification(&c, Side::Lower);
                    (s.space().clone(), strata_sizes(&s))
                }
                LoadedCategory::Enriched(e) => {
                    let (s, _) = enriched_stratification(&e, Side::Lower)?;
                    (s.space().clone(), strata_sizes(&s))
                }
            };
            let h = homology(&x);
            let mut out = Outcome::new(json!({ "f_vector": x.f_vector(), "homology": h, "groups": h.groups(), "strata": strata }));
            out.check("Euler characteristic agrees with homology", x.euler_characteristic() == h.rational_euler());
            out.note(format!("f-vector {}", tuple(&x.f_vector())));
            out.note(format!("homology ({})", h.groups().join(", ")));
            out.note(format!("strata {}", tuple(&strata)));
            out
        }
        Command::Stratify { cat, mode, space } => {
            let (s, cyl) = match mode {
                Mode::Simplicial => {
                    let x = match space {
                        Some(p) => input::load_space(p)?,
                        None => match cat.load()? {
                            LoadedCategory::Discrete(c) => c.classifying_space().0,
                            LoadedCategory::Enriched(e) => e.classifying_space()?.0,
                        },
                    };
                    let (s, cyl) = simplicial_cylindrical_structure(&x)?;
                    let r = cyl.verify(s.space());
                    (s, Some(r))
                }
                Mode::Unstable | Mode::Stable => {
                    let side = if matches!(mode, Mode::Unstable) { Side::Lower } else { Side::Upper };
                    let s = match cat.load()? {
                        LoadedCategory::Discrete(c) => chain_stratification(&c, side).0,
                        LoadedCategory::Enriched(e) => enriched_stratification(&e, side)?.0,
                    };
                    (s, None)
                }
            };
            let sizes: Vec<(String, usize)> = (0..s.poset().len()).map(|l| (s.poset().name(l).to_string(), s.stratum(l).len())).collect();
            let mut out = Outcome::new(json!({ "strata": sizes, "cylindrical": cyl, "strat": StratJson::from_strat(&s) }));
            strat_checks(&mut out, &s);
            if let Some(r) = &cyl {
                out.check_with("cylindrical structure", r.pass(), r.witness.clone());
            }
            out.note(format!("strata {}", sizes.iter().map(|(n, k)| format!("{n}:{k}")).collect::<Vec<_>>().join(" ")));
            out
        }
        Command::CheckStrat { strat, fixture } => {
            let s = match (strat, fixture) {
                (Some(p), _) => input::load_strat(p)?,
                (None, Some(f)) => input::strat_fixture(f)?,
                (None, None) => bail!("--strat or --fixture is required"),
            };
            let r = s.check_conditions();
            let witness = r.first_witness().cloned();
            let mut out = Outcome::new(json!({ "conditions": r, "exhaustive": s.check_exhaustive(), "witness": witness }));
            strat_checks(&mut out, &s);
            if let Some(w) = witness {
                out.note(format!("witness cell {} ({}) label {}", w.cell, s.space().label(w.cell), w.label));
            }
            out
        }
        Command::Implications { samples } => {
            let r = implications_harness(*samples, cli.seed);
            let mut out = Outcome::new(&r);
            out.check_with(format!("{} samples, seed {}", r.samples, r.seed), r.pass(), r.violations.first().cloned());
            out.note(format!("(1)+(2): {}  (3)+(4)+(5): {}", r.open_continuous, r.order_frontier_closed));
            out
        }
        Command::Join { left, right } => {
            let (a, b) = (input::load_strat(left)?, input::load_strat(right)?);
            let (j, r) = join_law(&a, &b)?;
            let h = homology(j.space());
            let mut out = Outcome::new(json!({ "law": r, "homology": h.groups(), "strat": StratJson::from_strat(&j) }));
            out.check("face poset of the join is the join of face posets", r.face_poset_iso);
            let (ea, eb, ej) = r.reduced_euler;
            out.check_with("reduced Euler characteristic is multiplicative up to sign", ej == -ea * eb, Some(format!("{ej} != -({ea})({eb})")));
            out.note(format!("f-vector {}", tuple(&r.f_vector)));
            out.note(format!("homology ({})", h.groups().join(", ")));
            out
        }
        Command::Cone { strat } => {
            let s = input::load_strat(strat)?;
            let c = cone_strat(&s)?;
            let h = homology(c.space());
            let (fp, _) = face_poset(&c)?;
            let mut out = Outcome::new(json!({ "f_vector": c.space().f_vector(), "strata": fp.len(), "homology": h.groups(), "strat": StratJson::from_strat(&c) }));
            out.check("cone is contractible", h.is_point());
            out.check("face poset is the stratified cone poset", fp.isomorphism(c.poset()).is_some());
            out.note(format!("f-vector {}", tuple(&c.space().f_vector())));
            out
        }
        Command::Stellar { cat, object, side } => {
            let c = cat.discrete()?;
            let x = c.object_index(object).ok_or_else(|| anyhow::anyhow!("unknown object {object}"))?;
            let side = match side {
                SideArg::Lower => Side::Lower,
                SideArg::Upper => Side::Upper,
            };
            let (_, table) = chain_stratification(&c, side);
            let cell = star(&c, x, side, &table)?;
            let summary = cell.summary(&c);
            let r = verify_stratum_equals_star(&c, x, side)?;
            let mut out = Outcome::new(json!({ "star": summary, "stratum": r }));
            out.check("dome is the cone on its boundary", summary.h_isomorphism);
            out.check_with("star interior is the open stratum", r.pass(), r.witness.clone());
            out.check("link levels agree with the comma category", summary.link_levels_match);
            out.note(format!("dome {} boundary {} interior {}", tuple(&summary.dome), tuple(&summary.boundary), summary.interior));
            out
        }
        Command::Roundtrip { cat, random } => {
            let mut out = match cat.load()? {
                LoadedCategory::Discrete(c) => {
                    let r = roundtrip(&c)?;
                    let mut out = Outcome::new(&r);
                    out.check_with("cylindrical structure", r.cylinder.pass(), r.cylinder.witness.clone());
                    out.check_with(
                        "extracted face category is isomorphic",
                        r.isomorphism.is_some(),
                        r.mismatch.as_ref().map(|m| format!("{}: {} vs {}", m.invariant, m.left, m.right)),
                    );
                    if let Some(iso) = &r.isomorphism {
                        out.note(format!("isomorphism {}", iso.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" ")));
                    }
                    out
                }
                LoadedCategory::Enriched(e) => {
                    let r = roundtrip_enriched(&e)?;
                    let mut out = Outcome::new(&r);
                    out.check("face poset of strata is the object order", r.face_poset_iso);
                    for h in &r.homs {
                        out.check(format!("hom {}->{} is the nerve of its poset", h.source, h.target), h.nerve_iso && h.prisms == h.hom_cells);
                    }
                    out.check_with("composition", r.composition, r.witness.clone());
                    out
                }
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = Vec::new();
            for k in 0..*random {
                let c = random_category(&mut rng);
                if !roundtrip(&c)?.pass() {
                    failures.push(k);
                }
            }
            if *random > 0 {
                out.check_with(format!("{random} random categories, seed {}", cli.seed), failures.is_empty(), Some(format!("failing samples {failures:?}")));
            }
            out
        }
        Command::Exit { command } => exit_command(command)?,
        Command::Morse { command } => morse_command(command)?,
        Command::Homology { cat, space, space_fixture } => {
            let x = match (space, space_fixture) {
                (Some(p), _) => input::load_space(p)?,
                (None, Some(f)) => input::space_fixture(f)?,
                (None, None) => match cat.load()? {
                    LoadedCategory::Discrete(c) => c.classifying_space().0,
                    LoadedCategory::Enriched(e) => e.classifying_space()?.0,
                },
            };
            let h = homology(&x);
            let mut out = Outcome::new(json!({ "homology": h, "groups": h.groups(), "f_vector": x.f_vector() }));
            out.check("Euler characteristic agrees with homology", x.euler_characteristic() == h.rational_euler());
            out.note(format!("homology ({})", h.groups().join(", ")));
            out
        }
        Command::Export { cat, space, space_fixture, strat, strat_fixture, category_json, stratified, out: _ } => {
            let format = cli.format.unwrap_or(Format::Json);
            if format == Format::Tap {
                bail!("export writes json or off");
            }
            let s = match (strat, strat_fixture) {
                (Some(p), _) => Some(input::load_strat(p)?),
                (None, Some(f)) => Some(input::strat_fixture(f)?),
                (None, None) => None,
            };
            if let Some(s) = s {
                return Ok(Outcome::raw(match format {
                    Format::Off => to_off(s.space())?,
                    _ => pretty(&StratJson::from_strat(&s)),
                }));
            }
            let x = match (space, space_fixture) {
                (Some(p), _) => input::load_space(p)?,
                (None, Some(f)) => input::space_fixture(f)?,
                (None, None) => {
                    let loaded = cat.load()?;
                    if *category_json {
                        return Ok(Outcome::raw(match &loaded {
                            LoadedCategory::Discrete(c) => CategoryJson::from_discrete(c).to_pretty(),
                            LoadedCategory::Enriched(e) => CategoryJson::from_enriched(e).to_pretty(),
                        }));
                    }
                    let s = match loaded {
                        LoadedCategory::Discrete(c) => chain_stratification(&c, Side::Lower).0,
                        LoadedCategory::Enriched(e) => enriched_stratification(&e, Side::Lower)?.0,
                    };
                    if *stratified && format == Format::Json {
                        return Ok(Outcome::raw(pretty(&StratJson::from_strat(&s))));
                    }
                    s.space().clone()
                }
            };
            Outcome::raw(match format {
                Format::Off => to_off(&x)?,
                _ => to_json(&x),
            })
        }
    })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn exit_command(command: &ExitCommand) -> Result<Outcome> {
    Ok(match command {
        ExitCommand::Chart { cat, object } => {
            let c = cat.discrete()?;
            let x = c.object_index(object).ok_or_else(|| anyhow::anyhow!("unknown object {object}"))?;
            let (bc, table) = c.classifying_space();
            let chart = build_chart(&c, x, &table)?;
            let r = verify_chart(&c, &chart, &bc, &table);
            let mut out = Outcome::new(&r);
            out.check("chart is simplicial", r.simplicial);
            out.check("open image is the vertex star", r.bijective_onto_star);
            out.check("branches partition the open image", r.branches_partition);
            out.check("restrictions to the factors", r.restrictions);
            out.check_with("open chart identity", r.open_identity, r.witness.clone());
            out.note(format!("open image {} cells: {}", r.open_image.len(), r.open_image.join(" ")));
            out.note(format!("closed image {} cells", r.closed_image.len()));
            out
        }
        ExitCommand::Cover { cat } => {
            let c = cat.discrete()?;
            let r = cover(&c)?;
            let mut out = Outcome::new(&r);
            for ch in &r.charts {
                out.check_with(format!("chart at {}", ch.object), ch.pass(), ch.witness.clone());
            }
            out.check_with("charts cover the classifying space", r.uncovered.is_empty(), Some(r.uncovered.join(" ")));
            out
        }
        ExitCommand::Horns { cat, max_dim } => {
            let c = cat.discrete()?;
            let (s, _) = chain_stratification(&c, Side::Lower);
            let mut reports = Vec::new();
            for n in 2..=*max_dim {
                reports.extend(inner_horns(&s, n)?);
            }
            let mut out = Outcome::new(&reports);
            for r in &reports {
                out.check_with(
                    format!("inner horns of dimension {} at {}: {}/{} filled", r.dim, r.k, r.filled, r.horns),
                    r.filled == r.horns,
                    r.unfilled.as_ref().map(|u| u.join(" ")),
                );
            }
            out
        }
    })
}

fn morse_command(command: &MorseCommand) -> Result<Outcome> {
    Ok(match command {
        MorseCommand::Validate(arg) => {
            let (c, m, _) = arg.load()?;
            let r = validate_matching(&c, &m)?;
            let mut out = Outcome::new(&r);
            out.check("matching pairs are disjoint covers", true);
            out.check_with("no closed gradient path", r.acyclic, r.witness.as_ref().map(|w| w.join(" > ")));
            out.check("gradient path graph agrees", r.acyclic == r.acyclic_vpaths);
            out.note(format!("critical cells: {}", r.critical.join(" ")));
            out
        }
        MorseCommand::Complex(arg) => {
            let (c, m, _) = arg.load()?;
            match morse_complex(&c, &m) {
                Ok(mc) => {
                    let critical: Vec<Vec<&str>> = mc.critical.iter().map(|v| v.iter().map(|&i| c.name(i)).collect()).collect();
                    let groups = mc.homology.as_ref().map(|h| h.groups());
                    let mut out = Outcome::new(json!({ "critical": critical, "ranks": mc.complex.ranks, "homology": mc.homology, "betti_mod2": mc.betti_mod2 }));
                    out.check("Morse homology equals cellular homology", true);
                    out.note(format!("ranks {}", tuple(&mc.complex.ranks)));
                    if let Some(g) = groups {
                        out.note(format!("homology ({})", g.join(", ")));
                    }
                    out
                }
                Err(e @ (MorseError::Cyclic(_) | MorseError::HomologyMismatch { .. })) => {
                    let mut out = Outcome::new(json!({ "error": e.to_string() }));
                    out.check_with("Morse complex", false, Some(e.to_string()));
                    out
                }
                Err(e) => return Err(e.into()),
            }
        }
        MorseCommand::Flow(arg) => {
            let (c, m, homs) = arg.load()?;
            let fc = flow_category(&c, &m, homs.as_ref())?;
            let homs: Vec<serde_json::Value> = fc
                .cat
                .homs()
                .map(|((x, y), h)| {
                    let elements = h.poset.as_ref().map(|p| p.0.names().to_vec()).unwrap_or_default();
                    json!({ "source": fc.cat.objects()[x], "target": fc.cat.objects()[y], "elements": elements, "f_vector": h.space.f_vector() })
                })
                .collect();
            let mut out = Outcome::new(json!({ "objects": fc.cat.objects(), "homs": homs }));
            out.check("flow category is a poset-enriched acyclic category", true);
            out.note(format!("objects: {}", fc.cat.objects().join(" ")));
            out
        }
        MorseCommand::Classify(arg) => {
            let (c, m, homs) = arg.load()?;
            let fc = flow_category(&c, &m, homs.as_ref())?;
            let (_, r) = classify_flow(&fc)?;
            let mut out = Outcome::new(&r);
            out.check("strata are indexed by critical cells", r.strata == r.critical.len());
            out.check_with("face category round trip", r.structure.pass(), r.structure.witness.clone());
            out.note(format!("cells {}", tuple(&r.cells)));
            out.note(format!("simplices {}", tuple(&r.simplices)));
            out.note(format!("homology ({})", r.homology.groups().join(", ")));
            out
        }
    })
}

/// Writes to standard output, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(text) = &out.raw {
        let target = match &cli.command {
            Command::Export { out, .. } => out.clone(),
            _ => None,
        };
        let text = if text.ends_with('\n') { text.clone() } else { format!("{text}\n") };
        match target {
            Some(p) => {
                if let Err(e) = std::fs::write(&p, text) {
                    eprintln!("error: writing {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            None if !cli.quiet => emit(&text),
            None => {}
        }
        return ExitCode::SUCCESS;
    }
    if cli.format == Some(Format::Off) {
        eprintln!("error: --format off applies to export and nerve");
        return ExitCode::from(2);
    }
    let report = pretty(&out.report());
    if let Some(p) = &cli.report {
        if let Err(e) = std::fs::write(p, format!("{report}\n")) {
            eprintln!("error: writing {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        match cli.format {
            Some(Format::Json) => emit(&format!("{report}\n")),
            _ => {
                emit(&out.tap().iter().map(|l| format!("{l}\n")).collect::<String>());
            }
        }
    }
    if out.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
