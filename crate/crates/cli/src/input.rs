use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use strata_core::fixtures;
use strata_core::morse::{FlowHoms, FlowHomsJson, Matching, MatchingJson, RegComplex};
use strata_core::simpset::io::from_json;
use strata_core::{AcycCat, CategoryJson, FinSimpSet, LoadedCategory, StratJson, StratSpace};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn base(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

#[derive(Args, Clone, Debug)]
pub struct CategoryArg {
    /// category.json
    #[arg(long, conflicts_with = "fixture")]
    pub category: Option<PathBuf>,
    /// A built-in category; defaults to figure1.
    #[arg(long)]
    pub fixture: Option<String>,
}

impl CategoryArg {
    pub fn load(&self) -> Result<LoadedCategory> {
        if let Some(p) = &self.category {
            let json = CategoryJson::parse(&read(p)?)?;
            return Ok(json.load()?);
        }
        let name = self.fixture.as_deref().unwrap_or("figure1");
        match name {
            "suspension" => return Ok(LoadedCategory::Enriched(fixtures::suspension_circle())),
            "hexagon_flow" => return Ok(LoadedCategory::Enriched(fixtures::hexagon_flow())),
            _ => {}
        }
        match fixtures::categories().into_iter().find(|(n, _)| *n == name) {
            Some((_, c)) => Ok(LoadedCategory::Discrete(c)),
            None => bail!("unknown category fixture {name}"),
        }
    }

    pub fn discrete(&self) -> Result<AcycCat> {
        match self.load()? {
            LoadedCategory::Discrete(c) => Ok(c),
            LoadedCategory::Enriched(_) => bail!("this command needs a category with discrete homs"),
        }
    }
}

pub fn load_space(path: &Path) -> Result<FinSimpSet> {
    Ok(from_json(&read(path)?)?)
}

pub fn space_fixture(name: &str) -> Result<FinSimpSet> {
    Ok(match name {
        "two_gon" => fixtures::two_gon(),
        "hexagon" => fixtures::hexagon(),
        "tetrahedron_boundary" => fixtures::tetrahedron_boundary_space(),
        _ => {
            if let Some(n) = name.strip_prefix("simplex").and_then(|n| n.parse().ok()) {
                strata_core::simpset::standard_simplex(n)
            } else if let Some(n) = name.strip_prefix("sphere").and_then(|n| n.parse().ok()) {
                fixtures::sphere_boundary(n)
            } else {
                bail!("unknown space fixture {name}")
            }
        }
    })
}

pub fn load_strat(path: &Path) -> Result<StratSpace> {
    let json: StratJson = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(json.to_strat(base(path))?)
}

pub fn strat_fixture(name: &str) -> Result<StratSpace> {
    Ok(match name {
        "bad_antichain" => fixtures::bad_antichain(),
        "good_edge" => fixtures::good_edge(),
        "vertex_with_open_triangle" => fixtures::vertex_with_open_triangle(),
        _ => bail!("unknown stratified fixture {name}"),
    })
}

pub fn load_matching(path: &Path) -> Result<(RegComplex, Matching)> {
    let json: MatchingJson = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(json.load(base(path))?)
}

pub fn load_flow_homs(path: &Path) -> Result<FlowHoms> {
    let json: FlowHomsJson = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(json.to_flow_homs()?)
}

/// Built-in Morse data: the complex, the matching and any supplied homs.
pub fn morse_fixture(name: &str) -> Result<(RegComplex, Matching, Option<FlowHoms>)> {
    Ok(match name {
        "hexagon" => {
            let c = fixtures::tetrahedron_boundary();
            let m = fixtures::height_matching(&c);
            (c, m, Some(fixtures::hexagon_flow_homs()))
        }
        "circle" => {
            let c = RegComplex::from_simplicial(&fixtures::two_gon())?;
            let m = Matching::from_names(&c, &[("q".into(), "e".into())])?;
            (c, m, None)
        }
        "three_cycle" => {
            let c = RegComplex::from_simplicial(&fixtures::sphere_boundary(2))?;
            let m = fixtures::three_cycle_matching(&c);
            (c, m, None)
        }
        _ => bail!("unknown Morse fixture {name}"),
    })
}
