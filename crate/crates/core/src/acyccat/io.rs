//! `category.json`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{AcycCat, CategoryData, CategoryError, EnrichedCat, HomKind};
use crate::poset::{FinPoset, PosetJson};
use crate::simpset::io::{IoError, SimpSetJson};
use crate::simpset::{product, Degeneracy, FinSimpSet, Simplex, SimplexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HomJson {
    Discrete { elements: Vec<String> },
    Simpset { space: SimpSetJson },
    Poset { poset: PosetJson },
}

/// A possibly degenerate simplex: degeneracy word applied to a nondegenerate target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSimplexJson {
    pub dim: usize,
    #[serde(default)]
    pub degen: Vec<usize>,
    pub target: usize,
}

impl GenSimplexJson {
    fn from_simplex(s: &Simplex) -> Self {
        Self { dim: s.dim(), degen: s.degen.word(), target: s.base.index }
    }

    fn to_simplex(&self, hom: &FinSimpSet) -> Result<Simplex, CategoryError> {
        let tdim = self
            .dim
            .checked_sub(self.degen.len())
            .ok_or_else(|| CategoryError::Malformed(format!("degeneracy word {:?} too long for dimension {}", self.degen, self.dim)))?;
        let base = SimplexId::new(tdim, self.target);
        if !hom.contains(base) {
            return Err(CategoryError::Malformed(format!("simplex {base} not in hom")));
        }
        Ok(Simplex::new(Degeneracy::from_word(&self.degen, tdim)?, base))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComposeJson {
    Simplex { hom_g: String, hom_f: String, g: GenSimplexJson, f: GenSimplexJson, gf: GenSimplexJson },
    Element { g: String, f: String, gf: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: BTreeMap<String, HomJson>,
    #[serde(default)]
    pub compose: Vec<ComposeJson>,
}

/// A category read from disk, in whichever tier its homs require.
#[derive(Clone, Debug)]
pub enum LoadedCategory {
    Discrete(AcycCat),
    Enriched(EnrichedCat),
}

fn hom_key(objects: &[String], key: &str) -> Result<(usize, usize), CategoryError> {
    let (a, b) = key.split_once("->").ok_or_else(|| CategoryError::Malformed(format!("hom key {key:?} is not \"x->y\"")))?;
    let find = |n: &str| objects.iter().position(|o| o == n).ok_or_else(|| CategoryError::UnknownObject(n.to_string()));
    Ok((find(a.trim())?, find(b.trim())?))
}

impl CategoryJson {
    pub fn parse(text: &str) -> Result<Self, CategoryError> {
        serde_json::from_str(text).map_err(|e| CategoryError::Io(IoError::Json(e)))
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn load(&self) -> Result<LoadedCategory, CategoryError> {
        if self.homs.values().all(|h| matches!(h, HomJson::Discrete { .. })) {
            return self.load_discrete().map(LoadedCategory::Discrete);
        }
        if self.homs.values().any(|h| matches!(h, HomJson::Simpset { .. })) {
            self.load_simpset().map(LoadedCategory::Enriched)
        } else {
            self.load_posets().map(LoadedCategory::Enriched)
        }
    }

    fn load_discrete(&self) -> Result<AcycCat, CategoryError> {
        let mut arrows = Vec::new();
        for (key, h) in &self.homs {
            let (x, y) = hom_key(&self.objects, key)?;
            let HomJson::Discrete { elements } = h else { unreachable!() };
            for e in elements {
                arrows.push((e.clone(), self.objects[x].clone(), self.objects[y].clone()));
            }
        }
        let mut compose = Vec::new();
        for c in &self.compose {
            match c {
                ComposeJson::Element { g, f, gf } => compose.push((g.clone(), f.clone(), gf.clone())),
                ComposeJson::Simplex { .. } => return Err(CategoryError::Malformed("simplex composition entry for discrete homs".into())),
            }
        }
        AcycCat::from_data(&CategoryData { objects: self.objects.clone(), arrows, compose })
    }

    fn posets(&self) -> Result<BTreeMap<(usize, usize), FinPoset>, CategoryError> {
        let mut out = BTreeMap::new();
        for (key, h) in &self.homs {
            let k = hom_key(&self.objects, key)?;
            let p = match h {
                HomJson::Discrete { elements } => FinPoset::antichain(elements.clone()),
                HomJson::Poset { poset } => poset.to_poset()?,
                HomJson::Simpset { .. } => unreachable!(),
            };
            if out.insert(k, p).is_some() {
                return Err(CategoryError::Malformed(format!("hom {key} listed twice")));
            }
        }
        Ok(out)
    }

    fn load_posets(&self) -> Result<EnrichedCat, CategoryError> {
        let posets = self.posets()?;
        let mut owner: HashMap<&str, ((usize, usize), usize)> = HashMap::new();
        for (&k, p) in &posets {
            for (i, name) in p.names().iter().enumerate() {
                if owner.insert(name.as_str(), (k, i)).is_some() {
                    return Err(CategoryError::Malformed(format!("element name {name} is not unique")));
                }
            }
        }
        let find = |n: &str| owner.get(n).copied().ok_or_else(|| CategoryError::Malformed(format!("unknown hom element {n}")));
        let mut tables: BTreeMap<(usize, usize, usize), Vec<Vec<Option<usize>>>> = BTreeMap::new();
        for c in &self.compose {
            let ComposeJson::Element { g, f, gf } = c else {
                return Err(CategoryError::Malformed("simplex composition entry for poset homs".into()));
            };
            let (((y, z), q), ((x, y2), p), ((x2, z2), r)) = (find(g)?, find(f)?, find(gf)?);
            if y != y2 || x != x2 || z != z2 {
                return Err(CategoryError::Malformed(format!("composite {g}∘{f} = {gf} is ill-typed")));
            }
            let t = tables.entry((x, y, z)).or_insert_with(|| vec![vec![None; posets[&(x, y)].len()]; posets[&(y, z)].len()]);
            t[q][p] = Some(r);
        }
        let mut compose = BTreeMap::new();
        for (&(x, y), _) in &posets {
            for (&(y2, z), _) in &posets {
                if y2 != y {
                    continue;
                }
                let t = tables.remove(&(x, y, z)).ok_or_else(|| {
                    CategoryError::Invalid(format!("no composition {}->{}->{}", self.objects[x], self.objects[y], self.objects[z]))
                })?;
                let full: Option<Vec<Vec<usize>>> = t.into_iter().map(|row| row.into_iter().collect()).collect();
                let full = full.ok_or_else(|| CategoryError::Invalid(format!("composition {}->{}->{} is partial", self.objects[x], self.objects[y], self.objects[z])))?;
                compose.insert((x, y, z), full);
            }
        }
        EnrichedCat::from_hom_posets(self.objects.clone(), posets, &compose)
    }

    fn load_simpset(&self) -> Result<EnrichedCat, CategoryError> {
        let mut homs = BTreeMap::new();
        let mut by_name = HashMap::new();
        for (key, h) in &self.homs {
            let k = hom_key(&self.objects, key)?;
            let space = match h {
                HomJson::Simpset { space } => space.to_simpset()?,
                HomJson::Discrete { elements } => FinPoset::antichain(elements.clone()).order_complex().0,
                HomJson::Poset { poset } => poset.to_poset()?.order_complex().0,
            };
            by_name.insert(key.replace(' ', ""), k);
            homs.insert(k, space);
        }
        let mut compose: BTreeMap<(usize, usize, usize), HashMap<_, _>> = BTreeMap::new();
        for c in &self.compose {
            let ComposeJson::Simplex { hom_g, hom_f, g, f, gf } = c else {
                return Err(CategoryError::Malformed("element composition entry alongside simplicial homs".into()));
            };
            let look = |n: &str| by_name.get(&n.replace(' ', "")).copied().ok_or_else(|| CategoryError::Malformed(format!("unknown hom {n}")));
            let ((y, z), (x, y2)) = (look(hom_g)?, look(hom_f)?);
            if y != y2 || !homs.contains_key(&(x, z)) {
                return Err(CategoryError::Malformed(format!("composition {hom_g} after {hom_f} is ill-typed")));
            }
            let (sg, sf, sgf) = (g.to_simplex(&homs[&(y, z)])?, f.to_simplex(&homs[&(x, y)])?, gf.to_simplex(&homs[&(x, z)])?);
            compose.entry((x, y, z)).or_default().insert(crate::simpset::ProductKey { left: sg, right: sf }, sgf);
        }
        EnrichedCat::new(self.objects.clone(), homs, compose)
    }

    pub fn from_discrete(c: &AcycCat) -> Self {
        let n = c.objects().len();
        let mut homs = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let h = c.hom(x, y);
                if !h.is_empty() {
                    let elements = h.iter().map(|&a| c.arrows()[a].name.clone()).collect();
                    homs.insert(format!("{}->{}", c.objects()[x], c.objects()[y]), HomJson::Discrete { elements });
                }
            }
        }
        let compose = c.to_data().compose.into_iter().map(|(g, f, gf)| ComposeJson::Element { g, f, gf }).collect();
        Self { objects: c.objects().to_vec(), homs, compose }
    }

    pub fn from_enriched(c: &EnrichedCat) -> Self {
        let name = |(x, y): (usize, usize)| format!("{}->{}", c.objects()[x], c.objects()[y]);
        let mut homs = BTreeMap::new();
        let mut compose = Vec::new();
        if c.is_poset_tier() {
            for (k, h) in c.homs() {
                let (p, _) = h.poset.as_ref().expect("poset tier");
                let j = match h.kind {
                    HomKind::Discrete => HomJson::Discrete { elements: p.names().to_vec() },
                    _ => HomJson::Poset { poset: PosetJson::from_poset(p) },
                };
                homs.insert(name(k), j);
            }
            for ((x, y), hxy) in c.homs() {
                for ((y2, z), hyz) in c.homs() {
                    if y2 != y {
                        continue;
                    }
                    let hxz = c.hom(x, z).expect("composable");
                    let (pxy, txy) = hxy.poset.as_ref().expect("poset tier");
                    let (pyz, tyz) = hyz.poset.as_ref().expect("poset tier");
                    let pxz = &hxz.poset.as_ref().expect("poset tier").0;
                    for q in 0..pyz.len() {
                        for p in 0..pxy.len() {
                            let g = Simplex::nondegenerate(tyz.id(&vec![q]).expect("vertex"));
                            let f = Simplex::nondegenerate(txy.id(&vec![p]).expect("vertex"));
                            let r = hxz.elements(&c.compose_in(x, y, z, &g, &f)).expect("poset tier")[0];
                            compose.push(ComposeJson::Element {
                                g: pyz.name(q).to_string(),
                                f: pxy.name(p).to_string(),
                                gf: pxz.name(r).to_string(),
                            });
                        }
                    }
                }
            }
        } else {
            for (k, h) in c.homs() {
                homs.insert(name(k), HomJson::Simpset { space: SimpSetJson::from_simpset(&h.space) });
            }
            for ((x, y), hxy) in c.homs() {
                for ((y2, z), hyz) in c.homs() {
                    if y2 != y {
                        continue;
                    }
                    let (_, keys) = product(&hyz.space, &hxy.space);
                    for key in keys.keys.iter().flatten() {
                        let t = c.compose_in(x, y, z, &key.left, &key.right);
                        compose.push(ComposeJson::Simplex {
                            hom_g: name((y, z)),
                            hom_f: name((x, y)),
                            g: GenSimplexJson::from_simplex(&key.left),
                            f: GenSimplexJson::from_simplex(&key.right),
                            gf: GenSimplexJson::from_simplex(&t),
                        });
                    }
                }
            }
        }
        Self { objects: c.objects().to_vec(), homs, compose }
    }
}
