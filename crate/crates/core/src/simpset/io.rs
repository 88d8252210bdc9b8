//! `simpset.json` reading and writing, and an OFF exporter for previews.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Degeneracy, FinSimpSet, SimpSetBuilder, SimpSetError, Simplex, SimplexId};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    SimpSet(#[from] SimpSetError),
    #[error("OFF export supports dimension at most 3, got {0}")]
    UnsupportedDimension(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub degen: Vec<usize>,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub id: usize,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<FaceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpSetJson {
    pub dims: Vec<usize>,
    pub simplices: Vec<SimplexJson>,
}

impl SimpSetJson {
    pub fn from_simpset(x: &FinSimpSet) -> Self {
        let simplices = x
            .ids()
            .map(|id| SimplexJson {
                id: id.index,
                dim: id.dim,
                faces: x.faces(id).iter().map(|f| FaceJson { degen: f.degen.word(), target: f.base.index }).collect(),
                name: x.name(id).map(str::to_owned),
            })
            .collect();
        Self { dims: x.f_vector(), simplices }
    }

    pub fn to_simpset(&self) -> Result<FinSimpSet, IoError> {
        let mut rows: BTreeMap<(usize, usize), &SimplexJson> = BTreeMap::new();
        for s in &self.simplices {
            if rows.insert((s.dim, s.id), s).is_some() {
                return Err(IoError::Format(format!("duplicate simplex {}:{}", s.dim, s.id)));
            }
        }
        let mut counts = vec![0usize; self.dims.len()];
        for &(d, i) in rows.keys() {
            if d >= counts.len() || i != counts[d] {
                return Err(IoError::Format(format!("simplex ids must be dense per dimension, found {d}:{i}")));
            }
            counts[d] += 1;
        }
        if counts != self.dims {
            return Err(IoError::Format(format!("dims {:?} do not match the listed simplices {:?}", self.dims, counts)));
        }
        let mut b = SimpSetBuilder::new();
        for s in rows.values() {
            if s.dim == 0 {
                if !s.faces.is_empty() {
                    return Err(IoError::Format(format!("vertex {} lists faces", s.id)));
                }
                b.add_vertex(s.name.clone());
                continue;
            }
            let mut faces = Vec::with_capacity(s.faces.len());
            for f in &s.faces {
                let target_dim = (s.dim - 1)
                    .checked_sub(f.degen.len())
                    .ok_or_else(|| IoError::Format(format!("face word {:?} too long for a {}-simplex", f.degen, s.dim)))?;
                let degen = Degeneracy::from_word(&f.degen, target_dim)?;
                faces.push(Simplex::new(degen, SimplexId::new(target_dim, f.target)));
            }
            if faces.len() != s.dim + 1 {
                return Err(SimpSetError::FaceCount { dim: s.dim, expected: s.dim + 1, got: faces.len() }.into());
            }
            b.add_simplex(faces, s.name.clone())?;
        }
        Ok(b.build()?)
    }
}

pub fn to_json(x: &FinSimpSet) -> String {
    serde_json::to_string_pretty(&SimpSetJson::from_simpset(x)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<FinSimpSet, IoError> {
    let raw: SimpSetJson = serde_json::from_str(text)?;
    raw.to_simpset()
}

/// Geometric preview in OFF format.
///
/// Vertices sit on a circle. A triangle gets a barycentric vertex and is drawn as a
/// fan when its vertex triple is repeated by another triangle or has a repeated vertex.
pub fn to_off(x: &FinSimpSet) -> Result<String, IoError> {
    if let Some(d) = x.dim().filter(|&d| d > 3) {
        return Err(IoError::UnsupportedDimension(d));
    }
    let nv = x.count(0);
    let mut coords: Vec<[f64; 3]> = (0..nv)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / nv.max(1) as f64;
            [t.cos(), t.sin(), 0.0]
        })
        .collect();
    let triples: Vec<Vec<usize>> = x.ids_of_dim(2).map(|id| x.vertices(id).iter().map(|v| v.index).collect()).collect();
    let mut sorted_triples: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for t in &triples {
        let mut k = t.clone();
        k.sort();
        *sorted_triples.entry(k).or_default() += 1;
    }
    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut stacked: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for t in &triples {
        let mut key = t.clone();
        key.sort();
        key.dedup();
        let shared = key.len() < 3 || sorted_triples[&{
            let mut k = t.clone();
            k.sort();
            k
        }] > 1;
        if !shared {
            faces.push([t[0], t[1], t[2]]);
            continue;
        }
        let layer = stacked.entry(key.clone()).or_default();
        *layer += 1;
        let mut c = [0.0; 3];
        for &v in t {
            for (ci, vi) in c.iter_mut().zip(coords[v]) {
                *ci += vi / 3.0;
            }
        }
        c[2] = 0.5 * *layer as f64;
        let b = coords.len();
        coords.push(c);
        for (p, q) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            if p != q {
                faces.push([b, p, q]);
            }
        }
    }
    let mut out = String::from("OFF\n");
    writeln!(out, "{} {} 0", coords.len(), faces.len()).expect("string write");
    for c in &coords {
        let [a, b, z] = c.map(|v| if v.abs() < 5e-7 { 0.0 } else { v });
        writeln!(out, "{a:.6} {b:.6} {z:.6}").expect("string write");
    }
    for f in &faces {
        writeln!(out, "3 {} {} {}", f[0], f[1], f[2]).expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{product, standard_simplex};

    #[test]
    fn json_round_trip() {
        let d1 = standard_simplex(1);
        let (sq, _) = product(&d1, &standard_simplex(2));
        for x in [standard_simplex(3), sq, FinSimpSet::empty()] {
            assert_eq!(from_json(&to_json(&x)).unwrap(), x);
        }
    }

    #[test]
    fn degenerate_faces_survive_json() {
        let text = r#"{"dims":[1,1,1],"simplices":[
            {"id":0,"dim":0},
            {"id":0,"dim":1,"faces":[{"degen":[],"target":0},{"degen":[],"target":0}]},
            {"id":0,"dim":2,"faces":[{"degen":[],"target":0},{"degen":[0],"target":0},{"degen":[],"target":0}]}
        ]}"#;
        let x = from_json(text).unwrap();
        assert!(x.faces(SimplexId::new(2, 0))[1].is_degenerate());
        assert_eq!(from_json(&to_json(&x)).unwrap(), x);
    }

    #[test]
    fn rejects_sparse_ids() {
        let text = r#"{"dims":[1],"simplices":[{"id":1,"dim":0}]}"#;
        assert!(matches!(from_json(text), Err(IoError::Format(_))));
    }

    #[test]
    fn off_of_a_triangle() {
        let off = to_off(&standard_simplex(2)).unwrap();
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("3 1 0"));
        assert_eq!(off, to_off(&standard_simplex(2)).unwrap());
        assert!(matches!(to_off(&standard_simplex(4)), Err(IoError::UnsupportedDimension(4))));
    }
}
