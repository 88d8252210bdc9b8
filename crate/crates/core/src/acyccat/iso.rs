use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AcycCat;

/// An isomorphism of discrete acyclic categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatIso {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl CatIso {
    /// The bijections by name, for reports.
    pub fn named(&self, a: &AcycCat, b: &AcycCat) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for (i, &j) in self.objects.iter().enumerate() {
            m.insert(a.objects()[i].clone(), b.objects()[j].clone());
        }
        for (i, &j) in self.arrows.iter().enumerate() {
            m.insert(a.arrows()[i].name.clone(), b.arrows()[j].name.clone());
        }
        m
    }

    /// Re-checks that this is a functor with inverse.
    pub fn verify(&self, a: &AcycCat, b: &AcycCat) -> bool {
        let bij = |v: &[usize], n: usize| {
            let mut s = v.to_vec();
            s.sort();
            s == (0..n).collect::<Vec<_>>()
        };
        if !bij(&self.objects, b.objects().len()) || !bij(&self.arrows, b.arrows().len()) {
            return false;
        }
        let typed = a.arrows().iter().enumerate().all(|(i, ar)| {
            let br = &b.arrows()[self.arrows[i]];
            (br.source, br.target) == (self.objects[ar.source], self.objects[ar.target])
        });
        typed
            && a.compose.iter().all(|(&(g, f), &gf)| b.compose_arrows(self.arrows[g], self.arrows[f]) == Some(self.arrows[gf]))
    }
}

/// Why two categories are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

fn profile(c: &AcycCat) -> Vec<(usize, usize, usize)> {
    let n = c.objects().len();
    let mut v: Vec<(usize, usize, usize)> = (0..n)
        .map(|x| {
            let inn = (0..n).map(|y| c.hom(y, x).len()).sum();
            let out = (0..n).map(|y| c.hom(x, y).len()).sum();
            (c.order().height(x), inn, out)
        })
        .collect();
    v.sort();
    v
}

fn hom_sizes(c: &AcycCat) -> Vec<usize> {
    let n = c.objects().len();
    let mut v: Vec<usize> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| c.hom(x, y).len()).filter(|&k| k > 0).collect();
    v.sort();
    v
}

/// An explicit isomorphism, or the first invariant that separates the two.
pub fn iso_check(a: &AcycCat, b: &AcycCat) -> Result<CatIso, Mismatch> {
    let cmp = |name: &str, l: String, r: String| if l == r { Ok(()) } else { Err(Mismatch { invariant: name.into(), left: l, right: r }) };
    cmp("object count", a.objects().len().to_string(), b.objects().len().to_string())?;
    cmp("arrow count", a.arrows().len().to_string(), b.arrows().len().to_string())?;
    cmp("hom cardinalities", format!("{:?}", hom_sizes(a)), format!("{:?}", hom_sizes(b)))?;
    cmp("(height, in, out) profile", format!("{:?}", profile(a)), format!("{:?}", profile(b)))?;

    let n = a.objects().len();
    let order = a.order().linear_extension();
    let mut omap = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found = None;
    objects(a, b, &order, 0, &mut omap, &mut used, &mut found);
    found.ok_or_else(|| Mismatch {
        invariant: "composition".into(),
        left: "no object bijection extends to arrows".into(),
        right: String::new(),
    })
}

fn objects(a: &AcycCat, b: &AcycCat, order: &[usize], k: usize, omap: &mut [usize], used: &mut [bool], found: &mut Option<CatIso>) {
    if found.is_some() {
        return;
    }
    let Some(&x) = order.get(k) else {
        if let Some(arrows) = arrows_for(a, b, omap) {
            *found = Some(CatIso { objects: omap.to_vec(), arrows });
        }
        return;
    };
    for y in 0..b.objects().len() {
        if used[y] || a.order().height(x) != b.order().height(y) {
            continue;
        }
        let ok = order[..k].iter().all(|&p| a.hom(p, x).len() == b.hom(omap[p], y).len() && a.hom(x, p).len() == b.hom(y, omap[p]).len());
        if !ok {
            continue;
        }
        omap[x] = y;
        used[y] = true;
        objects(a, b, order, k + 1, omap, used, found);
        used[y] = false;
        omap[x] = usize::MAX;
        if found.is_some() {
            return;
        }
    }
}

fn arrows_for(a: &AcycCat, b: &AcycCat, omap: &[usize]) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..a.arrows().len()).collect();
    let span = |i: usize| {
        let ar = &a.arrows()[i];
        a.order().height(ar.target) - a.order().height(ar.source)
    };
    order.sort_by_key(|&i| (span(i), i));
    let mut amap = vec![usize::MAX; a.arrows().len()];
    let mut used = vec![false; b.arrows().len()];
    // composable pairs touching each arrow
    let mut touching: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); a.arrows().len()];
    for (&(g, f), &gf) in &a.compose {
        for t in [g, f, gf] {
            touching[t].push((g, f, gf));
        }
    }
    fn go(
        k: usize,
        order: &[usize],
        a: &AcycCat,
        b: &AcycCat,
        omap: &[usize],
        touching: &[Vec<(usize, usize, usize)>],
        amap: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(k) else { return true };
        let ar = &a.arrows()[i];
        for &j in b.hom(omap[ar.source], omap[ar.target]) {
            if used[j] {
                continue;
            }
            amap[i] = j;
            let consistent = touching[i].iter().all(|&(g, f, gf)| {
                let (mg, mf, mgf) = (amap[g], amap[f], amap[gf]);
                mg == usize::MAX || mf == usize::MAX || mgf == usize::MAX || b.compose_arrows(mg, mf) == Some(mgf)
            });
            if consistent {
                used[j] = true;
                if go(k + 1, order, a, b, omap, touching, amap, used) {
                    return true;
                }
                used[j] = false;
            }
            amap[i] = usize::MAX;
        }
        false
    }
    go(0, &order, a, b, omap, &touching, &mut amap, &mut used).then_some(amap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::FinPoset;

    #[test]
    fn identity_iso() {
        let c = fixtures::figure1();
        let iso = iso_check(&c, &c).unwrap();
        assert!(iso.verify(&c, &c));
    }

    #[test]
    fn figure_one_is_not_self_dual() {
        let c = fixtures::figure1();
        let m = iso_check(&c, &c.opposite()).unwrap_err();
        assert_eq!(m.invariant, "(height, in, out) profile");
    }

    #[test]
    fn two_presentations_of_the_ordinal() {
        let a = AcycCat::ordinal(2);
        let p = FinPoset::from_relations(vec!["c".into(), "a".into(), "b".into()], &[(1, 2), (2, 0)]).unwrap();
        let b = AcycCat::from_poset(&p);
        let iso = iso_check(&a, &b).unwrap();
        assert!(iso.verify(&a, &b));
        assert_eq!(iso.named(&a, &b)["0"], "a");
    }

    #[test]
    fn composition_separates_same_shape() {
        // x -> y -> z with two arrows each way; free versus collapsed composition
        let free = fixtures::free_square();
        let collapsed = fixtures::collapsed_square();
        assert!(iso_check(&free, &collapsed).is_err());
    }
}
