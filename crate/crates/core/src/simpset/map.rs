use super::{FinSimpSet, Simplex, SimplexId};

/// A simplicial map, determined by the images of the nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(images: Vec<Vec<Simplex>>) -> Self {
        Self { images }
    }

    pub fn identity(x: &FinSimpSet) -> Self {
        Self { images: x.f_vector().iter().enumerate().map(|(d, &n)| (0..n).map(|i| Simplex::nondegenerate(SimplexId::new(d, i))).collect()).collect() }
    }

    /// Relabelling along a bijection of nondegenerate simplices.
    pub fn from_bijection(table: &[Vec<SimplexId>]) -> Self {
        Self { images: table.iter().map(|row| row.iter().map(|&id| Simplex::nondegenerate(id)).collect()).collect() }
    }

    pub fn image(&self, id: SimplexId) -> &Simplex {
        &self.images[id.dim][id.index]
    }

    /// Image of an arbitrary simplex: `f(θ^* y) = θ^* f(y)`.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let fy = self.image(s.base);
        Simplex { degen: fy.degen.after(&s.degen), base: fy.base }
    }

    /// Checks that faces are carried to faces.
    pub fn is_simplicial(&self, source: &FinSimpSet, target: &FinSimpSet) -> bool {
        if self.images.len() != source.f_vector().len() {
            return false;
        }
        for id in source.ids() {
            let Some(fx) = self.images[id.dim].get(id.index) else { return false };
            if fx.dim() != id.dim || !target.contains(fx.base) {
                return false;
            }
            for (i, f) in source.faces(id).iter().enumerate() {
                if target.face(fx, i) != self.apply(f) {
                    return false;
                }
            }
        }
        true
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        Self { images: self.images.iter().map(|row| row.iter().map(|s| other.apply(s)).collect()).collect() }
    }

    /// Bijective on nondegenerate simplices, hence an isomorphism.
    pub fn is_isomorphism(&self, source: &FinSimpSet, target: &FinSimpSet) -> bool {
        if source.f_vector() != target.f_vector() || !self.is_simplicial(source, target) {
            return false;
        }
        let mut hit: Vec<Vec<bool>> = target.f_vector().iter().map(|&n| vec![false; n]).collect();
        for row in &self.images {
            for s in row {
                if s.is_degenerate() || std::mem::replace(&mut hit[s.base.dim][s.base.index], true) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{find_isomorphism, standard_simplex, Degeneracy};

    #[test]
    fn identity_and_found_isos_are_simplicial() {
        let x = standard_simplex(2);
        assert!(SimplicialMap::identity(&x).is_isomorphism(&x, &x));
        let m = SimplicialMap::from_bijection(&find_isomorphism(&x, &x).unwrap());
        assert!(m.is_isomorphism(&x, &x));
    }

    #[test]
    fn collapse_of_edge_to_point() {
        let e = standard_simplex(1);
        let pt = standard_simplex(0);
        let v = SimplexId::new(0, 0);
        let flat = Simplex::new(Degeneracy::from_word(&[0], 0).unwrap(), v);
        let f = SimplicialMap::new(vec![vec![Simplex::nondegenerate(v); 2], vec![flat]]);
        assert!(f.is_simplicial(&e, &pt));
        assert!(!f.is_isomorphism(&e, &pt));
    }
}
