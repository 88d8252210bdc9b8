use std::collections::VecDeque;

use super::{FinSimpSet, Simplex, SimplexId};

fn coface_profile(x: &FinSimpSet) -> Vec<Vec<Vec<usize>>> {
    let top = x.dim().map_or(0, |d| d + 1);
    let mut prof: Vec<Vec<Vec<usize>>> = (0..top).map(|d| vec![vec![0; top]; x.count(d)]).collect();
    for id in x.ids() {
        for f in x.faces(id) {
            prof[f.base.dim][f.base.index][id.dim] += 1;
        }
    }
    prof
}

/// Orders the simplices so that faces precede cofaces and every cell appears
/// as soon as its boundary is placed.
fn search_order(x: &FinSimpSet) -> Vec<SimplexId> {
    let nv = x.count(0);
    let mut adj = vec![Vec::new(); nv];
    for e in x.ids_of_dim(1) {
        let f = x.faces(e);
        let (a, b) = (f[0].base.index, f[1].base.index);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut placed: Vec<Vec<bool>> = (0..x.f_vector().len()).map(|d| vec![false; x.count(d)]).collect();
    let mut order = Vec::new();
    let mut seen = vec![false; nv];
    let mut pending: Vec<SimplexId> = x.ids().filter(|id| id.dim > 0).collect();
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(SimplexId::new(0, v));
            placed[0][v] = true;
            loop {
                let ready: Vec<SimplexId> =
                    pending.iter().copied().filter(|c| x.faces(*c).iter().all(|f| placed[f.base.dim][f.base.index])).collect();
                if ready.is_empty() {
                    break;
                }
                for c in &ready {
                    placed[c.dim][c.index] = true;
                    order.push(*c);
                }
                pending.retain(|c| !placed[c.dim][c.index]);
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// An isomorphism `a -> b`, as the image of each nondegenerate simplex of `a`.
pub fn find_isomorphism(a: &FinSimpSet, b: &FinSimpSet) -> Option<Vec<Vec<SimplexId>>> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let (pa, pb) = (coface_profile(a), coface_profile(b));
    let mut sa: Vec<&Vec<usize>> = pa.iter().flatten().collect();
    let mut sb: Vec<&Vec<usize>> = pb.iter().flatten().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let order = search_order(a);
    let mut map: Vec<Vec<Option<SimplexId>>> = a.f_vector().iter().map(|&n| vec![None; n]).collect();
    let mut used: Vec<Vec<bool>> = b.f_vector().iter().map(|&n| vec![false; n]).collect();

    fn image(map: &[Vec<Option<SimplexId>>], s: &Simplex) -> Simplex {
        Simplex { degen: s.degen.clone(), base: map[s.base.dim][s.base.index].expect("faces placed first") }
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[SimplexId],
        a: &FinSimpSet,
        b: &FinSimpSet,
        pa: &[Vec<Vec<usize>>],
        pb: &[Vec<Vec<usize>>],
        map: &mut Vec<Vec<Option<SimplexId>>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        let want: Vec<Simplex> = a.faces(x).iter().map(|f| image(map, f)).collect();
        for y in b.ids_of_dim(x.dim) {
            if used[y.dim][y.index] || pa[x.dim][x.index] != pb[y.dim][y.index] || b.faces(y) != want.as_slice() {
                continue;
            }
            map[x.dim][x.index] = Some(y);
            used[y.dim][y.index] = true;
            if go(k + 1, order, a, b, pa, pb, map, used) {
                return true;
            }
            map[x.dim][x.index] = None;
            used[y.dim][y.index] = false;
        }
        false
    }

    if go(0, &order, a, b, &pa, &pb, &mut map, &mut used) {
        Some(map.into_iter().map(|row| row.into_iter().map(|c| c.expect("complete")).collect()).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{product, standard_simplex, SimpSetBuilder};

    #[test]
    fn simplex_is_isomorphic_to_itself() {
        let x = standard_simplex(3);
        let m = find_isomorphism(&x, &x).unwrap();
        assert_eq!(m[3], vec![SimplexId::new(3, 0)]);
    }

    #[test]
    fn square_is_not_a_simplex_pair() {
        let d1 = standard_simplex(1);
        let (sq, _) = product(&d1, &d1);
        let mut b = SimpSetBuilder::new();
        let v: Vec<_> = (0..4).map(|_| b.add_vertex(None)).collect();
        // the shared edge is the long edge of one triangle and the first edge of the other
        let e01 = b.add_nondegenerate(&[v[1], v[0]], None).unwrap();
        let e02 = b.add_nondegenerate(&[v[2], v[0]], None).unwrap();
        let e12 = b.add_nondegenerate(&[v[2], v[1]], None).unwrap();
        let e30 = b.add_nondegenerate(&[v[0], v[3]], None).unwrap();
        let e32 = b.add_nondegenerate(&[v[2], v[3]], None).unwrap();
        b.add_nondegenerate(&[e12, e02, e01], None).unwrap();
        b.add_nondegenerate(&[e02, e32, e30], None).unwrap();
        let other = b.build().unwrap();
        assert_eq!(other.f_vector(), sq.f_vector());
        assert!(find_isomorphism(&sq, &other).is_none());
    }

    #[test]
    fn relabelled_square_is_found() {
        let d1 = standard_simplex(1);
        let (sq, _) = product(&d1, &d1);
        let mut b = SimpSetBuilder::new();
        let v: Vec<_> = (0..4).map(|_| b.add_vertex(None)).collect();
        // (0,0)=v3 (1,0)=v1 (0,1)=v2 (1,1)=v0
        let diag = b.add_nondegenerate(&[v[0], v[3]], None).unwrap();
        let bot = b.add_nondegenerate(&[v[1], v[3]], None).unwrap();
        let left = b.add_nondegenerate(&[v[2], v[3]], None).unwrap();
        let right = b.add_nondegenerate(&[v[0], v[1]], None).unwrap();
        let top = b.add_nondegenerate(&[v[0], v[2]], None).unwrap();
        b.add_nondegenerate(&[top, diag, left], None).unwrap();
        b.add_nondegenerate(&[right, diag, bot], None).unwrap();
        let other = b.build().unwrap();
        assert!(find_isomorphism(&sq, &other).is_some());
    }
}
