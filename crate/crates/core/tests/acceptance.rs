//! Acceptance checks, one verdict line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata_core::acyccat::random_category;
use strata_core::exitpath::{build_chart, cover, horn_fill, inner_horns, verify_chart, Horn};
use strata_core::fixtures;
use strata_core::morse::{classify_flow, flow_category, morse_complex, random_acyclic_matching, validate_matching};
use strata_core::simpset::{cone, find_isomorphism, homology, join, standard_simplex, FinSimpSet, Simplex};
use strata_core::stellar::{
    extract_face_category, cylindrical_structure, lower_star, unstable_stratification, upper_star, verify_stratum_equals_star,
    Side,
};
use strata_core::strat::{implications_harness, join_law, random_labelled_complex, simplicial_stratification};
use strata_core::acyccat::iso_check;
use strata_core::{AcycCat, RegComplex, StratSpace};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_categories() -> Vec<AcycCat> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200).map(|_| random_category(&mut rng)).collect()
}

fn round_trip_holds(c: &AcycCat) -> bool {
    let strat = unstable_stratification(c);
    let cyl = cylindrical_structure(c);
    match extract_face_category(&strat, &cyl) {
        Ok(e) => iso_check(&e, c).map(|iso| iso.verify(&e, c)).unwrap_or(false),
        Err(_) => false,
    }
}

fn criterion_1(cats: &[AcycCat]) -> Verdict {
    let start = Instant::now();
    ensure(round_trip_holds(&fixtures::figure1()), "figure 1 does not round-trip")?;
    for (k, c) in cats.iter().enumerate() {
        ensure(c.objects().len() <= 5, format!("sample {k} has too many objects"))?;
        ensure(round_trip_holds(c), format!("sample {k} does not round-trip"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("took {secs:.2} s"))?;
    Ok(format!("figure 1 and {} random categories in {secs:.2} s", cats.len()))
}

fn criterion_2() -> Verdict {
    for n in 0..=4 {
        let (b, _) = AcycCat::ordinal(n).classifying_space();
        let want: Vec<usize> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
        ensure(b.f_vector() == want, format!("B[{n}] has f-vector {:?}", b.f_vector()))?;
        ensure(find_isomorphism(&b, &standard_simplex(n)).is_some(), format!("B[{n}] is not a simplex"))?;
    }
    let s = unstable_stratification(&AcycCat::ordinal(2));
    let sizes: Vec<usize> = (0..3).map(|l| s.stratum(l).len()).collect();
    ensure(sizes == [1, 2, 4], format!("B[2] strata {sizes:?}"))?;
    Ok("f-vectors C(n+1,k+1) for n <= 4; B[2] strata (1, 2, 4)".into())
}

fn criterion_3() -> Verdict {
    let (x, _) = fixtures::suspension_circle().classifying_space().map_err(|e| e.to_string())?;
    let h = homology(&x);
    ensure(h.is_free_with(&[1, 0, 1]), format!("homology {:?}", h.groups()))?;
    ensure(x.euler_characteristic() == 2, format!("euler {}", x.euler_characteristic()))?;
    Ok("H = (Z, 0, Z), chi = 2".into())
}

fn criterion_4() -> Verdict {
    let r = implications_harness(1000, 4);
    ensure(r.pass(), format!("violations {:?}", r.violations))?;
    let bad = fixtures::bad_antichain();
    let rb = bad.check_conditions();
    let w = rb.continuous.witness.clone().ok_or("antichain example passed continuity")?;
    ensure(bad.space().label(w.cell) == "01" && w.label == "c", format!("antichain witness {w:?}"))?;
    let lc = fixtures::vertex_with_open_triangle();
    let rl = lc.check_conditions();
    let v = rl.locally_closed.values().find(|v| !v.pass).ok_or("locally closed example passed")?;
    ensure(v.witness.is_some(), "locally closed failure without witness")?;
    Ok(format!("1000 samples clean; antichain witness (01, c); locally-closed witness {}", v.witness.as_ref().unwrap().cell))
}

fn open_continuous(s: &StratSpace) -> bool {
    let r = s.check_conditions();
    r.continuous.pass && r.open.pass
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    let mut drawn = 0;
    while pairs < 100 {
        drawn += 1;
        let a = random_labelled_complex(&mut rng, 10);
        let b = random_labelled_complex(&mut rng, 10);
        if !(open_continuous(&a) && open_continuous(&b)) {
            continue;
        }
        let (_, r) = join_law(&a, &b).map_err(|e| e.to_string())?;
        ensure(r.pass(), format!("pair {pairs}: {r:?}"))?;
        pairs += 1;
    }
    let mut b = strata_core::simpset::SimpSetBuilder::new();
    b.add_vertex(None);
    b.add_vertex(None);
    let s0: FinSimpSet = b.build().map_err(|e| e.to_string())?;
    let s = simplicial_stratification(&s0);
    let (j, _) = join_law(&s, &s).map_err(|e| e.to_string())?;
    ensure(homology(j.space()).is_free_with(&[1, 1]), "S0 * S0 is not a circle")?;
    Ok(format!("100 pairs ({drawn} drawn); S0 * S0 has H = (Z, Z)"))
}

fn criterion_6(cats: &[AcycCat]) -> Verdict {
    let fig1 = fixtures::figure1();
    for (k, c) in std::iter::once(&fig1).chain(cats).enumerate() {
        let r = cover(c).map_err(|e| e.to_string())?;
        ensure(r.pass(), format!("category {k}: {:?}", r.uncovered))?;
    }
    let (bc, table) = fig1.classifying_space();
    let y = fig1.object_index("y").unwrap();
    let chart = build_chart(&fig1, y, &table).map_err(|e| e.to_string())?;
    let r = verify_chart(&fig1, &chart, &bc, &table);
    ensure(r.pass() && r.open_image.len() == 6, format!("chart at y: {:?}", r.open_image))?;
    Ok(format!("{} categories covered; chart at y has 6 cells", cats.len() + 1))
}

fn criterion_7() -> Verdict {
    let mut total = 0;
    for (name, c) in [("B[3]", AcycCat::ordinal(3)), ("figure 1", fixtures::figure1())] {
        let s = unstable_stratification(&c);
        for n in 2..=3 {
            for h in inner_horns(&s, n).map_err(|e| e.to_string())? {
                ensure(h.filled == h.horns, format!("{name}: {h:?}"))?;
                total += h.horns;
            }
        }
    }
    let c = fixtures::figure1();
    let s = unstable_stratification(&c);
    let x = s.space();
    let edge = |name: &str| x.ids_of_dim(1).find(|&id| x.label(id) == name).map(Simplex::nondegenerate);
    let horn = Horn { k: 1, faces: vec![edge("(u1)"), None, edge("(v)")] };
    let filler = horn_fill(&s, &horn).map_err(|e| e.to_string())?.ok_or("horn (v, u1) has no filler")?;
    ensure(!filler.is_degenerate() && x.label(filler.base) == "(u1,v)", format!("filler {}", x.label(filler.base)))?;
    Ok(format!("{total} inner horns filled; the (v, u1) horn fills with (u1,v)"))
}

fn criterion_8() -> Verdict {
    let c = fixtures::tetrahedron_boundary();
    let m = fixtures::height_matching(&c);
    let r = validate_matching(&c, &m).map_err(|e| e.to_string())?;
    ensure(r.acyclic && r.critical == ["[v0]", "[v1v2v3]"], format!("critical {:?}", r.critical))?;
    let mc = morse_complex(&c, &m).map_err(|e| e.to_string())?;
    ensure(mc.homology.as_ref().is_some_and(|h| h.is_free_with(&[1, 0, 1])), "Morse homology")?;
    let fc = flow_category(&c, &m, Some(&fixtures::hexagon_flow_homs())).map_err(|e| e.to_string())?;
    let hom = fc.cat.hom(0, 1).ok_or("empty hom")?;
    ensure(hom.poset.as_ref().is_some_and(|p| p.0.len() == 6), "hom poset size")?;
    // order complex edges run from a point to an edge, so orientations alternate around the hexagon
    let hexagon = strata_core::simpset::simplicial_complex(&[vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4], vec![2, 5], vec![0, 5]]).0;
    ensure(find_isomorphism(&hom.space, &hexagon).is_some(), "hom nerve is not a hexagon")?;
    let (_, f) = classify_flow(&fc).map_err(|e| e.to_string())?;
    ensure(f.cells == [2, 6, 6], format!("cells {:?}", f.cells))?;
    ensure(f.homology.is_free_with(&[1, 0, 1]), "B2C homology")?;
    ensure(f.strata == 2, format!("{} strata", f.strata))?;
    Ok("critical {[v0], [v1v2v3]}; H = (Z, 0, Z); hexagon hom; cells (2, 6, 6); 2 strata".into())
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut critical = 0;
    for k in 0..100 {
        let x = random_labelled_complex(&mut rng, 50);
        let c = RegComplex::from_simplicial(x.space()).map_err(|e| e.to_string())?;
        let m = random_acyclic_matching(&c, &mut rng);
        let mc = morse_complex(&c, &m).map_err(|e| format!("sample {k}: {e}"))?;
        let h = homology(x.space());
        ensure(mc.homology.as_ref() == Some(&h), format!("sample {k}: {:?} vs {:?}", mc.homology, h))?;
        critical += mc.critical.iter().map(Vec::len).sum::<usize>();
    }
    Ok(format!("100 matchings, {critical} critical cells in total"))
}

fn criterion_10() -> Verdict {
    let mut checked = 0;
    for (name, c) in fixtures::categories() {
        for x in 0..c.objects().len() {
            for (side, cell) in [(Side::Lower, lower_star(&c, x)), (Side::Upper, upper_star(&c, x))] {
                let cell = cell.map_err(|e| e.to_string())?;
                // lower stars put the cone point last, upper stars first
                let (cone_on_boundary, _) = match side {
                    Side::Lower => join(&cell.boundary, &standard_simplex(0)),
                    Side::Upper => cone(&cell.boundary),
                };
                ensure(
                    cell.h_is_isomorphism() && find_isomorphism(&cell.dome, &cone_on_boundary).is_some(),
                    format!("{name} at {}: dome is not a cone", c.objects()[x]),
                )?;
                let r = verify_stratum_equals_star(&c, x, side).map_err(|e| e.to_string())?;
                ensure(r.pass(), format!("{name} at {}: {:?}", c.objects()[x], r.witness))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} stars"))
}

fn main() -> ExitCode {
    let cats = random_categories();
    let results: Vec<(usize, &str, Verdict)> = vec![
        (1, "round trip", criterion_1(&cats)),
        (2, "B[n] is a simplex", criterion_2()),
        (3, "suspension", criterion_3()),
        (4, "stratification conditions", criterion_4()),
        (5, "join law", criterion_5()),
        (6, "conical charts", criterion_6(&cats)),
        (7, "inner horns", criterion_7()),
        (8, "Morse pipeline", criterion_8()),
        (9, "Morse homology", criterion_9()),
        (10, "stars are cones", criterion_10()),
    ];
    let mut ok = true;
    for (n, name, v) in &results {
        match v {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                ok = false;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
