//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use cremona_core::action::{
    self, character_admissibility, invariant_rank, is_pair_minimal, is_triple_minimal, lefschetz_check, orbits,
    twisted_fibers, FixedLocus, LatticeIsometry,
};
use cremona_core::birmap::{self, compose, degree_sequence, orbit_avoids, pencil_action, projective_eq};
use cremona_core::lattice::{conic_bundle_structures, enumerate_sections, negative_curves, SurfaceModel};
use cremona_core::poly::HomPoly;
use cremona_core::{CycScalar, DivisorClass, Error, ProjMap, ProjPoint};
use cremona_verifier::fixtures::Fixtures;
use cremona_verifier::registry;
use cremona_verifier::report::Report;
use cremona_verifier::schema::{ClassJson, IsometryJson, ModelJson};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn lemma_passes(fx: &Fixtures, id: &str) -> Result<(), String> {
    let rep = e(registry::run_lemma(fx, id))?;
    let failed: Vec<&str> = rep.failures().map(|c| c.id.as_str()).collect();
    ensure(rep.pass, || format!("lemma {id} failed: {failed:?}"))
}

fn labels(cs: &[DivisorClass]) -> BTreeSet<String> {
    cs.iter().map(DivisorClass::label).collect()
}

fn set(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn c1_negative_curves(fx: &Fixtures) -> Outcome {
    let s = e(fx.scenario("s4hat"))?;
    let cs = e(s.curves())?;
    let want = set(&["E2", "E3", "E4", "E5", "L-E1-E2", "L-E1-E3", "L-E1-E4", "L-E1-E5", "E1-E5", "L-E2-E3-E4"]);
    let got: BTreeSet<String> = cs
        .iter()
        .map(|c| {
            // spell out D-labels so the comparison does not rely on the label format
            let a = c.multiplicities();
            let mut s = if c.ell == 0 { String::new() } else { "L".to_string() };
            for (i, &m) in a.iter().enumerate() {
                match m {
                    0 => {}
                    1 => s.push_str(&format!("-E{}", i + 1)),
                    -1 if s.is_empty() => s.push_str(&format!("E{}", i + 1)),
                    -1 => s.push_str(&format!("+E{}", i + 1)),
                    _ => s.push_str(&format!("?{m}E{}", i + 1)),
                }
            }
            s
        })
        .collect();
    ensure(got == want, || format!("curves {got:?}"))?;
    let minus_two: BTreeSet<String> = cs.iter().filter(|c| c.self_intersection() == -2).map(|c| c.to_vec().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
    ensure(minus_two == set(&["0,1,0,0,0,-1", "1,0,-1,-1,-1,0"]), || format!("(-2)-curves {minus_two:?}"))?;
    lemma_passes(fx, "s4hat-negative-curves")?;
    Ok("10 curves, (-2)-curves E1-E5 and L-E2-E3-E4".into())
}

fn c2_bundle_counts(fx: &Fixtures) -> Outcome {
    let fibers = |name: &str| -> Result<BTreeSet<String>, String> {
        let m = e(fx.scenario(name))?.model().map_err(|e| e.to_string())?;
        let cbs = e(conic_bundle_structures(m))?;
        for cb in &cbs {
            ensure(cb.singular_fibers.len() == m.rank() - 1, || format!("{name}: fiber {} has wrong singular count", cb.fiber))?;
        }
        Ok(labels(&cbs.iter().map(|c| c.fiber.clone()).collect::<Vec<_>>()))
    };
    ensure(fibers("s6")? == set(&["L-E1", "L-E2", "L-E3"]), || "S6 fibers".into())?;
    let mut quartic: Vec<String> = (1..=5).map(|i| format!("L-E{i}")).collect();
    for skip in 1..=5 {
        let rest: Vec<String> = (1..=5).filter(|&j| j != skip).map(|j| format!("E{j}")).collect();
        quartic.push(format!("2L-{}", rest.join("-")));
    }
    let quartic: Vec<&str> = quartic.iter().map(String::as_str).collect();
    ensure(fibers("dp4")? == set(&quartic), || "dP4 fibers".into())?;
    ensure(fibers("s4hat")? == set(&["L-E1"]), || "S4hat fibers".into())?;
    for id in ["s6-three-bundles", "dp4-ten-bundles", "s4hat-one-bundle"] {
        lemma_passes(fx, id)?;
    }
    Ok("3 on S6, 10 on dP4, 1 on S4hat".into())
}

fn c3_cs24_relations(fx: &Fixtures) -> Outcome {
    let s = e(fx.scenario("s4hat"))?;
    let (h1, h2) = (e(s.map("h1"))?, e(s.map("h2"))?);
    let minus_x = e(ProjMap::parse(&["-x", "y", "z"]))?;
    ensure(projective_eq(&e(compose(h1, h1))?, &minus_x), || "h1^2".into())?;
    ensure(projective_eq(&e(compose(h2, h2))?, &minus_x), || "h2^2".into())?;
    let g = e(birmap::closure(&[h1.clone(), h2.clone()], 64))?;
    ensure(g.order() == 8, || format!("order {}", g.order()))?;
    let mut orders = Vec::new();
    for n in 1..=3u32 {
        let t = e(ProjMap::diagonal(e(CycScalar::root_of_unity(2 * n))?, CycScalar::one(), CycScalar::one()))?;
        let g = e(birmap::closure(&[h1.clone(), h2.clone(), t], 256))?;
        let pencil: BTreeSet<String> =
            g.elements.iter().map(|m| pencil_action(m).map(|p| p.to_string()).unwrap_or_default()).collect();
        ensure(pencil.len() == 4, || format!("n={n}: pencil quotient {}", pencil.len()))?;
        orders.push(g.order());
    }
    ensure(orders == [8, 16, 24], || format!("family orders {orders:?}"))?;
    lemma_passes(fx, "cs24-relations")?;
    lemma_passes(fx, "family-order-8n")?;
    Ok("h1^2 = h2^2 = (-x:y:z), order 8; family orders [8, 16, 24], quotient 4".into())
}

fn c4_cs24_lattice(fx: &Fixtures) -> Outcome {
    let s = e(fx.scenario("s4hat"))?;
    let cs = e(s.curves())?;
    let (g1, g2) = (e(s.isometry("g1"))?, e(s.isometry("g2"))?);
    let cb = e(s.bundle(&e(DivisorClass::parse("L-E1", 5))?))?;
    let names: Vec<String> = twisted_fibers(&g1, &cb, cs)
        .iter()
        .map(|&k| format!("{}+{}", cs[cb.singular_fibers[k].0].label(), cs[cb.singular_fibers[k].1].label()))
        .collect();
    ensure(names == ["E2+D12", "E3+D13"], || format!("g1 twists {names:?}"))?;
    let group = e(action::closure(&[g1.clone(), g2.clone()], 64))?;
    ensure(e(is_pair_minimal(&group, cs))?.minimal, || "pair not minimal".into())?;
    ensure(is_triple_minimal(&group, &cb, cs), || "triple not minimal".into())?;
    let maps = e(birmap::closure(&[e(s.map("h1"))?.clone(), e(s.map("h2"))?.clone()], 64))?;
    let gens = [g1, g2];
    let mut involutions = 0;
    for (i, w) in maps.words.iter().enumerate() {
        if maps.element_order(i) == 2 {
            involutions += 1;
            let m = e(w.iter().try_fold(LatticeIsometry::identity(5), |acc, &k| acc.compose(&gens[k])))?;
            ensure(twisted_fibers(&m, &cb, cs).is_empty(), || format!("involution {} twists", maps.elements[i]))?;
        }
    }
    lemma_passes(fx, "cs24-lattice")?;
    Ok(format!("g1 twists E2+D12, E3+D13; pair and triple minimal; {involutions} involutions twist nothing"))
}

fn c5_lefschetz(fx: &Fixtures) -> Outcome {
    let dp4 = e(fx.scenario("dp4"))?;
    let m = e(dp4.isometry("printed"))?;
    let rep = e(lefschetz_check(&m, &FixedLocus::points(4)))?;
    ensure(rep.trace == 2 && rep.holds, || format!("{rep:?}"))?;
    ensure(!e(lefschetz_check(&m, &FixedLocus::points(3)))?.holds, || "wrong count accepted".into())?;
    let dp3 = e(fx.scenario("dp3"))?;
    let m = e(dp3.isometry("order3"))?;
    let rep = e(lefschetz_check(&m, &FixedLocus::points(3)))?;
    ensure(m.rank() + 1 == 7 && rep.trace == 1 && rep.holds, || format!("{rep:?}"))?;
    for r in 0..=8 {
        let rep = e(lefschetz_check(&LatticeIsometry::identity(r), &FixedLocus::with_chi(3 + r as i64)))?;
        ensure(rep.holds, || format!("identity at r={r}"))?;
    }
    lemma_passes(fx, "lefschetz-suite")?;
    Ok("dP4 trace 2 with 4 points; rank 7 trace 1 with 3 points; identity chi = 3 + r".into())
}

fn c6_orbits(fx: &Fixtures) -> Outcome {
    let mut detail = Vec::new();
    for (scenario, iso) in [("s6", "hexagon"), ("s5", "order5")] {
        let s = e(fx.scenario(scenario))?;
        let cs = e(s.curves())?;
        let g = e(action::closure(&[e(s.isometry(iso))?], 64))?;
        let rep = e(orbits(&g, cs))?;
        ensure(rep.invariant_rank == 1, || format!("{scenario}: invariant rank {}", rep.invariant_rank))?;
        let degree = 9 - s.model().unwrap().rank();
        let k = DivisorClass::canonical(s.model().unwrap().rank());
        for o in &rep.orbits {
            let sum = o.iter().fold(DivisorClass::zero(k.rank()), |acc, &i| acc.add(&cs[i]));
            let a = sum.ell / k.ell;
            ensure(o.len() % degree == 0 && k.scale(a) == sum, || format!("{scenario}: orbit of size {}", o.len()))?;
        }
        ensure(rep.holds(), || format!("{scenario}: report fails"))?;
        detail.push(format!("{scenario} orbits {:?}", rep.orbits.iter().map(Vec::len).collect::<Vec<_>>()));
    }
    lemma_passes(fx, "s6-hexagon-orbits")?;
    lemma_passes(fx, "s5-order5-orbits")?;
    Ok(detail.join(", "))
}

fn c7_obstruction(fx: &Fixtures) -> Outcome {
    let r = 5;
    let k = DivisorClass::canonical(r);
    let mut src = vec![k.clone()];
    let mut dst = vec![k.clone()];
    for i in 1..=r {
        let f = DivisorClass::line(r).sub(&DivisorClass::exceptional(r, i));
        dst.push(k.scale(-1).sub(&f));
        src.push(f);
    }
    let got = LatticeIsometry::from_class_images(&src, &dst);
    ensure(got == Err(Error::NonIntegral), || format!("got {got:?}"))?;
    lemma_passes(fx, "dp4-obstruction")?;
    Ok("extension rejected as non-integral".into())
}

// Profiles for order n in rank 9 written as multiplicity tuples, enumerated straight
// from the linear constraints.
fn c8_characters(fx: &Fixtures) -> Outcome {
    let got = |n: u32, bounds: &[(u32, i64)]| -> Result<BTreeSet<Vec<u32>>, String> {
        Ok(e(character_admissibility(n, 9, bounds))?.iter().map(|p| p.entries.iter().map(|e| e.1).collect()).collect())
    };
    let two: BTreeSet<Vec<u32>> = (1..=8).map(|a| vec![a, 9 - a]).filter(|v| v[0] >= 4).collect();
    let three: BTreeSet<Vec<u32>> =
        (1..=4).map(|b| vec![9 - 2 * b, b]).filter(|v| v[0] >= 1 && v[0] >= 3 && v[1] <= 3).collect();
    let mut four = BTreeSet::new();
    for a in 1..=9u32 {
        for b in 0..=9u32 {
            for c in 1..=4u32 {
                if a + b + 2 * c == 9 && a + 1 >= b && a + b >= 4 {
                    four.insert(vec![a, b, c]);
                }
            }
        }
    }
    ensure(got(2, &[(1, -1)])? == two, || "order 2".into())?;
    ensure(got(3, &[(1, -1)])? == three, || "order 3".into())?;
    ensure(got(4, &[(1, -1), (2, -1)])? == four, || "order 4".into())?;
    lemma_passes(fx, "dp1-eigenvalue-orders")?;
    Ok(format!("{} / {} / {} profiles for orders 2 / 3 / 4", two.len(), three.len(), four.len()))
}

fn c9_sections(fx: &Fixtures) -> Outcome {
    let s = e(fx.scenario("s4hat"))?;
    let cs = e(s.curves())?;
    let cb = e(s.bundle(&e(DivisorClass::parse("L-E1", 5))?))?;
    let two = e(enumerate_sections(cs, &cb, 2))?;
    let want = [e(DivisorClass::parse("E1-E5", 5))?, e(DivisorClass::parse("L-E2-E3-E4", 5))?];
    ensure(want.iter().all(|w| two.contains(w)), || format!("sections {two:?}"))?;
    ensure(want[0].dot(&want[1]) == 0, || "sections meet".into())?;
    let (r, n) = (cb.singular_fibers.len(), 2);
    ensure(r == 2 * n, || format!("r = {r}"))?;
    lemma_passes(fx, "s4hat-sections")?;
    Ok(format!("two disjoint (-2)-sections, r = {r} = 2n"))
}

fn c10_degree_growth(fx: &Fixtures) -> Outcome {
    let s = e(fx.scenario("degree-growth"))?;
    let phi = e(s.map("phi"))?;
    let degs = e(degree_sequence(phi, 4))?;
    ensure(degs == [2, 4, 8, 16], || format!("degrees {degs:?}"))?;
    let cert = orbit_avoids(phi, e(s.points("B"))?, e(s.points("A"))?, 4);
    ensure(cert.avoids(), || format!("{:?}", cert.outcome))?;
    lemma_passes(fx, "degree-growth")?;
    Ok("degrees [2, 4, 8, 16], orbits avoid the base points for 4 steps".into())
}

fn scalar() -> impl Strategy<Value = CycScalar> {
    prop_oneof![
        6 => (-2i64..=2).prop_map(CycScalar::from_int),
        1 => (-1i64..=1, 0i64..4).prop_map(|(a, k)| CycScalar::root_power(4, k).unwrap().mul(&CycScalar::from_int(a))),
        1 => (0i64..3).prop_map(|k| CycScalar::root_power(3, k).unwrap()),
    ]
}

fn form(deg: u32) -> impl Strategy<Value = HomPoly> {
    let monos: Vec<[u32; 3]> = (0..=deg).flat_map(|a| (0..=deg - a).map(move |b| [a, b, deg - a - b])).collect();
    prop::collection::vec(scalar(), monos.len()).prop_map(move |cs| {
        monos.iter().zip(cs).fold(HomPoly::zero(deg), |acc, (m, c)| acc.add(&HomPoly::monomial(*m, c)))
    })
}

fn plane_map() -> impl Strategy<Value = Option<ProjMap>> {
    (1u32..=2).prop_flat_map(|d| [form(d), form(d), form(d)]).prop_map(|c| ProjMap::new(c).ok())
}

fn reflections(r: usize) -> Vec<LatticeIsometry> {
    let basis: Vec<DivisorClass> =
        (0..=r).map(|j| if j == 0 { DivisorClass::line(r) } else { DivisorClass::exceptional(r, j) }).collect();
    let mut roots: Vec<DivisorClass> =
        (1..r).map(|i| DivisorClass::exceptional(r, i).sub(&DivisorClass::exceptional(r, i + 1))).collect();
    if r >= 3 {
        roots.push(DivisorClass::parse("L-E1-E2-E3", r).unwrap());
    }
    roots
        .iter()
        .map(|a| {
            let img: Vec<DivisorClass> = basis.iter().map(|v| v.add(&a.scale(v.dot(a)))).collect();
            LatticeIsometry::from_class_images(&basis, &img).unwrap()
        })
        .collect()
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn c11_properties(_: &Fixtures) -> Outcome {
    let cfg = |cases: u32| Config { cases, failure_persistence: None, ..Config::default() };

    let mut runner = TestRunner::new(cfg(128));
    let mut composed = 0usize;
    let counter = std::cell::Cell::new(0usize);
    e(runner.run(&(plane_map(), plane_map(), plane_map()), |(f, g, h)| {
        let (Some(f), Some(g), Some(h)) = (f, g, h) else { return Ok(()) };
        counter.set(counter.get() + 1);
        let left = compose(&g, &h).and_then(|gh| compose(&f, &gh));
        let right = compose(&f, &g).and_then(|fg| compose(&fg, &h));
        match (left, right) {
            (Ok(a), Ok(b)) => prop_assert!(projective_eq(&a, &b)),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "one side failed: {a:?} / {b:?}"),
        }
        Ok(())
    }))
    .map_err(|m| format!("associativity: {m}"))?;
    composed += counter.get();
    ensure(composed >= 100, || format!("only {composed} valid map triples"))?;

    let mut runner = TestRunner::new(cfg(128));
    e(runner.run(&(2usize..=8, prop::collection::vec(0usize..8, 0..16)), |(r, word)| {
        let gens = reflections(r);
        let m = word.iter().fold(LatticeIsometry::identity(r), |acc, &i| acc.compose(&gens[i % gens.len()]).unwrap());
        let checked = LatticeIsometry::from_matrix(m.matrix().to_vec());
        prop_assert_eq!(checked, Ok(m.clone()));
        let k = DivisorClass::canonical(r);
        prop_assert_eq!(m.apply(&k), k);
        for c in cremona_core::lattice::negative_candidates(r, -1).unwrap() {
            prop_assert_eq!(m.apply(&c).self_intersection(), -1);
        }
        prop_assert!(invariant_rank(&action::closure(&[m.clone()], 1024).unwrap()) >= 1);
        Ok(())
    }))
    .map_err(|m| format!("isometry products: {m}"))?;

    let point = [-2i64..=2, -2i64..=2, -2i64..=2].prop_filter("nonzero", |p| p.iter().any(|&c| c != 0));
    let mut runner = TestRunner::new(cfg(128));
    e(runner.run(&prop::collection::vec(point, 1..=4), |pts| {
        let distinct = (0..pts.len()).all(|i| {
            (0..i).all(|j| {
                let (a, b) = (pts[i], pts[j]);
                [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]] != [0, 0, 0]
            })
        });
        if !distinct {
            return Ok(());
        }
        let r = pts.len();
        let model = SurfaceModel::from_points(pts.iter().map(|p| ProjPoint::from_ints(*p).unwrap()).collect()).unwrap();
        let got: BTreeSet<DivisorClass> = negative_curves(&model).unwrap().into_iter().collect();
        let mut want: BTreeSet<DivisorClass> = (1..=r).map(|i| DivisorClass::exceptional(r, i)).collect();
        for i in 0..r {
            for j in i + 1..r {
                let a: Vec<i64> = (0..r).map(|k| (det3(&pts[i], &pts[j], &pts[k]) == 0) as i64).collect();
                want.insert(DivisorClass::from_multiplicities(1, &a));
            }
        }
        prop_assert_eq!(got, want);
        Ok(())
    }))
    .map_err(|m| format!("negative curves: {m}"))?;

    let mut runner = TestRunner::new(cfg(128));
    e(runner.run(&(plane_map(), scalar(), -3i64..=3, prop::collection::vec(-3i64..=3, 1..=8)), |(f, a, ell, ev)| {
        prop_assert_eq!(CycScalar::parse(&a.to_text()).unwrap(), a.clone());
        if let Some(f) = f {
            let c = f.component_strings();
            prop_assert_eq!(ProjMap::parse(&[c[0].as_str(), c[1].as_str(), c[2].as_str()]).unwrap(), f);
        }
        let c = DivisorClass::new(ell, ev);
        prop_assert_eq!(DivisorClass::parse(&c.label(), c.rank()).unwrap(), c.clone());
        let j = serde_json::to_string(&ClassJson::from_class(&c)).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassJson>(&j).unwrap().to_class(c.rank()).unwrap(), c);
        Ok(())
    }))
    .map_err(|m| format!("round trips: {m}"))?;

    // JSON forms of fixture data survive a round trip
    let fx = Fixtures::open_default().map_err(|e| e.to_string())?;
    for s in fx.scenarios.values() {
        if let Some(m) = &s.model {
            let j = ModelJson::from_model(m);
            let back: ModelJson = e(serde_json::from_str(&e(serde_json::to_string(&j))?))?;
            ensure(e(back.to_model())? == *m, || format!("{}: model round trip", s.name))?;
        }
        for name in s.data.isometries.keys() {
            let m = e(s.isometry(name))?;
            let j = e(serde_json::to_string(&IsometryJson::from_matrix(&m)))?;
            let back: IsometryJson = e(serde_json::from_str(&j))?;
            ensure(e(back.to_isometry(None))? == m, || format!("{}: isometry {name} round trip", s.name))?;
        }
    }
    let rep = registry::run_all(&fx);
    let back: Report = e(serde_json::from_str(&rep.to_json()))?;
    ensure(back == rep, || "report round trip".into())?;
    Ok(format!("{composed} associativity triples, 128 cases per suite"))
}

fn main() {
    let start = Instant::now();
    let fx = match Fixtures::open_default() {
        Ok(f) => f,
        Err(err) => {
            println!("FAIL  fixtures: {err}");
            std::process::exit(1);
        }
    };
    let criteria: [(&str, fn(&Fixtures) -> Outcome); 11] = [
        ("negative curves of S4hat", c1_negative_curves),
        ("conic bundle counts", c2_bundle_counts),
        ("order-8 group relations and the 8n family", c3_cs24_relations),
        ("lattice action of the order-8 group", c4_cs24_lattice),
        ("Lefschetz suite", c5_lefschetz),
        ("orbit divisibility in invariant rank 1", c6_orbits),
        ("pair-swap obstruction on dP4", c7_obstruction),
        ("character admissibility in rank 9", c8_characters),
        ("section enumeration on S4hat", c9_sections),
        ("degree growth of the quadratic witness", c10_degree_growth),
        ("property suites", c11_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(|| f(&fx)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why} ({ms} ms)", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed in {:.1} s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
