mod common;

use common::*;
use cremona_core::action::{
    self, character_admissibility, invariant_rank, is_pair_minimal, is_triple_minimal, lefschetz_check, orbits,
    twist_parity_check, twisted_fibers, FixedLocus, LatticeIsometry,
};
use cremona_core::birmap::{self, compose, pencil_action, projective_eq, PencilMap};
use cremona_core::lattice::{conic_bundle_structures, enumerate_sections, ConicBundleStructure};
use cremona_core::{CycScalar, DivisorClass, Error, ProjMap};

fn bundle(curves: &[DivisorClass], f: &str) -> ConicBundleStructure {
    cremona_core::lattice::conic_bundle_from_fiber(curves, &cls(f, curves[0].rank())).unwrap()
}

#[test]
fn s4hat_curves_and_bundle() {
    let m = s4hat();
    let cs = curves(&m);
    let mut got = labels(&cs);
    got.sort();
    let mut want = ["E2", "E3", "E4", "E5", "D12", "D13", "D14", "D15", "E1-E5", "D23-E4"].map(String::from).to_vec();
    want.sort();
    assert_eq!(got, want);
    let minus_two: Vec<_> = cs.iter().filter(|c| c.self_intersection() == -2).map(|c| c.label()).collect();
    assert_eq!(minus_two, ["E1-E5", "D23-E4"]);
    // L-E2-E5 is a formal candidate but no line through A2 has the required tangency at A1
    assert!(!cs.contains(&cls("L-E2-E5", 5)));
    let cbs = conic_bundle_structures(&m).unwrap();
    assert_eq!(cbs.len(), 1);
    assert_eq!(cbs[0].fiber, cls("L-E1", 5));
    let (e1, d23) = (cls("E1-E5", 5), cls("D23-E4", 5));
    assert_eq!((e1.dot(&cbs[0].fiber), d23.dot(&cbs[0].fiber), e1.dot(&d23)), (1, 1, 0));
}

#[test]
fn s4hat_sections_bound_is_tight() {
    let m = s4hat();
    let cs = curves(&m);
    let cb = &conic_bundle_structures(&m).unwrap()[0];
    let two = enumerate_sections(&cs, cb, 2).unwrap();
    assert_eq!(labels(&two), ["E1-E5", "D23-E4"]);
    assert!(enumerate_sections(&cs, cb, 1).unwrap().is_empty());
    assert_eq!(cb.singular_fibers.len(), 4);
    assert_eq!(cb.singular_fibers.len(), 2 * 2);
}

#[test]
fn bundle_counts_and_fibers() {
    let hexagon = conic_bundle_structures(&s6()).unwrap();
    let fibers: Vec<_> = hexagon.iter().map(|c| c.fiber.label()).collect();
    assert_eq!(fibers, ["L-E1", "L-E2", "L-E3"]);
    let quartic = conic_bundle_structures(&dp4()).unwrap();
    assert_eq!(quartic.len(), 10);
    let lines = quartic.iter().filter(|c| c.fiber.ell == 1).count();
    let conics = quartic.iter().filter(|c| c.fiber.ell == 2).count();
    assert_eq!((lines, conics), (5, 5));
    for m in [s6(), s5(), dp4(), s4hat()] {
        let cs = curves(&m);
        for cb in conic_bundle_structures(&m).unwrap() {
            let r = m.rank() as i64;
            let total = cb.singular_fibers.iter().fold(DivisorClass::zero(m.rank()), |acc, &(i, j)| {
                acc.add(&cs[i]).add(&cs[j])
            });
            assert_eq!(total, cb.fiber.scale(r - 1));
            assert_eq!(cb.fiber.dot_canonical(), -2);
            for (i, c) in cs.iter().enumerate() {
                if c.self_intersection() == -1 {
                    let hits = cb.singular_fibers.iter().filter(|&&(a, b)| a == i || b == i).count();
                    assert!(hits <= 1);
                }
            }
        }
    }
}

#[test]
fn dp4_curve_count() {
    let cs = curves(&dp4());
    assert_eq!(cs.len(), 16);
    assert!(cs.iter().all(|c| c.self_intersection() == -1));
}

#[test]
fn cs24_map_relations() {
    let minus_x = map(["-x", "y", "z"]);
    let (a, b) = (h1(), h2());
    assert!(projective_eq(&compose(&a, &a).unwrap(), &minus_x));
    assert!(projective_eq(&compose(&b, &b).unwrap(), &minus_x));
    let h3 = map(["x*(y+z)", "z*(y-z)", "-y*(y-z)"]);
    assert!(projective_eq(&compose(&a, &b).unwrap(), &h3));
    assert!(projective_eq(&compose(&b, &a).unwrap(), &h3));
    let g = birmap::closure(&[a, b], 64).unwrap();
    assert_eq!(g.order(), 8);
    assert!(g.is_abelian());
}

fn family(n: u32) -> Vec<ProjMap> {
    let z = CycScalar::root_of_unity(2 * n).unwrap();
    let h = ProjMap::diagonal(z, CycScalar::one(), CycScalar::one()).unwrap();
    vec![h1(), h2(), h]
}

#[test]
fn family_orders() {
    for n in 1..=3u32 {
        let g = birmap::closure(&family(n), 256).unwrap();
        assert_eq!(g.order(), 8 * n as usize, "n = {n}");
        let pencils: Vec<PencilMap> = g.elements.iter().map(|e| pencil_action(e).unwrap()).collect();
        let mut distinct: Vec<String> = pencils.iter().map(|p| p.to_string()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 4);
        assert_eq!(pencils.iter().filter(|p| p.is_identity()).count(), 2 * n as usize);
    }
}

#[test]
fn generator_pencil_actions() {
    assert_eq!(pencil_action(&h1()).unwrap().to_string(), "(y : -z)");
    assert_eq!(pencil_action(&h2()).unwrap().to_string(), "(z : y)");
    assert!(pencil_action(&family(3)[2]).unwrap().is_identity());
}

fn cs24_lattice() -> (Vec<DivisorClass>, LatticeIsometry, LatticeIsometry) {
    let cs = curves(&s4hat());
    let g1 = LatticeIsometry::from_curve_permutation(&cs, &perm(&cs, G1)).unwrap();
    let g2 = LatticeIsometry::from_curve_permutation(&cs, &perm(&cs, G2)).unwrap();
    (cs, g1, g2)
}

#[test]
fn cs24_lattice_facts() {
    let (cs, g1, g2) = cs24_lattice();
    let cb = bundle(&cs, "L-E1");
    let fiber_names = |v: Vec<usize>| -> Vec<String> { v.iter().map(|&i| cs[cb.singular_fibers[i].0].label()).collect() };
    assert_eq!(fiber_names(twisted_fibers(&g1, &cb, &cs)), ["E2", "E3"]);
    assert_eq!(fiber_names(twisted_fibers(&g2, &cb, &cs)), ["E4", "E5"]);
    let h3 = g1.compose(&g2).unwrap();
    assert_eq!(h3.cycles(&cs).unwrap(), "(E2 E3)(E4 D15)(E5 D14)(D12 D13)");
    assert!(g1.pow(2).is_identity());
    let group = action::closure(&[g1.clone(), g2], 64).unwrap();
    assert_eq!(group.order(), 4);
    assert_eq!(invariant_rank(&group), 2);
    assert!(is_pair_minimal(&group, &cs).unwrap().minimal);
    assert!(is_triple_minimal(&group, &cb, &cs));
    let only_g1 = action::closure(&[g1.clone()], 64).unwrap();
    assert!(!is_triple_minimal(&only_g1, &cb, &cs));
    let rep = orbits(&group, &cs).unwrap();
    let minus_one: Vec<Vec<String>> = rep
        .orbits
        .iter()
        .filter(|o| cs[o[0]].self_intersection() == -1)
        .map(|o| o.iter().map(|&i| cs[i].label()).collect())
        .collect();
    assert_eq!(minus_one, [vec!["E2", "E3", "D12", "D13"], vec!["E4", "E5", "D14", "D15"]]);
    assert!(rep.checks.is_none());
    let tp = twist_parity_check(&g1, &cb, &cs, 2).unwrap();
    assert_eq!((tp.case, tp.r, tp.two_k, tp.consistent), (2, 2, 0, true));
}

#[test]
fn cs24_involutions_twist_nothing() {
    let (cs, g1, g2) = cs24_lattice();
    let cb = bundle(&cs, "L-E1");
    let lattice_gens = [g1, g2];
    let maps = birmap::closure(&[h1(), h2()], 64).unwrap();
    let mut involutions = 0;
    for (i, w) in maps.words.iter().enumerate() {
        if maps.element_order(i) != 2 {
            continue;
        }
        involutions += 1;
        let induced = w
            .iter()
            .fold(LatticeIsometry::identity(5), |acc, &g| acc.compose(&lattice_gens[g]).unwrap());
        assert!(twisted_fibers(&induced, &cb, &cs).is_empty());
    }
    assert_eq!(involutions, 3);
}

#[test]
fn kappa_and_hexagon() {
    let cs = curves(&s6());
    let kappa = LatticeIsometry::from_curve_permutation(&cs, &perm(&cs, &[&["E1", "D23"], &["E2", "D12"], &["E3", "D13"]])).unwrap();
    let g = action::closure(&[kappa.clone()], 16).unwrap();
    let pm = is_pair_minimal(&g, &cs).unwrap();
    assert!(!pm.minimal);
    assert_eq!(labels(&pm.witness.unwrap().iter().map(|&i| cs[i].clone()).collect::<Vec<_>>()), ["E1", "D23"]);
    let cb = bundle(&cs, "L-E1");
    assert_eq!(twisted_fibers(&kappa, &cb, &cs), [0, 1]);
    assert!(is_triple_minimal(&g, &cb, &cs));
    let tp = twist_parity_check(&kappa, &cb, &cs, 1).unwrap();
    assert_eq!((tp.case, tp.two_k), (1, 2));
    assert!(tp.consistent);

    let hex = LatticeIsometry::from_curve_permutation(&cs, &perm(&cs, &[&["E1", "D12", "E2", "D23", "E3", "D13"]])).unwrap();
    let g = action::closure(&[hex], 16).unwrap();
    assert_eq!(g.order(), 6);
    let rep = orbits(&g, &cs).unwrap();
    assert_eq!(rep.invariant_rank, 1);
    assert_eq!(rep.orbits, [vec![0, 1, 2, 3, 4, 5]]);
    assert!(rep.holds());
    let sum = cs.iter().fold(DivisorClass::zero(3), |a, c| a.add(c));
    assert_eq!(sum, cls("-K", 3));
}

#[test]
fn trivial_group_witness() {
    for m in [s6(), s5(), dp4(), s4hat()] {
        let cs = curves(&m);
        let g = action::closure(&[LatticeIsometry::identity(m.rank())], 4).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(invariant_rank(&g), m.rank() + 1);
        let w = is_pair_minimal(&g, &cs).unwrap().witness.unwrap();
        assert_eq!(labels(&[cs[w[0]].clone()]), [format!("E{}", m.rank())]);
        assert!(twisted_fibers(&g.elements[0], &conic_bundle_structures(&m).unwrap()[0], &cs).is_empty());
    }
}

#[test]
fn s5_order_five() {
    let cs = curves(&s5());
    let p = perm(&cs, &[&["E1", "D34", "D14", "D12", "E4"], &["E2", "D24", "D13", "E3", "D23"]]);
    let m = LatticeIsometry::from_curve_permutation(&cs, &p).unwrap();
    assert_eq!(m.order(16), Ok(5));
    let g = action::closure(&[m], 16).unwrap();
    let rep = orbits(&g, &cs).unwrap();
    assert_eq!(rep.invariant_rank, 1);
    assert!(rep.orbits.iter().all(|o| o.len() % 5 == 0));
    assert!(rep.holds());
}

#[test]
fn s5_root_twist() {
    let cs = curves(&s5());
    let cb = bundle(&cs, "2L-E1-E2-E3-E4");
    assert_eq!(cb.singular_fibers.len(), 3);
    let p = perm(&cs, &[&["E1", "E2", "E3", "E4"], &["D12", "D23", "D34", "D14"], &["D13", "D24"]]);
    let m = LatticeIsometry::from_curve_permutation(&cs, &p).unwrap();
    let tp = twist_parity_check(&m, &cb, &cs, 2).unwrap();
    assert_eq!((tp.case, tp.r, tp.two_k), (4, 1, 2));
    assert!(tp.consistent);
}

fn dp4_printed() -> LatticeIsometry {
    let printed = vec![
        vec![0, -1, -1, 0, 0, -1],
        vec![-1, 0, -1, 0, 0, -1],
        vec![-1, -1, 0, 0, 0, -1],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![1, 1, 1, 0, 0, 2],
    ];
    LatticeIsometry::from_matrix_e_first(&printed).unwrap()
}

#[test]
fn lefschetz_suite() {
    let m = dp4_printed();
    assert_eq!(m.trace(), 2);
    let cs = curves(&dp4());
    assert!(m.curve_permutation(&cs).is_ok());
    assert!(lefschetz_check(&m, &FixedLocus::points(4)).unwrap().holds);
    assert!(!lefschetz_check(&m, &FixedLocus::points(3)).unwrap().holds);
    for r in 0..=8 {
        let id = LatticeIsometry::identity(r);
        assert!(lefschetz_check(&id, &FixedLocus::with_chi(3 + r as i64)).unwrap().holds);
    }
    let basis = |r: usize| -> Vec<DivisorClass> {
        (0..=r).map(|j| if j == 0 { DivisorClass::line(r) } else { DivisorClass::exceptional(r, j) }).collect()
    };
    let src = basis(6);
    let img: Vec<DivisorClass> = [0, 2, 3, 1, 5, 6, 4].iter().map(|&j| src[j].clone()).collect();
    let three = LatticeIsometry::from_class_images(&src, &img).unwrap();
    let rep = lefschetz_check(&three, &FixedLocus::points(3)).unwrap();
    assert_eq!((rep.order, rep.trace, rep.holds), (3, 1, true));
}

#[test]
fn dp4_pair_swap_obstruction() {
    let r = 5;
    let k = DivisorClass::canonical(r);
    let mut src = vec![k.clone()];
    let mut dst = vec![k.clone()];
    for i in 1..=r {
        let f = DivisorClass::line(r).sub(&DivisorClass::exceptional(r, i));
        dst.push(k.scale(-1).sub(&f));
        src.push(f);
    }
    assert_eq!(LatticeIsometry::from_class_images(&src, &dst), Err(Error::NonIntegral));
    // flipping two pairs is realised by the printed involution
    let m = dp4_printed();
    for i in 1..=r {
        let f = DivisorClass::line(r).sub(&DivisorClass::exceptional(r, i));
        let swapped = m.apply(&f) == k.scale(-1).sub(&f);
        assert_eq!(swapped, i >= 4, "fiber class L-E{i}");
    }
}

#[test]
fn character_lists() {
    let two = character_admissibility(2, 9, &[(1, -1)]).unwrap();
    assert!(two.iter().all(|p| p.mult(1) >= 4 && p.mult(2) <= 5));
    assert_eq!(two.len(), 5);
    let three = character_admissibility(3, 9, &[(1, -1)]).unwrap();
    assert!(!three.is_empty());
    assert!(three.iter().all(|p| p.mult(1) >= 3 && p.mult(3) <= 3));
    let four = character_admissibility(4, 9, &[(1, -1), (2, -1)]).unwrap();
    assert!(!four.is_empty());
    assert!(four.iter().all(|p| p.mult(1) + 1 >= p.mult(2) && p.mult(1) + p.mult(2) >= 4 && p.mult(1) >= 2));
}

#[test]
fn curve_permutation_errors() {
    let cs = curves(&s6());
    let mut p: Vec<usize> = (0..cs.len()).collect();
    p.swap(0, 1);
    assert_eq!(LatticeIsometry::from_curve_permutation(&cs, &p), Err(Error::NotLinear));
    p.swap(4, 5);
    assert_eq!(LatticeIsometry::from_curve_permutation(&cs, &p).map(|m| m.trace()), Ok(2));
    p = (0..cs.len()).collect();
    p.swap(0, 3);
    assert_eq!(LatticeIsometry::from_curve_permutation(&cs, &p), Err(Error::NotLinear));
    assert_eq!(LatticeIsometry::from_curve_permutation(&cs[..3], &[1, 2, 0]), Err(Error::NonSpanning));
    assert_eq!(LatticeIsometry::from_curve_permutation(&cs, &[0, 0, 1, 2, 3, 4]), Err(Error::NotCurvePermutation));
}

#[test]
fn quadratic_witness_degree_growth() {
    let phi = map(["(y+3*z)*(x+5*z)", "(x+2*y)*(x+5*z)", "(x+2*y)*(y+3*z)"]);
    assert_eq!(birmap::degree_sequence(&phi, 4).unwrap(), [2, 4, 8, 16]);
    let pts = |v: &[[&str; 3]]| -> Vec<cremona_core::ProjPoint> {
        v.iter().map(|c| cremona_core::ProjPoint::parse(c).unwrap()).collect()
    };
    let a = pts(&[["1", "3/5", "-1/5"], ["1", "-1/2", "-1/5"], ["1", "-1/2", "1/6"]]);
    let b = pts(&[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
    for p in &a {
        assert_eq!(phi.evaluate(p), birmap::Evaluation::Indeterminate);
    }
    let cert = birmap::orbit_avoids(&phi, &b, &a, 4);
    assert!(cert.avoids());
    assert_eq!(cert.orbits[0][1], b[1]);
    assert_eq!(cert.orbits[0].len(), 5);
    // the orbit check notices when a source is a base point
    let hit = birmap::orbit_avoids(&phi, &a[..1], &b, 4);
    assert!(matches!(hit.outcome, birmap::OrbitOutcome::BasePoint { source: 0, step: 0 }));
}
